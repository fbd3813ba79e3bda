#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "mobrkhs/moebius.hpp"

namespace mobrkhs::polyspace {

using Complex = std::complex<double>;
using moebius::MoebiusTransform;

/// Exponent vector; coordinates beyond the number of variables are zero.
using MultiIndex = std::array<int, 3>;

/// Monomials of total degree <= N in graded order (degree ascending, then
/// decreasing powers of z1, then of z2). The ordering is the basis contract
/// for every coefficient vector in this library.
class MonomialBasis {
public:
    MonomialBasis(int nvars, int degree);

    int nvars() const noexcept { return nvars_; }
    int degree() const noexcept { return degree_; }
    int size() const noexcept { return static_cast<int>(exponents_.size()); }

    const MultiIndex& exponent(int idx) const { return exponents_[idx]; }
    int total_degree(int idx) const { return degrees_[idx]; }

    /// Index of a multi-index, or -1 when outside the degree bound.
    int index(const MultiIndex& alpha) const;

    /// Half-open index range [first, last) of the homogeneous degree-d block.
    std::pair<int, int> degree_block(int d) const;

private:
    int nvars_;
    int degree_;
    std::vector<MultiIndex> exponents_;
    std::vector<int> degrees_;
    std::vector<int> lookup_;
    std::vector<std::pair<int, int>> blocks_;
};

/// Truncated reproducing-kernel space on D^d with a diagonal monomial Gram.
/// `cocycle_lambdas` records the per-coordinate discrete-series weights of the
/// ambient multiplier action; for genuine tensor spaces these are the lambdas
/// defining the Gram, for re-embedded spaces they are the effective values.
class TensorSpace {
public:
    static TensorSpace tensor(std::vector<double> lambdas, int degree);
    static TensorSpace custom(int nvars, int degree, Eigen::VectorXd gram,
                              std::vector<double> cocycle_lambdas);

    int nvars() const noexcept { return basis_.nvars(); }
    int degree() const noexcept { return basis_.degree(); }
    const MonomialBasis& basis() const noexcept { return basis_; }
    const std::vector<double>& lambdas() const noexcept { return cocycle_lambdas_; }
    double lambda_sum() const noexcept;
    double gram(int idx) const { return gram_[idx]; }
    const Eigen::VectorXd& gram_diagonal() const noexcept { return gram_; }

    /// Multiplies every Gram weight by (1 + eps * u_alpha) with deterministic
    /// u_alpha in [-1, 1]; negative-control mode for the verification suites.
    TensorSpace perturbed(double eps, std::uint64_t seed) const;

    /// Ambient cocycle prod_i c^(lambda_i)(phi, z_i).
    Complex cocycle(const MoebiusTransform& phi, std::span<const Complex> z) const;

private:
    TensorSpace(MonomialBasis basis, Eigen::VectorXd gram, std::vector<double> cocycle_lambdas);

    MonomialBasis basis_;
    Eigen::VectorXd gram_;
    std::vector<double> cocycle_lambdas_;
};

/// Polynomial in coefficient form over the space's monomial basis.
struct PolyFunction {
    Eigen::VectorXcd coeffs;
};

PolyFunction zero_function(const TensorSpace& space);

Complex inner_product(const PolyFunction& f, const PolyFunction& g, const TensorSpace& space);
double norm(const PolyFunction& f, const TensorSpace& space);

Complex eval(const PolyFunction& f, const TensorSpace& space, std::span<const Complex> z);

/// prod_i B^(lambda_i)(z_i, w_i); all coordinates must lie in the open disc.
Complex tensor_kernel_eval(std::span<const double> lambdas, std::span<const Complex> z,
                           std::span<const Complex> w);

/// Kernel of the truncated space: sum_{|alpha|<=N} z^alpha conj(w^alpha)/gram[alpha].
Complex kernel_eval_truncated(const TensorSpace& space, std::span<const Complex> z,
                              std::span<const Complex> w);

/// Coefficient vector of the section dbar_1^m K_N(., (w, w)) for d = 2:
/// the functional f -> conj of partial_1^m f(w, w) on the truncated space.
PolyFunction kernel_derivative_section(const TensorSpace& space, int m, Complex w);

/// Multiplication by the coordinate z_i (1-based), degree-truncating.
PolyFunction multiply_by_coordinate(const TensorSpace& space, const PolyFunction& f, int coord);

/// d^j(f o phi)(z) from the derivatives f^{(0..j)} at phi(z) and phi^{(0..j)} at z,
/// summed over all (l_1,...,l_j) with sum k*l_k = j.
Complex faa_di_bruno(std::span<const Complex> f_derivs, std::span<const Complex> phi_derivs, int j);

}  // namespace mobrkhs::polyspace
