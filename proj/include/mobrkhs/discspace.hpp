#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "mobrkhs/moebius.hpp"

namespace mobrkhs::discspace {

using Complex = std::complex<double>;
using moebius::MoebiusTransform;

/// Truncated Taylor series on the disc: coefficient vector indexed 0..N.
using Series = Eigen::VectorXcd;

/// Product truncated to the common degree bound.
Series series_multiply(const Series& f, const Series& g);

/// Taylor coefficients of phi(z) up to degree N.
Series moebius_series(const MoebiusTransform& phi, int degree);

/// Taylor coefficients of c^(lambda)(phi, z) up to degree N; same branch as
/// moebius::cocycle_eval, expanded via the binomial series of (1 - conj(a) z)^{-lambda}.
Series cocycle_series(double lambda, const MoebiusTransform& phi, int degree);

/// Squared monomial norm ||z^n||^2 = n! / (lambda)_n in A^(lambda)(D).
double monomial_norm_sq(double lambda, int n);

/// Weights w_n = sqrt((n+1)/(lambda+n)) of the shift M^(lambda), n = 0..count-1.
std::vector<double> shift_weights(double lambda, int count);

/// B^(lambda)(z, w) = (1 - z conj(w))^{-lambda}, principal branch.
Complex kernel_eval(double lambda, Complex z, Complex w);

/// Degree-N truncation of the kernel series sum_{n<=N} (lambda)_n/n! (z conj(w))^n.
Complex kernel_eval_truncated(double lambda, Complex z, Complex w, int degree);

/// Truncated A^(lambda)(D): parameter, degree bound and monomial norms.
class WeightedDiscSpace {
public:
    WeightedDiscSpace(double lambda, int degree);

    double lambda() const noexcept { return lambda_; }
    int degree() const noexcept { return degree_; }
    double norm_sq(int n) const { return norm_sq_.at(n); }
    const std::vector<double>& norms_sq() const noexcept { return norm_sq_; }

private:
    double lambda_;
    int degree_;
    std::vector<double> norm_sq_;
};

/// One-variable function in coefficient form (Taylor coefficients at 0).
struct DiscFunction {
    Eigen::VectorXcd coeffs;
};

Complex inner_product(const DiscFunction& f, const DiscFunction& g, const WeightedDiscSpace& space);

/// Matrix of f -> c^(lambda)(phi, .) (f o phi) on polynomials of degree <= N.
/// Column k holds the expansion of c^(lambda)(phi, z) phi(z)^k; with
/// orthonormal = true the matrix is expressed in the basis e_n = z^n/||z^n||.
Eigen::MatrixXcd discrete_series_matrix(double lambda, const MoebiusTransform& phi, int degree,
                                        bool orthonormal = true);

/// | B(z,w) - c(phi,z) B(phi z, phi w) conj(c(phi,w)) |; identically zero in
/// exact arithmetic for every phi.
double kernel_transform_check(double lambda, const MoebiusTransform& phi, Complex z, Complex w);

}  // namespace mobrkhs::discspace
