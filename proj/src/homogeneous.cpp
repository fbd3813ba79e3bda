#include "mobrkhs/homogeneous.hpp"

#include <cmath>
#include <stdexcept>

#include "mobrkhs/discspace.hpp"

namespace mobrkhs::homogeneous {

namespace {

using polyspace::MonomialBasis;
using polyspace::MultiIndex;
using polyspace::PolyFunction;

void require_coord(const TensorSpace& space, int coord) {
    if (coord < 1 || coord > space.nvars()) {
        throw std::invalid_argument("homogeneous: coordinate index out of range");
    }
}

double falling_factorial(int i, int m) {
    double r = 1.0;
    for (int k = 0; k < m; ++k) r *= (i - k);
    return r;
}

/// Coefficients of z -> partial_1^j f(z, z); exact on integer inputs.
Eigen::VectorXcd diagonal_derivative(const TensorSpace& space, int j, const PolyFunction& f) {
    const MonomialBasis& basis = space.basis();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(space.degree() + 1);
    for (int idx = 0; idx < basis.size(); ++idx) {
        if (f.coeffs[idx] == 0.0) continue;
        const MultiIndex& e = basis.exponent(idx);
        if (e[0] < j) continue;
        out[e[0] - j + e[1]] += falling_factorial(e[0], j) * f.coeffs[idx];
    }
    return out;
}

}  // namespace

Eigen::MatrixXcd multiplication_matrix(const TensorSpace& space, int coord) {
    require_coord(space, coord);
    const MonomialBasis& basis = space.basis();
    const int dim = basis.size();
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        MultiIndex e = basis.exponent(col);
        e[coord - 1] += 1;
        const int row = basis.index(e);
        if (row >= 0) mat(row, col) = std::sqrt(space.gram(row) / space.gram(col));
    }
    return mat;
}

double filtration_invariance_check(const TensorSpace& space, int n) {
    if (space.nvars() != 2) throw std::invalid_argument("homogeneous: check requires d = 2");
    if (n < 0 || n + 1 > space.degree()) {
        throw std::invalid_argument("homogeneous: filtration level out of range");
    }
    // Spanning vectors of M_n with degree <= N-1, so multiplication stays inside
    // the truncation.
    double worst = 0.0;
    for (const PolyFunction& f : decompose::vanishing_filtration_basis(space, n + 1)) {
        int deg = 0;
        for (int idx = 0; idx < space.basis().size(); ++idx) {
            if (f.coeffs[idx] != 0.0) deg = std::max(deg, space.basis().total_degree(idx));
        }
        if (deg >= space.degree()) continue;
        for (int coord = 1; coord <= 2; ++coord) {
            const PolyFunction shifted = polyspace::multiply_by_coordinate(space, f, coord);
            for (int j = 0; j <= n; ++j) {
                worst = std::max(worst,
                                 diagonal_derivative(space, j, shifted).cwiseAbs().maxCoeff());
            }
        }
    }
    return worst;
}

double component_outside_filtration(const TensorSpace& space, int n, const PolyFunction& f) {
    // Orthonormalize the filtration spanning set, then measure the projection defect.
    std::vector<PolyFunction> basis = decompose::vanishing_filtration_basis(space, n + 1);
    std::vector<PolyFunction> ortho;
    for (PolyFunction& v : basis) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const PolyFunction& q : ortho) {
                v.coeffs -= polyspace::inner_product(v, q, space) * q.coeffs;
            }
        }
        const double nrm = polyspace::norm(v, space);
        if (nrm > 1e-10) {
            v.coeffs /= nrm;
            ortho.push_back(std::move(v));
        }
    }
    PolyFunction residual = f;
    for (const PolyFunction& q : ortho) {
        residual.coeffs -= polyspace::inner_product(f, q, space) * q.coeffs;
    }
    return polyspace::norm(residual, space);
}

Eigen::MatrixXd block_structure_report(const BidiscDecomposition& decomposition, int coord) {
    const TensorSpace& space = decomposition.space();
    require_coord(space, coord);
    const int blocks = decomposition.max_m() + 1;
    Eigen::MatrixXd norms = Eigen::MatrixXd::Zero(blocks, blocks);
    for (int m = 0; m < blocks; ++m) {
        const auto& from = decomposition.basis(m);
        for (std::size_t b = 0; b < from.vectors.size(); ++b) {
            if (from.degrees[b] >= space.degree()) continue;  // keep the image inside P_N
            const PolyFunction shifted =
                polyspace::multiply_by_coordinate(space, from.vectors[b], coord);
            for (int n = 0; n < blocks; ++n) {
                const auto& to = decomposition.basis(n);
                for (const PolyFunction& u : to.vectors) {
                    norms(n, m) += std::norm(polyspace::inner_product(shifted, u, space));
                }
            }
        }
    }
    return norms.cwiseSqrt();
}

std::vector<double> diagonal_block_weights(const BidiscDecomposition& decomposition, int coord,
                                           int n) {
    const TensorSpace& space = decomposition.space();
    require_coord(space, coord);
    const auto& basis = decomposition.basis(n);
    if (basis.empty()) throw std::invalid_argument("homogeneous: empty summand");
    // One basis vector per degree; S_n cap Hom_{d+1} is one-dimensional, so the
    // compressed operator is the weighted shift u_d -> <z_i u_d, u_{d+1}> u_{d+1}.
    std::vector<double> weights;
    for (std::size_t b = 0; b + 1 < basis.vectors.size(); ++b) {
        const PolyFunction shifted = polyspace::multiply_by_coordinate(space, basis.vectors[b], coord);
        weights.push_back(std::abs(polyspace::inner_product(shifted, basis.vectors[b + 1], space)));
    }
    return weights;
}

double shift_equivalence_check(std::span<const double> weights, double lambda_prime) {
    if (lambda_prime <= 0.0) throw std::invalid_argument("homogeneous: lambda' must be positive");
    double worst = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        worst = std::max(worst, std::abs(weights[k] - std::sqrt((k + 1) / (lambda_prime + k))));
    }
    return worst;
}

Eigen::MatrixXcd pi_matrix(const TensorSpace& space, const MoebiusTransform& phi) {
    const MonomialBasis& basis = space.basis();
    const int N = space.degree();
    const int dim = basis.size();
    const int d = space.nvars();

    // Per coordinate: series of c^(lambda_i)(phi, z) phi(z)^p for p = 0..N.
    std::vector<std::vector<discspace::Series>> factor(d);
    const discspace::Series phis = discspace::moebius_series(phi, N);
    for (int v = 0; v < d; ++v) {
        factor[v].resize(N + 1);
        factor[v][0] = discspace::cocycle_series(space.lambdas()[v], phi, N);
        for (int p = 1; p <= N; ++p) factor[v][p] = discspace::series_multiply(factor[v][p - 1], phis);
    }

    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const MultiIndex& alpha = basis.exponent(col);
        const double colnorm = std::sqrt(space.gram(col));
        for (int row = 0; row < dim; ++row) {
            const MultiIndex& beta = basis.exponent(row);
            Complex value = 1.0;
            for (int v = 0; v < d; ++v) value *= factor[v][alpha[v]][beta[v]];
            mat(row, col) = value * std::sqrt(space.gram(row)) / colnorm;
        }
    }
    return mat;
}

Eigen::MatrixXcd phi_of_multiplication(const TensorSpace& space, int coord,
                                       const MoebiusTransform& phi) {
    require_coord(space, coord);
    const int N = space.degree();
    const Eigen::MatrixXcd mult = multiplication_matrix(space, coord);
    const discspace::Series coeffs = discspace::moebius_series(phi, N);
    Eigen::MatrixXcd out = coeffs[0] * Eigen::MatrixXcd::Identity(mult.rows(), mult.cols());
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(mult.rows(), mult.cols());
    for (int k = 1; k <= N; ++k) {
        power = mult * power;  // nilpotent beyond degree N
        out += coeffs[k] * power;
    }
    return out;
}

double intertwining_check(const TensorSpace& space, const MoebiusTransform& phi, int block_degree) {
    const MonomialBasis& basis = space.basis();
    const Eigen::MatrixXcd pi = pi_matrix(space, phi);
    double worst = 0.0;
    // indices of total degree <= block_degree
    const int head = basis.degree_block(std::min(block_degree, space.degree())).second;
    for (int coord = 1; coord <= space.nvars(); ++coord) {
        const Eigen::MatrixXcd commutator =
            pi * multiplication_matrix(space, coord) - phi_of_multiplication(space, coord, phi) * pi;
        worst = std::max(worst, commutator.topLeftCorner(head, head).norm());
    }
    return worst;
}

JointKernelResult joint_kernel_check(const TensorSpace& space, const std::array<Complex, 2>& w) {
    if (space.nvars() != 2) throw std::invalid_argument("homogeneous: check requires d = 2");
    const MonomialBasis& basis = space.basis();
    const int dim = basis.size();

    Eigen::MatrixXcd pencil(2 * dim, dim);
    for (int coord = 1; coord <= 2; ++coord) {
        Eigen::MatrixXcd block = multiplication_matrix(space, coord).adjoint();
        block.diagonal().array() -= std::conj(w[coord - 1]);
        pencil.middleRows((coord - 1) * dim, dim) = block;
    }

    // Truncated kernel section in orthonormal coordinates: conj(w^alpha)/||z^alpha||.
    Eigen::VectorXcd section(dim);
    for (int idx = 0; idx < dim; ++idx) {
        const MultiIndex& e = basis.exponent(idx);
        Complex mono = 1.0;
        for (int v = 0; v < 2; ++v) {
            for (int k = 0; k < e[v]; ++k) mono *= std::conj(w[v]);
        }
        section[idx] = mono / std::sqrt(space.gram(idx));
    }
    section /= section.norm();

    JointKernelResult out;
    out.residual = (pencil * section).norm();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pencil);
    const auto& sv = svd.singularValues();
    out.sigma_min = sv[sv.size() - 1];
    out.sigma_second = sv[sv.size() - 2];
    return out;
}

KernelCovarianceResult kernel_covariance_check(const TensorSpace& space, const MoebiusTransform& phi,
                                               const std::array<Complex, 2>& w) {
    if (space.nvars() != 2) throw std::invalid_argument("homogeneous: check requires d = 2");
    const MonomialBasis& basis = space.basis();
    const int dim = basis.size();

    const auto section = [&](const std::array<Complex, 2>& pt) {
        Eigen::VectorXcd s(dim);
        for (int idx = 0; idx < dim; ++idx) {
            const MultiIndex& e = basis.exponent(idx);
            Complex mono = 1.0;
            for (int v = 0; v < 2; ++v) {
                for (int k = 0; k < e[v]; ++k) mono *= std::conj(pt[v]);
            }
            s[idx] = mono / std::sqrt(space.gram(idx));
        }
        return s;
    };

    const MoebiusTransform inv = phi.inverse();
    const std::array<Complex, 2> target = {inv(w[0]), inv(w[1])};

    const Eigen::VectorXcd mapped = pi_matrix(space, phi) * section(w);
    const Eigen::VectorXcd expected = section(target);

    const Complex scale = expected.dot(mapped) / expected.squaredNorm();
    KernelCovarianceResult out;
    out.relative_residual = (mapped - scale * expected).norm() / mapped.norm();

    std::vector<Complex> pt = {w[0], w[1]};
    const double expected_modulus = std::abs(space.cocycle(inv, pt));
    out.scalar_mismatch = std::abs(std::abs(scale) - expected_modulus) / expected_modulus;
    return out;
}

}  // namespace mobrkhs::homogeneous
