#pragma once

#include <Eigen/Dense>
#include <array>
#include <span>
#include <vector>

#include "mobrkhs/decompose.hpp"
#include "mobrkhs/polyspace.hpp"

namespace mobrkhs::homogeneous {

using Complex = std::complex<double>;
using decompose::BidiscDecomposition;
using moebius::MoebiusTransform;
using polyspace::TensorSpace;

/// Matrix of f -> z_i f on the truncated space in the monomial orthonormal
/// basis e_alpha = z^alpha / ||z^alpha||. Entries vanish unless the row degree
/// exceeds the column degree by exactly one.
Eigen::MatrixXcd multiplication_matrix(const TensorSpace& space, int coord);

/// Coefficient-level invariance of the filtration under multiplication:
/// max over i in {1,2} and spanning vectors f of M_n at truncation of the
/// diagonal-derivative functionals partial_1^j (z_i f)|_Delta, j <= n. The
/// functionals telescope exactly on the integer spanning set, so the return
/// value is exactly zero.
double filtration_invariance_check(const TensorSpace& space, int n);

/// Norm of the component of f outside M_n at truncation (Gram projection).
double component_outside_filtration(const TensorSpace& space, int n, const polyspace::PolyFunction& f);

/// Frobenius norms ||P_n M_{z_i} P_m|| over the summand bases; rows index n,
/// columns index m. Upper blocks (n < m) vanish to roundoff.
Eigen::MatrixXd block_structure_report(const BidiscDecomposition& decomposition, int coord);

/// Weight moduli ||P_n M_{z_i} u_d|| of the compressed shift on S_n, for the
/// graded basis u_d, d = n..N-1.
std::vector<double> diagonal_block_weights(const BidiscDecomposition& decomposition, int coord,
                                           int n);

/// max_k |weights[k] - sqrt((k+1)/(lambda' + k))|; equal positive weight
/// sequences certify unitary equivalence of weighted shifts.
double shift_equivalence_check(std::span<const double> weights, double lambda_prime);

/// Truncated matrix of f -> c(phi, .) (f o phi) in the monomial orthonormal
/// basis, with the space's ambient product cocycle.
Eigen::MatrixXcd pi_matrix(const TensorSpace& space, const MoebiusTransform& phi);

/// phi(M_{z_i}) through the degree-truncated Taylor series of phi applied to
/// the multiplication matrix.
Eigen::MatrixXcd phi_of_multiplication(const TensorSpace& space, int coord,
                                       const MoebiusTransform& phi);

/// Frobenius norm of the leading block (total degree <= block_degree on both
/// sides) of Pi(phi) M_{z_i} - phi(M_{z_i}) Pi(phi), maximized over i.
double intertwining_check(const TensorSpace& space, const MoebiusTransform& phi, int block_degree);

struct JointKernelResult {
    double residual = 0.0;        // ||(M_i* - conj(w_i)) k_w|| for the kernel section
    double sigma_min = 0.0;       // smallest singular value of the stacked pencil
    double sigma_second = 0.0;    // second smallest; a gap certifies dimension one
};

/// Joint eigenspace of (M_1*, M_2*) at conj(w): residual of the truncated
/// kernel section and the singular-value gap certifying one-dimensionality.
JointKernelResult joint_kernel_check(const TensorSpace& space, const std::array<Complex, 2>& w);

struct KernelCovarianceResult {
    double relative_residual = 0.0;  // distance of Pi(phi) k_w from the line through k_{phi^{-1} w}
    double scalar_mismatch = 0.0;    // | |scale| - |c(phi^{-1}, w)| | / |c(phi^{-1}, w)|
};

/// Pi(phi) K_N(., w) is proportional to K_N(., phi^{-1} w) with modulus
/// |c(phi^{-1}, w)|.
KernelCovarianceResult kernel_covariance_check(const TensorSpace& space, const MoebiusTransform& phi,
                                               const std::array<Complex, 2>& w);

}  // namespace mobrkhs::homogeneous
