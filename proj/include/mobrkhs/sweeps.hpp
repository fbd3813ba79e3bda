#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mobrkhs/decompose.hpp"
#include "mobrkhs/discspace.hpp"
#include "mobrkhs/moebius.hpp"

namespace mobrkhs::sweeps {

using Complex = std::complex<double>;
using moebius::MoebiusTransform;

/// Deterministic splitmix64 stream; identical across platforms and runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() noexcept;
    double next_unit() noexcept;                       // [0, 1)
    double next_symmetric() noexcept;                  // [-1, 1)
    Complex next_disc(double radius) noexcept;         // |z| < radius
    MoebiusTransform next_transform(double max_abs);   // |a| <= max_abs

private:
    std::uint64_t state_;
};

struct TransformSample {
    double lambda;
    MoebiusTransform phi;
    Complex z, w;
};

std::vector<TransformSample> random_transform_samples(std::uint64_t seed, std::size_t count,
                                                      double max_lambda = 5.0,
                                                      double max_radius = 0.7);

std::vector<std::array<Complex, 2>> random_bidisc_points(std::uint64_t seed, std::size_t count,
                                                         double radius = 0.6);

/// max over the samples of the kernel transformation-rule defect
/// |B - c B(phi., phi.) conj(c)|. The `_serial` twin is the reference
/// implementation; both reduce the same per-sample values, so they agree
/// bitwise.
double max_kernel_transform_residual(std::span<const TransformSample> samples);
double max_kernel_transform_residual_serial(std::span<const TransformSample> samples);

/// Cocycle-identity sweep for the product cocycle of the given weights.
decompose::CocycleCheckResult cocycle_identity_sweep(const std::vector<double>& lambdas,
                                                     const MoebiusTransform& phi,
                                                     const MoebiusTransform& psi,
                                                     std::span<const std::array<Complex, 2>> samples);
decompose::CocycleCheckResult cocycle_identity_sweep_serial(
    const std::vector<double>& lambdas, const MoebiusTransform& phi, const MoebiusTransform& psi,
    std::span<const std::array<Complex, 2>> samples);

/// Kernel-law residual of one summand over the grid x grid sample pairs.
double max_summand_law_residual(const decompose::BidiscDecomposition& decomposition, int m,
                                std::span<const Complex> grid);
double max_summand_law_residual_serial(const decompose::BidiscDecomposition& decomposition, int m,
                                       std::span<const Complex> grid);

}  // namespace mobrkhs::sweeps
