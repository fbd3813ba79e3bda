#include "mobrkhs/sweeps.hpp"

#include <cmath>
#include <numbers>

namespace mobrkhs::sweeps {

std::uint64_t Rng::next_u64() noexcept {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double Rng::next_unit() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::next_symmetric() noexcept { return 2.0 * next_unit() - 1.0; }

Complex Rng::next_disc(double radius) noexcept {
    // rejection sampling keeps the distribution uniform over the disc
    for (;;) {
        const double x = next_symmetric();
        const double y = next_symmetric();
        if (x * x + y * y < 1.0) return radius * Complex(x, y);
    }
}

MoebiusTransform Rng::next_transform(double max_abs) {
    const double theta = 2.0 * std::numbers::pi * next_unit();
    return MoebiusTransform(theta, next_disc(max_abs));
}

std::vector<TransformSample> random_transform_samples(std::uint64_t seed, std::size_t count,
                                                      double max_lambda, double max_radius) {
    Rng rng(seed);
    std::vector<TransformSample> samples;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        TransformSample s;
        s.lambda = 0.3 + (max_lambda - 0.3) * rng.next_unit();
        s.phi = rng.next_transform(max_radius);
        s.z = rng.next_disc(max_radius);
        s.w = rng.next_disc(max_radius);
        samples.push_back(s);
    }
    return samples;
}

std::vector<std::array<Complex, 2>> random_bidisc_points(std::uint64_t seed, std::size_t count,
                                                         double radius) {
    Rng rng(seed);
    std::vector<std::array<Complex, 2>> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        points.push_back({rng.next_disc(radius), rng.next_disc(radius)});
    }
    return points;
}

double max_kernel_transform_residual(std::span<const TransformSample> samples) {
    double worst = 0.0;
    const std::int64_t n = static_cast<std::int64_t>(samples.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const TransformSample& s = samples[i];
        worst = std::max(worst, discspace::kernel_transform_check(s.lambda, s.phi, s.z, s.w));
    }
    return worst;
}

double max_kernel_transform_residual_serial(std::span<const TransformSample> samples) {
    double worst = 0.0;
    for (const TransformSample& s : samples) {
        worst = std::max(worst, discspace::kernel_transform_check(s.lambda, s.phi, s.z, s.w));
    }
    return worst;
}

namespace {

decompose::BidiscCocycle product_cocycle(const std::vector<double>& lambdas) {
    return [lambdas](const MoebiusTransform& phi, const std::array<Complex, 2>& x) {
        return moebius::cocycle_eval(lambdas[0], phi, x[0]) *
               moebius::cocycle_eval(lambdas[1], phi, x[1]);
    };
}

}  // namespace

decompose::CocycleCheckResult cocycle_identity_sweep(const std::vector<double>& lambdas,
                                                     const MoebiusTransform& phi,
                                                     const MoebiusTransform& psi,
                                                     std::span<const std::array<Complex, 2>> samples) {
    const auto c = product_cocycle(lambdas);
    const MoebiusTransform chi = moebius::compose(phi, psi);
    const auto ratio = [&](const std::array<Complex, 2>& x) {
        const std::array<Complex, 2> psi_x = {psi(x[0]), psi(x[1])};
        return c(chi, x) / (c(phi, psi_x) * c(psi, x));
    };
    const Complex r0 = ratio(samples[0]);
    double deviation = 0.0;
    const std::int64_t n = static_cast<std::int64_t>(samples.size());
#pragma omp parallel for reduction(max : deviation) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        deviation = std::max(deviation, std::abs(ratio(samples[i]) - r0));
    }
    return {deviation, std::abs(std::abs(r0) - 1.0)};
}

decompose::CocycleCheckResult cocycle_identity_sweep_serial(
    const std::vector<double>& lambdas, const MoebiusTransform& phi, const MoebiusTransform& psi,
    std::span<const std::array<Complex, 2>> samples) {
    return decompose::cocycle_identity_check(product_cocycle(lambdas), phi, psi, samples);
}

double max_summand_law_residual(const decompose::BidiscDecomposition& decomposition, int m,
                                std::span<const Complex> grid) {
    const std::int64_t n = static_cast<std::int64_t>(grid.size());
    double worst = 0.0;
#pragma omp parallel for reduction(max : worst) collapse(2) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < n; ++j) {
            worst = std::max(worst, decomposition.summand_law_residual_at(m, grid[i], grid[j]));
        }
    }
    return worst;
}

double max_summand_law_residual_serial(const decompose::BidiscDecomposition& decomposition, int m,
                                       std::span<const Complex> grid) {
    return decomposition.verify_summand_kernel(m, grid);
}

}  // namespace mobrkhs::sweeps
