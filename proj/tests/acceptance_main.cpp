// Acceptance suite: every release criterion, one pass/fail line each.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mobrkhs/decompose.hpp"
#include "mobrkhs/homogeneous.hpp"
#include "mobrkhs/sweeps.hpp"

using namespace mobrkhs;
using decompose::BidiscDecomposition;
using decompose::Parity;
using moebius::MoebiusTransform;
using polyspace::Complex;
using polyspace::TensorSpace;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s  criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++failures;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

double pochhammer(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x + i;
    return r;
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// Brute-force projection oracle for K_m(0,0), independent of the pipeline.
double k00_oracle(double l1, double l2, int m) {
    const double inner = factorial(m);  // <(l1)_m z1^m, (z1-z2)^m> under the Gram
    double norm_sq = 0.0;
    for (int k = 0; k <= m; ++k) {
        const double g =
            (factorial(k) / pochhammer(l1, k)) * (factorial(m - k) / pochhammer(l2, m - k));
        norm_sq += binom(m, k) * binom(m, k) * g;
    }
    return inner * inner / norm_sq;
}

void criterion_1_clebsch_gordan_ladder() {
    const std::vector<std::pair<double, double>> pairs = {{1, 1}, {1, 2}, {0.5, 1.5}};
    bool pass = true;
    double worst_param = 0.0;
    double worst_seconds = 0.0;
    for (const auto& [l1, l2] : pairs) {
        const auto start = std::chrono::steady_clock::now();
        const BidiscDecomposition dec(TensorSpace::tensor({l1, l2}, 12));
        for (int m = 0; m <= 4; ++m) {
            const double dev = std::abs(dec.summand_parameter(m) - (l1 + l2 + 2.0 * m));
            worst_param = std::max(worst_param, dev);
            if (dev > 1e-4) pass = false;
            for (int d = 0; d <= 12; ++d) {
                if (dec.basis(m).graded_dims[d] != (d >= m ? 1 : 0)) pass = false;
            }
        }
        const double seconds = std::chrono::duration<double>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
        worst_seconds = std::max(worst_seconds, seconds);
        if (seconds >= 5.0) pass = false;
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "ladder parameters lambda1+lambda2+2m, m=0..4 (max dev %.2e, tol 1e-4), graded "
                  "dims one per degree, %.2fs/pair",
                  worst_param, worst_seconds);
    report(1, pass, detail);
}

void criterion_2_summand_kernel_law() {
    bool pass = true;
    double worst_law = 0.0, worst_routes = 0.0;
    const auto& grid = decompose::default_residual_grid();
    for (const auto& [l1, l2] : std::vector<std::pair<double, double>>{{1, 1}, {1, 2}, {0.5, 1.5}}) {
        const BidiscDecomposition dec(TensorSpace::tensor({l1, l2}, 12));
        for (int m = 0; m <= 3; ++m) {
            worst_law = std::max(worst_law, dec.verify_summand_kernel(m, grid));
            worst_routes = std::max(worst_routes, dec.two_route_residual(m, grid));
        }
    }
    pass = worst_law <= 1e-7 && worst_routes <= 1e-7;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "kernel law residual %.2e and route agreement %.2e on |z|,|w|<=0.4, m=0..3 "
                  "(tol 1e-7)",
                  worst_law, worst_routes);
    report(2, pass, detail);
}

void criterion_3_derived_constants() {
    const BidiscDecomposition d11(TensorSpace::tensor({1, 1}, 12));
    const BidiscDecomposition d12(TensorSpace::tensor({1, 2}, 12));
    const double got11 = d11.kernel(1).k00();
    const double got12 = d12.kernel(1).k00();
    const double oracle11 = k00_oracle(1, 1, 1);
    const double oracle12 = k00_oracle(1, 2, 1);
    const bool pass = std::abs(got11 - 0.5) <= 1e-10 && std::abs(got12 - 2.0 / 3.0) <= 1e-10 &&
                      std::abs(got11 - oracle11) <= 1e-10 && std::abs(got12 - oracle12) <= 1e-10;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "K_1(0,0) = %.12f (expect 1/2) and %.12f (expect 2/3), both matching the "
                  "projection oracle to 1e-10",
                  got11, got12);
    report(3, pass, detail);
}

void criterion_4_transformation_and_cocycle() {
    const auto samples = sweeps::random_transform_samples(20240331, 1000);
    const double transform = sweeps::max_kernel_transform_residual(samples);

    const auto points = sweeps::random_bidisc_points(20240332, 250);
    const MoebiusTransform phi(0.9, Complex(0.25, -0.1));
    const MoebiusTransform psi(2.3, Complex(-0.2, 0.3));
    const auto cocycle = sweeps::cocycle_identity_sweep({1.0, 2.0}, phi, psi, points);

    const decompose::BidiscCocycle broken = [](const MoebiusTransform& t,
                                               const std::array<Complex, 2>& x) {
        return moebius::cocycle_eval(1.0, t, x[0]) * moebius::cocycle_eval(2.0, t, x[1]) *
               (1.0 + 0.01 * x[0]);
    };
    const double control = decompose::cocycle_identity_check(broken, phi, psi, points).deviation;

    const bool pass = transform <= 1e-9 && cocycle.deviation <= 1e-9 && control > 1e-4;
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "transformation rule %.2e over 1000 samples (tol 1e-9), cocycle deviation %.2e "
                  "(tol 1e-9), negative control %.2e (> 1e-4)",
                  transform, cocycle.deviation, control);
    report(4, pass, detail);
}

void criterion_5_parity_refinement() {
    const auto start = std::chrono::steady_clock::now();
    bool pass = true;

    const BidiscDecomposition sym(TensorSpace::tensor({1, 1}, 12), Parity::symmetric);
    const double expected_sym[3] = {2.0, 6.0, 10.0};
    for (int j = 0; j < 3; ++j) {
        if (std::abs(sym.summand_parameter(2 * j) - expected_sym[j]) > 1e-4) pass = false;
    }
    for (int m = 1; m <= 11; m += 2) {
        if (sym.basis(m).dim() != 0) pass = false;
    }

    const BidiscDecomposition anti(TensorSpace::tensor({1, 1}, 12), Parity::antisymmetric);
    const double expected_anti[2] = {4.0, 8.0};
    for (int j = 0; j < 2; ++j) {
        if (std::abs(anti.summand_parameter(2 * j + 1) - expected_anti[j]) > 1e-4) pass = false;
    }
    for (int m = 0; m <= 12; m += 2) {
        if (anti.basis(m).dim() != 0) pass = false;
    }

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= 5.0) pass = false;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "symmetric ladder 2,6,10 / antisymmetric 4,8 with exact emptiness, %.2fs", seconds);
    report(5, pass, detail);
}

void criterion_6_polydisc() {
    const auto start = std::chrono::steady_clock::now();
    const auto result = decompose::polydisc_decompose({1, 1, 1}, 8);
    bool pass = true;
    for (int K = 0; K <= 2; ++K) {
        if (result.multiplicities[K].second != K + 1) pass = false;
        if (std::abs(result.multiplicities[K].first - (3.0 + 2.0 * K)) > 1e-3) pass = false;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= 30.0) pass = false;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "multiplicities %d,%d,%d for parameters 3,5,7 (expect 1,2,3), %.2fs",
                  result.multiplicities[0].second, result.multiplicities[1].second,
                  result.multiplicities[2].second, seconds);
    report(6, pass, detail);
}

void criterion_7_homogeneous_pair() {
    bool pass = true;
    double filtration = 0.0, upper = 0.0, weights_dev = 0.0, agreement = 0.0;
    for (const auto& [l1, l2] : std::vector<std::pair<double, double>>{{1, 1}, {1, 2}}) {
        const TensorSpace space = TensorSpace::tensor({l1, l2}, 12);
        for (int n = 0; n <= 2; ++n) {
            filtration = std::max(filtration, homogeneous::filtration_invariance_check(space, n));
        }
        const BidiscDecomposition dec(space);
        for (int coord : {1, 2}) {
            const auto blocks = homogeneous::block_structure_report(dec, coord);
            for (int n = 0; n < blocks.rows(); ++n) {
                for (int m = n + 1; m < blocks.cols(); ++m) upper = std::max(upper, blocks(n, m));
            }
        }
        for (int n = 0; n <= 3; ++n) {
            const auto w1 = homogeneous::diagonal_block_weights(dec, 1, n);
            const auto w2 = homogeneous::diagonal_block_weights(dec, 2, n);
            for (int k = 0; k <= 6; ++k) {
                const double expected = std::sqrt((k + 1.0) / (l1 + l2 + 2.0 * n + k));
                weights_dev = std::max(weights_dev, std::abs(w1[k] - expected));
                weights_dev = std::max(weights_dev, std::abs(w2[k] - expected));
                agreement = std::max(agreement, std::abs(w1[k] - w2[k]));
            }
        }
    }
    if (filtration != 0.0) pass = false;
    if (upper > 1e-12) pass = false;
    if (weights_dev > 1e-9) pass = false;

    const TensorSpace wide = TensorSpace::tensor({1, 1}, 16);
    const double generic =
        homogeneous::intertwining_check(wide, MoebiusTransform(0.7, Complex(0.3, 0.0)), 8);
    const double rotation =
        homogeneous::intertwining_check(wide, MoebiusTransform::rotation(1.1), 16);
    if (generic > 1e-6 || rotation > 1e-12) pass = false;

    char detail[240];
    std::snprintf(detail, sizeof(detail),
                  "filtration %.1e (exact), upper blocks %.2e (tol 1e-12), shift weights %.2e "
                  "(tol 1e-9, both coords), intertwining %.2e (tol 1e-6), rotation %.2e (tol 1e-12)",
                  filtration, upper, weights_dev, generic, rotation);
    report(7, pass, detail);
}

void criterion_8_curvature_identification() {
    bool pass = true;
    double worst = 0.0;
    for (double lambda : {1.0, 2.0, 3.0, 5.5}) {
        const double got = decompose::identify_lambda(
            [lambda](Complex z) { return std::pow(1.0 - std::norm(z), -lambda); });
        worst = std::max(worst, std::abs(got - lambda));
    }
    double worst_factor = 0.0;
    for (double lambda : {1.0, 2.0, 3.0, 5.5}) {
        const double got = decompose::identify_lambda([lambda](Complex z) {
            return std::norm(1.0 + z / 3.0) * std::pow(1.0 - std::norm(z), -lambda);
        });
        worst_factor = std::max(worst_factor, std::abs(got - lambda));
    }
    pass = worst <= 1e-5 && worst_factor <= 1e-5;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "curvature recovers lambda in {1,2,3,5.5} to %.2e and is |F|^2-invariant to %.2e "
                  "(tol 1e-5)",
                  worst, worst_factor);
    report(8, pass, detail);
}

}  // namespace

int main() {
    criterion_1_clebsch_gordan_ladder();
    criterion_2_summand_kernel_law();
    criterion_3_derived_constants();
    criterion_4_transformation_and_cocycle();
    criterion_5_parity_refinement();
    criterion_6_polydisc();
    criterion_7_homogeneous_pair();
    criterion_8_curvature_identification();
    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria failed\n", failures);
    }
    return failures;
}
