// Benchmark: serial reference sweeps versus their OpenMP counterparts.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mobrkhs/sweeps.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s serial %10.2f ms   openmp %10.2f ms   speedup %5.2fx   %s\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms, equal ? "results equal" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t samples = argc > 1 ? std::stoul(argv[1]) : 2'000'000;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif

    using namespace mobrkhs;

    {
        const auto data = sweeps::random_transform_samples(20240331, samples);
        auto t0 = Clock::now();
        const double serial = sweeps::max_kernel_transform_residual_serial(data);
        const double serial_ms = ms_since(t0);
        t0 = Clock::now();
        const double parallel = sweeps::max_kernel_transform_residual(data);
        const double parallel_ms = ms_since(t0);
        report("kernel_transform_rule", serial_ms, parallel_ms, serial == parallel);
    }

    {
        const auto points = sweeps::random_bidisc_points(7, samples / 4);
        const moebius::MoebiusTransform phi(0.9, {0.25, -0.1});
        const moebius::MoebiusTransform psi(2.3, {-0.2, 0.3});
        auto t0 = Clock::now();
        const auto serial = sweeps::cocycle_identity_sweep_serial({1.0, 2.0}, phi, psi, points);
        const double serial_ms = ms_since(t0);
        t0 = Clock::now();
        const auto parallel = sweeps::cocycle_identity_sweep({1.0, 2.0}, phi, psi, points);
        const double parallel_ms = ms_since(t0);
        report("cocycle_identity", serial_ms, parallel_ms, serial.deviation == parallel.deviation);
    }

    {
        const auto space = polyspace::TensorSpace::tensor({1.0, 2.0}, 16);
        const decompose::BidiscDecomposition dec(space);
        std::vector<std::complex<double>> grid;
        const int side = 48;
        for (int i = 0; i < side; ++i) {
            for (int j = 0; j < side; ++j) {
                grid.emplace_back(-0.4 + 0.8 * i / (side - 1), -0.4 + 0.8 * j / (side - 1));
            }
        }
        auto t0 = Clock::now();
        const double serial = sweeps::max_summand_law_residual_serial(dec, 2, grid);
        const double serial_ms = ms_since(t0);
        t0 = Clock::now();
        const double parallel = sweeps::max_summand_law_residual(dec, 2, grid);
        const double parallel_ms = ms_since(t0);
        report("summand_kernel_law", serial_ms, parallel_ms, serial == parallel);
    }

    return 0;
}
