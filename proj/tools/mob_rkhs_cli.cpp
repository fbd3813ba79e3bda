// Command-line front end: run decompositions and verification suites, emit
// JSON/CSV reports.
//
// Exit codes: 0 all contracts pass, 1 mathematical contract violation,
// 2 configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "mobrkhs/decompose.hpp"
#include "mobrkhs/log.hpp"
#include "mobrkhs/verify.hpp"

namespace {

using mobrkhs::decompose::Parity;

struct RunConfig {
    std::vector<double> lambdas;
    std::vector<double> polydisc;
    int degree = 0;  // 0 = per-dimension default
    std::string parity = "none";
    std::string out_path;
    std::vector<std::string> tolerance_pairs;
    double inject_noise = 0.0;
    std::uint64_t seed = 20240331;
};

int config_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 2;
}

bool parse_tolerances(const std::vector<std::string>& pairs, std::map<std::string, double>& out) {
    for (const std::string& p : pairs) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) return false;
        try {
            const double value = std::stod(p.substr(eq + 1));
            if (!(value >= 0.0)) return false;
            out[p.substr(0, eq)] = value;
        } catch (const std::exception&) {
            return false;
        }
    }
    return true;
}

bool validate_common(const RunConfig& config, std::string& message) {
    for (double l : config.lambdas) {
        if (!(l > 0.0)) {
            message = "all tensor weights must be positive";
            return false;
        }
    }
    for (double l : config.polydisc) {
        if (!(l > 0.0)) {
            message = "all polydisc weights must be positive";
            return false;
        }
    }
    if (config.degree != 0 && (config.degree < 4 || config.degree > 24)) {
        message = "degree bound must lie in [4, 24]";
        return false;
    }
    if (config.inject_noise < 0.0) {
        message = "noise amplitude must be non-negative";
        return false;
    }
    return true;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

Parity parse_parity(const std::string& s) {
    if (s == "symmetric") return Parity::symmetric;
    if (s == "antisymmetric") return Parity::antisymmetric;
    return Parity::none;
}

void print_ladder_table(const mobrkhs::decompose::DecompositionReport& report) {
    std::printf("lambda_hat = %.8f\n", report.lambda_hat);
    std::printf("%4s  %16s  %14s  %12s  %s\n", "m", "K_m(0,0)", "parameter", "residual", "dims");
    for (const auto& s : report.summands) {
        std::string dims;
        for (std::size_t d = 0; d < s.graded_dims.size(); ++d) {
            dims += std::to_string(s.graded_dims[d]);
        }
        if (s.empty) {
            std::printf("%4d  %16s  %14s  %12s  %s\n", s.m, "-", "(empty)", "-", dims.c_str());
            continue;
        }
        char parameter[32] = "-";
        if (s.parameter_ok) std::snprintf(parameter, sizeof(parameter), "%.6f", s.parameter);
        char residual[32] = "-";
        if (s.residual_ok) std::snprintf(residual, sizeof(residual), "%.2e", s.residual);
        std::printf("%4d  %16.8g  %14s  %12s  %s\n", s.m, s.k00, parameter, residual, dims.c_str());
    }
}

int run_decompose(const RunConfig& config) {
    std::string message;
    if (!validate_common(config, message)) return config_error(message);
    if (!config.polydisc.empty() && config.polydisc.size() != 3) {
        return config_error("--polydisc needs exactly three weights");
    }
    std::map<std::string, double> tolerances;
    if (!parse_tolerances(config.tolerance_pairs, tolerances)) {
        return config_error("tolerance overrides must look like NAME=VALUE with VALUE >= 0");
    }
    const double law_tol = tolerances.count("summand_kernel_law") ? tolerances["summand_kernel_law"] : 1e-7;
    const double ladder_tol = tolerances.count("parameter_ladder") ? tolerances["parameter_ladder"] : 1e-4;

    const bool polydisc_mode = !config.polydisc.empty() || config.lambdas.size() == 3;
    if (polydisc_mode) {
        std::array<double, 3> l{};
        const auto& src = config.polydisc.empty() ? config.lambdas : config.polydisc;
        if (src.size() != 3) return config_error("polydisc decomposition needs three weights");
        std::copy(src.begin(), src.end(), l.begin());
        const int degree = config.degree == 0 ? 8 : config.degree;
        if (degree < 6) return config_error("polydisc decomposition needs degree >= 6");
        mobrkhs::log::info("running polydisc decomposition");
        const auto result = mobrkhs::decompose::polydisc_decompose(l, degree);
        std::printf("Lambda_hat = %.8f\n", result.lambda_sum_hat);
        std::printf("%4s  %14s  %s\n", "K", "parameter", "multiplicity");
        bool ok = result.max_gram_offdiag <= 1e-10;
        for (std::size_t K = 0; K < result.multiplicities.size(); ++K) {
            const auto& [p, c] = result.multiplicities[K];
            std::printf("%4zu  %14.8f  %d\n", K, p, c);
            if (c != static_cast<int>(K) + 1) ok = false;
        }
        if (!ok) std::printf("violated: multiplicity or stage-one diagonality contract\n");
        if (!config.out_path.empty()) {
            write_json(config.out_path, mobrkhs::verify::polydisc_to_json(result));
        }
        return ok ? 0 : 1;
    }

    if (config.lambdas.size() != 2) return config_error("--lambdas needs two (or three) weights");
    const int degree = config.degree == 0 ? 12 : config.degree;
    auto space = mobrkhs::polyspace::TensorSpace::tensor(config.lambdas, degree);
    if (config.inject_noise > 0.0) space = space.perturbed(config.inject_noise, config.seed);
    const Parity parity = parse_parity(config.parity);
    mobrkhs::log::info("running bidisc decomposition");
    const mobrkhs::decompose::BidiscDecomposition dec(std::move(space), parity);
    const auto report = dec.report();
    print_ladder_table(report);

    bool ok = true;
    std::vector<std::string> violations;
    for (const auto& s : report.summands) {
        if (s.residual_ok && s.residual > law_tol) {
            ok = false;
            violations.push_back("summand_kernel_law_m" + std::to_string(s.m));
        }
    }
    // ladder spacing: 2 between consecutive summands, 4 inside a parity class
    const double spacing = parity == Parity::none ? 2.0 : 4.0;
    double previous = 0.0;
    bool have_previous = false;
    for (const auto& s : report.summands) {
        if (parity != Parity::none) {
            const bool live_slot = (parity == Parity::symmetric) == (s.m % 2 == 0);
            if (live_slot == s.empty) {
                ok = false;
                violations.push_back("parity_emptiness_m" + std::to_string(s.m));
            }
        }
        if (!s.parameter_ok) continue;
        if (have_previous && std::abs(s.parameter - previous - spacing) > ladder_tol) {
            ok = false;
            violations.push_back("parameter_ladder_m" + std::to_string(s.m));
        }
        previous = s.parameter;
        have_previous = true;
    }
    for (const auto& v : violations) std::printf("violated: %s\n", v.c_str());
    if (!config.out_path.empty()) {
        write_json(config.out_path, mobrkhs::verify::decomposition_to_json(report));
    }
    return ok ? 0 : 1;
}

int run_verify(const RunConfig& config) {
    std::string message;
    if (!validate_common(config, message)) return config_error(message);
    std::map<std::string, double> tolerances;
    if (!parse_tolerances(config.tolerance_pairs, tolerances)) {
        return config_error("tolerance overrides must look like NAME=VALUE with VALUE >= 0");
    }

    if (!config.polydisc.empty()) {
        if (config.polydisc.size() != 3) return config_error("--polydisc needs exactly three weights");
        std::array<double, 3> l{};
        std::copy(config.polydisc.begin(), config.polydisc.end(), l.begin());
        const int degree = config.degree == 0 ? 8 : config.degree;
        if (degree < 6) return config_error("polydisc verification needs degree >= 6");
        mobrkhs::log::info("running polydisc verification suite");
        const auto suite = mobrkhs::verify::run_polydisc_suite(l, degree, tolerances);
        std::fputs(mobrkhs::verify::to_csv(suite.rows).c_str(), stdout);
        std::printf("%4s  %14s  %s\n", "K", "parameter", "multiplicity");
        for (std::size_t K = 0; K < suite.report["multiplicities"].size(); ++K) {
            std::printf("%4zu  %14.8f  %d\n", K,
                        suite.report["multiplicities"][K]["parameter"].get<double>(),
                        suite.report["multiplicities"][K]["multiplicity"].get<int>());
        }
        if (!config.out_path.empty()) write_json(config.out_path, suite.report);
        return suite.all_pass() ? 0 : 1;
    }

    if (config.lambdas.size() != 2) return config_error("--lambdas needs exactly two weights");
    mobrkhs::verify::Options options;
    options.lambdas = config.lambdas;
    options.degree = config.degree == 0 ? 12 : config.degree;
    options.inject_noise = config.inject_noise;
    options.seed = config.seed;
    options.tolerance_overrides = tolerances;
    mobrkhs::log::info("running bidisc verification suite");
    const auto suite = mobrkhs::verify::run_bidisc_suite(options);
    std::fputs(mobrkhs::verify::to_csv(suite.rows).c_str(), stdout);
    for (const auto& row : suite.rows) {
        if (!row.pass) std::printf("failed: %s (residual %.3e, tolerance %.3e)\n", row.name.c_str(),
                                   row.residual, row.tolerance);
    }
    if (!config.out_path.empty()) write_json(config.out_path, suite.report);
    return suite.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decomposition and verification of disc-automorphism multiplier actions on "
                 "polydisc reproducing-kernel spaces"};
    app.require_subcommand(1);

    RunConfig config;
    const auto add_common = [&config](CLI::App* cmd) {
        cmd->add_option("--lambdas", config.lambdas, "comma-separated weights a,b[,c]")->delimiter(',');
        cmd->add_option("--polydisc", config.polydisc, "three weights a,b,c for the polydisc pipeline")
            ->delimiter(',');
        cmd->add_option("--degree", config.degree, "total-degree truncation bound, in [4, 24]");
        cmd->add_option("--out", config.out_path, "write a JSON report to this path");
        cmd->add_option("--tol", config.tolerance_pairs, "tolerance override NAME=VALUE")
            ->take_all();
        cmd->add_option("--seed", config.seed, "seed for sampled checks");
        cmd->add_option("--inject-noise", config.inject_noise,
                        "Gram perturbation amplitude (negative-control mode)");
    };

    CLI::App* cmd_decompose = app.add_subcommand("decompose", "run a decomposition, print the ladder");
    add_common(cmd_decompose);
    cmd_decompose->add_option("--parity", config.parity, "symmetric|antisymmetric")
        ->check(CLI::IsMember({"none", "symmetric", "antisymmetric"}));

    CLI::App* cmd_verify = app.add_subcommand("verify", "run the verification suites, print CSV");
    add_common(cmd_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(cmd_decompose)) return run_decompose(config);
        return run_verify(config);
    } catch (const std::invalid_argument& e) {
        return config_error(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
