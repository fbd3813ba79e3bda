#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "mobrkhs/decompose.hpp"

namespace mobrkhs::verify {

struct CheckRow {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Options {
    std::vector<double> lambdas;  // two entries for the bidisc suite
    int degree = 12;
    double inject_noise = 0.0;
    std::uint64_t seed = 20240331;
    std::map<std::string, double> tolerance_overrides;
};

struct SuiteResult {
    std::vector<CheckRow> rows;
    nlohmann::json report;  // JSON document with the block, diagonal and intertwining sections

    bool all_pass() const;
};

/// Bidisc verification suite: cocycle identities, kernel transformation rule,
/// decomposition contracts, block structure, shift equivalence, intertwining.
SuiteResult run_bidisc_suite(const Options& options);

/// Polydisc suite: stage-one Gram diagonality and the parameter multiplicities.
SuiteResult run_polydisc_suite(const std::array<double, 3>& lambdas, int degree,
                               const std::map<std::string, double>& tolerance_overrides = {});

std::string to_csv(const std::vector<CheckRow>& rows);

nlohmann::json decomposition_to_json(const decompose::DecompositionReport& report);
nlohmann::json polydisc_to_json(const decompose::PolydiscResult& result);

}  // namespace mobrkhs::verify
