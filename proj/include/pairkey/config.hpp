#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pairkey/tracing.hpp"

namespace pairkey {

// Configuration problems (bad JSON, schema violations, invalid values).
// The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One run's fully resolved configuration. Every command reads the subset it
// needs; absent fields keep their defaults. All quantities are in base units
// (lengths dimensionless, variances squared lengths, rates bits per slot).
struct RunConfig {
    MobilityConfig mobility;
    NoiseModel noise;
    McConfig mc{.n_samples = 1000000, .seed = 1};
    PublicRates budgets;
    SplitNoise split{0.1, 0.1, 0.1, 0.1, 0.1, 0.1};

    std::vector<double> sweep_grid{0.05, 0.1, 0.2, 0.3, 0.4, 0.5};

    std::string axes = "R12-R13";
    std::vector<double> split_grid = default_split_grid();
    std::int64_t region_samples = 10000;  // per grid combination
    std::int64_t refine_samples = 1000000;

    nlohmann::json discrete;  // raw instance document plus optional query

    std::string out_path;       // empty = stdout
    std::string format = "csv";

    std::uint64_t config_hash = 0;  // of the source document
};

// Accepts numbers or the strings "inf"/"Infinity" for unbounded quantities.
double parse_extended_number(const nlohmann::json& v, const char* what);

RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

}  // namespace pairkey
