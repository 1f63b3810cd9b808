#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pairkey/discrete.hpp"
#include "pairkey/oracle.hpp"
#include "pairkey/tracing.hpp"

namespace pairkey {

// 12 significant digits; infinities render as "inf"/"-inf" so output files
// stay stable and re-parseable.
std::string format_number(double v);

std::uint64_t fnv1a64(std::string_view text);

// Header lines stamped into every output file. Contains no timestamps, so a
// rerun with the same config is byte-identical.
struct RunMeta {
    std::string command;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    std::int64_t n_samples = 0;
    std::int64_t n_excluded = 0;
};

std::string meta_preamble(const RunMeta& meta);
nlohmann::json meta_json(const RunMeta& meta);

std::string noise_sweep_csv(const std::vector<NoiseSweepRow>& rows, const RunMeta& meta);
nlohmann::json noise_sweep_json(const std::vector<NoiseSweepRow>& rows,
                                const RunMeta& meta);

std::string region_csv(const ProjectedRegion& region, const RunMeta& meta);
nlohmann::json region_json(const ProjectedRegion& region, const RunMeta& meta);

nlohmann::json bounds_json(const std::array<BoundEstimate, 3>& inner, const RunMeta& meta);
nlohmann::json outer_json(const OuterBound& outer, const RunMeta& meta);
nlohmann::json rate_limited_json(const RateLimitedPoint& point, const RunMeta& meta);
nlohmann::json coefficients_json(const RegionCoefficients& k);

}  // namespace pairkey
