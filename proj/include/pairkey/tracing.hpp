#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pairkey/rates.hpp"

namespace pairkey {

// One grid point of the pair-noise sweep: both bounds for all three pairs at
// a given sigma2_12, evaluated on a shared geometry stream (same seed at
// every grid point, so trends are monotone sample-by-sample).
struct NoiseSweepRow {
    double sigma2_12 = 0.0;
    std::array<BoundEstimate, 3> inner;
    OuterBound outer;
    std::int64_t n_excluded = 0;
};

struct NoiseSweepSpec {
    std::vector<double> grid{0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
    MobilityConfig mobility;
    NoiseModel noise;  // sigma2_12 is overridden by the grid value
    McConfig mc;
};

std::vector<NoiseSweepRow> sweep_pair_noise(const NoiseSweepSpec& spec);

enum class AxisPair { R12_R13, R12_R23, R13_R23 };

AxisPair parse_axis_pair(std::string_view text);  // "R12-R13" etc.; throws
const char* axis_pair_name(AxisPair axes);

// A feasible projected point. Points with identical projected coordinates
// are merged; `third_best` is the largest value of the hidden pair's rate
// among the merged grid combinations and `split` the combination achieving it.
struct RegionPoint {
    SplitNoise split;
    double axis1 = 0.0, axis2 = 0.0;
    double third_best = 0.0;
    RateLimitedPoint detail;
    bool frontier = false;
    bool has_refined = false;
    RateLimitedPoint refined;
};

struct ProjectedRegion {
    AxisPair axes = AxisPair::R12_R13;
    std::vector<RegionPoint> points;  // sorted by (axis1, axis2)
    std::int64_t n_combos = 0;
    std::int64_t n_feasible = 0;
    std::int64_t n_excluded = 0;
    std::string diagnostic;  // set when the feasible set is empty
};

struct TraceSpec {
    AxisPair axes = AxisPair::R12_R13;
    PublicRates budgets;
    MobilityConfig mobility;
    NoiseModel noise;
    // Candidate variances applied to each of the six split directions; may
    // contain 0 and infinity.
    std::vector<double> split_grid;
    McConfig mc{.n_samples = 10000};
    // Frontier points are re-evaluated at this sample count (0 disables).
    std::int64_t refine_samples = 1000000;
};

// 6 log-spaced decades across [1e-3, 1e3] plus the disclose-nothing value.
std::vector<double> default_split_grid();

// Sweeps the split grid over all six directions, keeps feasible points,
// projects onto the axis pair and marks the non-dominated frontier. Every
// emitted point reproduces bit-for-bit under rate_limited_point with the
// same seed and sample count.
ProjectedRegion trace_projection(const TraceSpec& spec);

}  // namespace pairkey
