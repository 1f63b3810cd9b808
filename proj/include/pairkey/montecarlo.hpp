#pragma once

#include <cstdint>
#include <functional>

#include "pairkey/geometry.hpp"

namespace pairkey {

struct McConfig {
    std::int64_t n_samples = 100000;
    std::uint64_t seed = 1;
    // Scheduling granularity hint only; results never depend on it.
    std::int64_t batch_size = 8192;
    // 0 = hardware concurrency. Thread count never affects results.
    int n_threads = 0;

    void validate() const;
};

// Monte-Carlo aggregate of one expectation. `mean` averages the included
// samples; degenerate geometry samples are excluded and counted.
struct BoundEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_samples = 0;   // requested sample count
    std::int64_t n_excluded = 0;  // degenerate samples skipped
};

// Deterministic map-reduce over sample indices [0, n). `eval` fills
// `n_outputs` values for one index, or returns false to exclude it. Samples
// are accumulated in fixed 1024-wide blocks and the block sums merged
// pairwise, so the result is a pure function of the per-index values:
// independent of thread count and scheduling.
std::vector<BoundEstimate> block_reduce(
    std::int64_t n, int n_outputs,
    const std::function<bool(std::int64_t, double*)>& eval, int n_threads,
    std::int64_t batch_hint = 8192);

// Runs disjoint index ranges on `n_threads` workers; pure side-effect loop
// for filling preallocated buffers (no reduction).
void parallel_for(std::int64_t n, int n_threads,
                  const std::function<void(std::int64_t, std::int64_t)>& run_range);

using TriangleKernel =
    std::function<void(const TriangleSample&, RngStream&, double*)>;

// Expectations over freshly sampled per-slot geometry. Sample k draws from
// substream (seed, k); the kernel may take further draws from the same
// stream. Degenerate triangles are excluded and counted; throws
// std::runtime_error if every sample is degenerate.
std::vector<BoundEstimate> mc_run(int n_outputs, const TriangleKernel& kernel,
                                  const MobilityConfig& mobility, const McConfig& mc);

BoundEstimate estimate(const std::function<double(const TriangleSample&)>& integrand,
                       const MobilityConfig& mobility, const McConfig& mc);

}  // namespace pairkey
