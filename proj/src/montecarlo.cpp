#include "pairkey/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace pairkey {

namespace {

constexpr std::int64_t kBlock = 1024;

int resolve_threads(int n_threads, std::int64_t n_work_items) {
    int t = n_threads > 0 ? n_threads
                          : static_cast<int>(std::thread::hardware_concurrency());
    if (t < 1) t = 1;
    if (static_cast<std::int64_t>(t) > n_work_items)
        t = static_cast<int>(std::max<std::int64_t>(n_work_items, 1));
    return t;
}

double pairwise_sum(const double* v, std::int64_t count, std::int64_t stride) {
    if (count <= 8) {
        double s = 0.0;
        for (std::int64_t i = 0; i < count; ++i) s += v[i * stride];
        return s;
    }
    const std::int64_t half = count / 2;
    return pairwise_sum(v, half, stride) +
           pairwise_sum(v + half * stride, count - half, stride);
}

}  // namespace

void McConfig::validate() const {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
    if (batch_size < 1) throw std::invalid_argument("batch_size must be at least 1");
    if (n_threads < 0) throw std::invalid_argument("n_threads must be nonnegative");
}

void parallel_for(std::int64_t n, int n_threads,
                  const std::function<void(std::int64_t, std::int64_t)>& run_range) {
    if (n <= 0) return;
    const int t = resolve_threads(n_threads, n);
    if (t == 1) {
        run_range(0, n);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(t);
    const std::int64_t chunk = (n + t - 1) / t;
    for (int w = 0; w < t; ++w) {
        const std::int64_t begin = w * chunk;
        const std::int64_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([&run_range, begin, end] { run_range(begin, end); });
    }
    for (auto& th : workers) th.join();
}

std::vector<BoundEstimate> block_reduce(
    std::int64_t n, int n_outputs,
    const std::function<bool(std::int64_t, double*)>& eval, int n_threads,
    std::int64_t batch_hint) {
    if (n < 1) throw std::invalid_argument("block_reduce: n must be at least 1");
    if (n_outputs < 1) throw std::invalid_argument("block_reduce: need at least one output");

    const std::int64_t n_blocks = (n + kBlock - 1) / kBlock;
    const int k = n_outputs;
    std::vector<double> sums(static_cast<std::size_t>(n_blocks) * k, 0.0);
    std::vector<double> sqs(static_cast<std::size_t>(n_blocks) * k, 0.0);
    std::vector<std::int64_t> excluded(n_blocks, 0);

    const std::int64_t blocks_per_task =
        std::max<std::int64_t>(1, batch_hint / kBlock);
    const int t = resolve_threads(n_threads, n_blocks);
    std::atomic<std::int64_t> next_task{0};

    auto worker = [&] {
        std::vector<double> out(k);
        for (;;) {
            const std::int64_t task = next_task.fetch_add(1);
            const std::int64_t first_block = task * blocks_per_task;
            if (first_block >= n_blocks) return;
            const std::int64_t last_block =
                std::min(n_blocks, first_block + blocks_per_task);
            for (std::int64_t b = first_block; b < last_block; ++b) {
                double* acc = sums.data() + static_cast<std::size_t>(b) * k;
                double* acc2 = sqs.data() + static_cast<std::size_t>(b) * k;
                std::int64_t excl = 0;
                const std::int64_t end = std::min(n, (b + 1) * kBlock);
                for (std::int64_t i = b * kBlock; i < end; ++i) {
                    if (!eval(i, out.data())) {
                        ++excl;
                        continue;
                    }
                    for (int j = 0; j < k; ++j) {
                        acc[j] += out[j];
                        acc2[j] += out[j] * out[j];
                    }
                }
                excluded[b] = excl;
            }
        }
    };

    if (t == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(t);
        for (int w = 0; w < t; ++w) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
    }

    std::int64_t total_excluded = 0;
    for (std::int64_t e : excluded) total_excluded += e;
    const std::int64_t n_incl = n - total_excluded;
    if (n_incl == 0) throw std::runtime_error("all samples degenerate");

    std::vector<BoundEstimate> result(k);
    for (int j = 0; j < k; ++j) {
        const double s = pairwise_sum(sums.data() + j, n_blocks, k);
        const double s2 = pairwise_sum(sqs.data() + j, n_blocks, k);
        BoundEstimate& est = result[j];
        est.n_samples = n;
        est.n_excluded = total_excluded;
        est.mean = s / static_cast<double>(n_incl);
        if (!std::isfinite(est.mean)) {
            est.std_error = 0.0;
            continue;
        }
        if (n_incl > 1) {
            const double var =
                std::max(0.0, (s2 - s * s / static_cast<double>(n_incl)) /
                                  static_cast<double>(n_incl - 1));
            est.std_error = std::sqrt(var / static_cast<double>(n_incl));
        }
    }
    return result;
}

std::vector<BoundEstimate> mc_run(int n_outputs, const TriangleKernel& kernel,
                                  const MobilityConfig& mobility, const McConfig& mc) {
    mobility.validate();
    mc.validate();
    auto eval = [&](std::int64_t idx, double* out) {
        RngStream rng(mc.seed, static_cast<std::uint64_t>(idx));
        const auto pos = sample_positions(rng, mobility);
        const TriangleSample t = triangle_from_positions(pos[0], pos[1], pos[2]);
        if (t.degenerate) return false;
        kernel(t, rng, out);
        return true;
    };
    return block_reduce(mc.n_samples, n_outputs, eval, mc.n_threads, mc.batch_size);
}

BoundEstimate estimate(const std::function<double(const TriangleSample&)>& integrand,
                       const MobilityConfig& mobility, const McConfig& mc) {
    const auto r = mc_run(
        1,
        [&](const TriangleSample& t, RngStream&, double* out) { out[0] = integrand(t); },
        mobility, mc);
    return r[0];
}

}  // namespace pairkey
