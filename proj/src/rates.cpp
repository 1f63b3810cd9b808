#include "pairkey/rates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pairkey {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double positive_half_log1p(double x) {
    if (!(x > -1.0)) return 0.0;  // guards the log; negative brackets clamp anyway
    return std::max(0.0, 0.5 * std::log1p(x) / kLn2);
}

void check_rate_args(double d, double sigma2, std::int64_t beacons) {
    if (!(d > 0.0)) throw std::invalid_argument("distance must be positive");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
    if (beacons < 1) throw std::invalid_argument("beacon count must be at least 1");
}

// sigma2 of a pair by pair index 0={1,2}, 1={1,3}, 2={2,3}.
double pair_sigma2(const NoiseModel& noise, int pair) {
    switch (pair) {
        case 0: return noise.sigma2_12;
        case 1: return noise.sigma2_13;
        case 2: return noise.sigma2_23;
    }
    throw std::invalid_argument("pair index must be in 0..2");
}

}  // namespace

void PublicRates::validate() const {
    if (!(r1 >= 0.0) || !(r2 >= 0.0) || !(r3 >= 0.0))
        throw std::invalid_argument("public rates must be nonnegative");
}

void SplitNoise::validate() const {
    for (double v : {sp2_12, sp2_21, sp2_13, sp2_31, sp2_23, sp2_32}) {
        if (!(v >= 0.0)) throw std::invalid_argument("split variances must be nonnegative");
    }
}

double SplitNoise::forward(int pair) const {
    switch (pair) {
        case 0: return sp2_12;
        case 1: return sp2_13;
        case 2: return sp2_23;
    }
    throw std::invalid_argument("pair index must be in 0..2");
}

double SplitNoise::backward(int pair) const {
    switch (pair) {
        case 0: return sp2_21;
        case 1: return sp2_31;
        case 2: return sp2_32;
    }
    throw std::invalid_argument("pair index must be in 0..2");
}

double rate_limited_forward_term(double d, double sigma2, double sigma_hat2,
                                 double sp2_fwd, std::int64_t beacons) {
    check_rate_args(d, sigma2, beacons);
    if (!(sigma_hat2 >= 0.0)) throw std::invalid_argument("sigma_hat2 must be nonnegative");
    if (!(sp2_fwd >= 0.0)) throw std::invalid_argument("split variance must be nonnegative");
    if (std::isinf(sp2_fwd)) return 0.0;

    const double j = static_cast<double>(beacons);
    const double u = d * d;
    const double num = u * u * j * j * (sigma_hat2 - sigma2);
    const double den = (u * j + sigma_hat2) *
                       (u * j * (2.0 * sigma2 + sp2_fwd) + (sigma2 + sp2_fwd) * sigma2);
    return positive_half_log1p(num / den);
}

double unlimited_rate_integrand(double d, double sigma2, double sigma_hat2,
                                std::int64_t beacons) {
    return rate_limited_forward_term(d, sigma2, sigma_hat2, 0.0, beacons);
}

double rate_limited_backward_term(double d, double sigma2, double sigma_hat2,
                                  double sp2_fwd, double sp2_bwd, std::int64_t beacons) {
    check_rate_args(d, sigma2, beacons);
    if (!(sigma_hat2 >= 0.0)) throw std::invalid_argument("sigma_hat2 must be nonnegative");
    if (!(sp2_fwd >= 0.0) || !(sp2_bwd >= 0.0))
        throw std::invalid_argument("split variances must be nonnegative");
    if (std::isinf(sp2_bwd)) return 0.0;
    // A zero-variance forward disclosure reveals the observation itself;
    // conditioning on it leaves no gain over the eavesdropper.
    if (sp2_fwd == 0.0) return 0.0;
    // An infinite forward split carries nothing, so the backward key sees the
    // one-way problem with its own test channel.
    if (std::isinf(sp2_fwd))
        return rate_limited_forward_term(d, sigma2, sigma_hat2, sp2_bwd, beacons);

    const double j = static_cast<double>(beacons);
    const double u = d * d;
    const double num =
        u * u * j * j * (sigma_hat2 * sp2_fwd - sigma2 * (sigma2 + sp2_fwd));
    const double den =
        (u * j * (sigma_hat2 + sigma2 + sp2_fwd) + sigma_hat2 * (sigma2 + sp2_fwd)) *
        (u * j * (2.0 * sigma2 + sp2_bwd) + (sigma2 + sp2_bwd) * sigma2);
    return positive_half_log1p(num / den);
}

double rate_limited_pair_terms(double d, double sigma2, double sigma_hat2,
                               double sp2_fwd, double sp2_bwd, std::int64_t beacons) {
    return rate_limited_forward_term(d, sigma2, sigma_hat2, sp2_fwd, beacons) +
           rate_limited_backward_term(d, sigma2, sigma_hat2, sp2_fwd, sp2_bwd, beacons);
}

double public_rate_summand(double d, double sigma2, double sp2, std::int64_t beacons) {
    check_rate_args(d, sigma2, beacons);
    if (!(sp2 >= 0.0)) throw std::invalid_argument("split variance must be nonnegative");
    if (std::isinf(sp2)) return 0.0;
    if (sp2 == 0.0) return std::numeric_limits<double>::infinity();

    const double j = static_cast<double>(beacons);
    const double u = d * d;
    const double x = (2.0 * u * j + sigma2) * sigma2 / ((u * j + sigma2) * sp2);
    return 0.5 * std::log1p(x) / kLn2;
}

double PairGeometry::side(int pair) const {
    switch (pair) {
        case 0: return d12;
        case 1: return d13;
        case 2: return d23;
    }
    throw std::invalid_argument("pair index must be in 0..2");
}

double PairGeometry::eve_var(int pair) const {
    switch (pair) {
        case 0: return sh2_12;
        case 1: return sh2_13;
        case 2: return sh2_23;
    }
    throw std::invalid_argument("pair index must be in 0..2");
}

GeometryCache build_geometry_cache(const MobilityConfig& mobility,
                                   const NoiseModel& noise, const McConfig& mc) {
    mobility.validate();
    noise.validate();
    mc.validate();

    GeometryCache cache;
    cache.mc = mc;
    cache.samples.assign(static_cast<std::size_t>(mc.n_samples), PairGeometry{});

    parallel_for(mc.n_samples, mc.n_threads, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t k = begin; k < end; ++k) {
            RngStream rng(mc.seed, static_cast<std::uint64_t>(k));
            const auto pos = sample_positions(rng, mobility);
            const TriangleSample t = triangle_from_positions(pos[0], pos[1], pos[2]);
            if (t.degenerate) continue;
            PairGeometry& g = cache.samples[static_cast<std::size_t>(k)];
            g.d12 = t.d12;
            g.d13 = t.d13;
            g.d23 = t.d23;
            g.sh2_12 = eve_estimate_variance(t, noise, 3);
            g.sh2_13 = eve_estimate_variance(t, noise, 2);
            g.sh2_23 = eve_estimate_variance(t, noise, 1);
            g.valid = true;
        }
    });

    std::int64_t excluded = 0;
    for (const PairGeometry& g : cache.samples)
        if (!g.valid) ++excluded;
    cache.n_excluded = excluded;
    return cache;
}

double pair_rate_sample(const PairGeometry& g, int pair, const NoiseModel& noise,
                        double sp2_fwd, double sp2_bwd) {
    return rate_limited_pair_terms(g.side(pair), pair_sigma2(noise, pair),
                                   g.eve_var(pair), sp2_fwd, sp2_bwd, noise.beacons);
}

double user_lhs_sample(const PairGeometry& g, int user, const NoiseModel& noise,
                       const SplitNoise& split) {
    const std::int64_t j = noise.beacons;
    switch (user) {
        case 0:  // user 1 discloses toward users 2 and 3
            return public_rate_summand(g.d12, noise.sigma2_12, split.sp2_12, j) +
                   public_rate_summand(g.d13, noise.sigma2_13, split.sp2_13, j);
        case 1:  // user 2
            return public_rate_summand(g.d12, noise.sigma2_12, split.sp2_21, j) +
                   public_rate_summand(g.d23, noise.sigma2_23, split.sp2_23, j);
        case 2:  // user 3
            return public_rate_summand(g.d13, noise.sigma2_13, split.sp2_31, j) +
                   public_rate_summand(g.d23, noise.sigma2_23, split.sp2_32, j);
    }
    throw std::invalid_argument("user index must be in 0..2");
}

namespace {

std::vector<BoundEstimate> reduce_cache(
    const GeometryCache& cache, int n_outputs,
    const std::function<void(const PairGeometry&, double*)>& kernel, int n_threads) {
    auto eval = [&](std::int64_t idx, double* out) {
        const PairGeometry& g = cache.samples[static_cast<std::size_t>(idx)];
        if (!g.valid) return false;
        kernel(g, out);
        return true;
    };
    return block_reduce(cache.size(), n_outputs, eval, n_threads, cache.mc.batch_size);
}

}  // namespace

std::array<BoundEstimate, 3> inner_bound_unlimited(const GeometryCache& cache,
                                                   const NoiseModel& noise) {
    const auto r = reduce_cache(
        cache, 3,
        [&](const PairGeometry& g, double* out) {
            for (int p = 0; p < 3; ++p)
                out[p] = unlimited_rate_integrand(g.side(p), pair_sigma2(noise, p),
                                                  g.eve_var(p), noise.beacons);
        },
        cache.mc.n_threads);
    return {r[0], r[1], r[2]};
}

std::array<BoundEstimate, 3> inner_bound_unlimited(const MobilityConfig& mobility,
                                                   const NoiseModel& noise,
                                                   const McConfig& mc) {
    return inner_bound_unlimited(build_geometry_cache(mobility, noise, mc), noise);
}

OuterBound outer_bound_detailed(const GeometryCache& cache, const NoiseModel& noise) {
    const auto r = reduce_cache(
        cache, 3,
        [](const PairGeometry& g, double* out) {
            out[0] = g.sh2_12;
            out[1] = g.sh2_13;
            out[2] = g.sh2_23;
        },
        cache.mc.n_threads);

    OuterBound o;
    o.mean_eve_variance = {r[0], r[1], r[2]};
    double* rates[3] = {&o.rates.r12, &o.rates.r13, &o.rates.r23};
    for (int p = 0; p < 3; ++p) {
        const double s2 = pair_sigma2(noise, p);
        const double m = r[p].mean;
        *rates[p] = 0.5 * std::log1p(m / s2) / kLn2;
        o.rate_std_error[p] = r[p].std_error / (2.0 * kLn2 * (s2 + m));
    }
    return o;
}

OuterBound outer_bound_detailed(const MobilityConfig& mobility, const NoiseModel& noise,
                                const McConfig& mc) {
    return outer_bound_detailed(build_geometry_cache(mobility, noise, mc), noise);
}

RateTriple outer_bound(const MobilityConfig& mobility, const NoiseModel& noise,
                       const McConfig& mc) {
    return outer_bound_detailed(mobility, noise, mc).rates;
}

bool within_budget(const BoundEstimate& lhs, double budget, bool slack) {
    if (std::isinf(budget)) return true;
    if (!std::isfinite(lhs.mean)) return false;
    const double v = slack ? lhs.mean - 2.0 * lhs.std_error : lhs.mean;
    return v <= budget + 1e-12;
}

RateLimitedPoint rate_limited_point(const GeometryCache& cache, const NoiseModel& noise,
                                    const SplitNoise& split, const PublicRates& budgets,
                                    int n_threads) {
    split.validate();
    budgets.validate();

    const auto r = reduce_cache(
        cache, 6,
        [&](const PairGeometry& g, double* out) {
            for (int p = 0; p < 3; ++p)
                out[p] = pair_rate_sample(g, p, noise, split.forward(p), split.backward(p));
            for (int u = 0; u < 3; ++u) out[3 + u] = user_lhs_sample(g, u, noise, split);
        },
        n_threads);

    RateLimitedPoint point;
    point.rates = {r[0], r[1], r[2]};
    point.public_rate_lhs = {r[3], r[4], r[5]};
    const double budget[3] = {budgets.r1, budgets.r2, budgets.r3};
    point.feasible = true;
    point.feasible_strict = true;
    for (int u = 0; u < 3; ++u) {
        point.feasible = point.feasible && within_budget(r[3 + u], budget[u], true);
        point.feasible_strict =
            point.feasible_strict && within_budget(r[3 + u], budget[u], false);
    }
    return point;
}

RateLimitedPoint rate_limited_point(const MobilityConfig& mobility,
                                    const NoiseModel& noise, const SplitNoise& split,
                                    const PublicRates& budgets, const McConfig& mc) {
    return rate_limited_point(build_geometry_cache(mobility, noise, mc), noise, split,
                              budgets, mc.n_threads);
}

}  // namespace pairkey
