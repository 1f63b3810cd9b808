#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "pairkey/montecarlo.hpp"
#include "pairkey/observation.hpp"

namespace pairkey {

inline constexpr double kUnlimited = std::numeric_limits<double>::infinity();

// A point (R12, R13, R23) in bits per slot.
struct RateTriple {
    double r12 = 0.0, r13 = 0.0, r23 = 0.0;
};

// Per-user public-discussion budgets; infinity = unlimited channel.
struct PublicRates {
    double r1 = kUnlimited, r2 = kUnlimited, r3 = kUnlimited;
    void validate() const;
};

// Test-channel variances of the disclosed observations, one per direction
// (sp2_ij is what user i adds before sending toward user j). Infinity means
// that direction discloses nothing; zero means the raw observation.
struct SplitNoise {
    double sp2_12 = 0.0, sp2_21 = 0.0, sp2_13 = 0.0, sp2_31 = 0.0, sp2_23 = 0.0,
           sp2_32 = 0.0;
    void validate() const;
    double forward(int pair) const;   // pair: 0={1,2}, 1={1,3}, 2={2,3}
    double backward(int pair) const;  // the reverse direction of the pair
};

// ---------------------------------------------------------------------------
// Per-slot closed forms. All rates are in bits (log base 2); each bracketed
// term carries its own positive-part clamp, applied inside the expectation.
// `sigma_hat2` is the eavesdropper's linearized estimate variance at J = 1.
// ---------------------------------------------------------------------------

// Key-rate term for one pair under unlimited public discussion:
// 1/2 [log(1 + d^4 J^2 (sh2 - s2) / ((d^2 J + sh2)(2 d^2 J s2 + s2^2)))]+.
double unlimited_rate_integrand(double d, double sigma2, double sigma_hat2,
                                std::int64_t beacons);

// Rate-limited scheme, key sent i -> j through a test channel of variance
// sp2_fwd. With sp2_fwd = 0 this reduces exactly to the unlimited term.
double rate_limited_forward_term(double d, double sigma2, double sigma_hat2,
                                 double sp2_fwd, std::int64_t beacons);

// The reverse-direction key of the same pair, conditioned on the forward
// disclosure (hence it depends on both split variances).
double rate_limited_backward_term(double d, double sigma2, double sigma_hat2,
                                  double sp2_fwd, double sp2_bwd, std::int64_t beacons);

double rate_limited_pair_terms(double d, double sigma2, double sigma_hat2,
                               double sp2_fwd, double sp2_bwd, std::int64_t beacons);

// One summand of a user's public-rate constraint:
// 1/2 log(1 + (2 d^2 J + s2) s2 / ((d^2 J + s2) sp2)). Zero split -> +inf
// (disclosing the raw observation needs unlimited rate); infinite split -> 0.
double public_rate_summand(double d, double sigma2, double sp2, std::int64_t beacons);

// ---------------------------------------------------------------------------
// Monte-Carlo aggregates. All aggregate evaluators run over a geometry cache:
// one deterministic pass samples the per-slot sides and eavesdropper
// variances, and every bound for that (mobility, noise, seed) is a fixed
// reduction over it. Thread count and batch size never change results.
// ---------------------------------------------------------------------------

struct PairGeometry {
    double d12 = 0, d13 = 0, d23 = 0;          // side lengths
    double sh2_12 = 0, sh2_13 = 0, sh2_23 = 0;  // eavesdropper variances (J = 1)
    bool valid = false;

    double side(int pair) const;
    double eve_var(int pair) const;
};

struct GeometryCache {
    std::vector<PairGeometry> samples;  // one entry per requested sample
    std::int64_t n_excluded = 0;
    McConfig mc;

    std::int64_t size() const { return static_cast<std::int64_t>(samples.size()); }
};

GeometryCache build_geometry_cache(const MobilityConfig& mobility,
                                   const NoiseModel& noise, const McConfig& mc);

// Per-sample building blocks shared by every cache evaluator, so that sweep
// tables and single-point evaluations agree bit for bit.
double pair_rate_sample(const PairGeometry& g, int pair, const NoiseModel& noise,
                        double sp2_fwd, double sp2_bwd);
double user_lhs_sample(const PairGeometry& g, int user, const NoiseModel& noise,
                       const SplitNoise& split);

// Inner bound with unlimited public discussion, per pair {12, 13, 23}.
std::array<BoundEstimate, 3> inner_bound_unlimited(const GeometryCache& cache,
                                                   const NoiseModel& noise);
std::array<BoundEstimate, 3> inner_bound_unlimited(const MobilityConfig& mobility,
                                                   const NoiseModel& noise,
                                                   const McConfig& mc);

// Outer bound R_ij <= 1/2 log2(1 + E(sh2_ij) / s2_ij); the expectation sits
// inside the ratio, so only E(sh2) is Monte-Carlo estimated. The per-rate
// standard error is delta-method propagated from the E(sh2) estimate.
struct OuterBound {
    std::array<BoundEstimate, 3> mean_eve_variance;
    RateTriple rates;
    std::array<double, 3> rate_std_error{0.0, 0.0, 0.0};
};

OuterBound outer_bound_detailed(const GeometryCache& cache, const NoiseModel& noise);
OuterBound outer_bound_detailed(const MobilityConfig& mobility, const NoiseModel& noise,
                                const McConfig& mc);
RateTriple outer_bound(const MobilityConfig& mobility, const NoiseModel& noise,
                       const McConfig& mc);

// One evaluation of the rate-limited scheme: achievable rates per pair plus
// the three public-rate constraint sides. `feasible` uses the stderr-aware
// slack mean - 2*stderr <= budget; `feasible_strict` compares means directly.
struct RateLimitedPoint {
    std::array<BoundEstimate, 3> rates;
    std::array<BoundEstimate, 3> public_rate_lhs;
    bool feasible_strict = false;
    bool feasible = false;

    RateTriple rate_triple() const {
        return {rates[0].mean, rates[1].mean, rates[2].mean};
    }
};

RateLimitedPoint rate_limited_point(const GeometryCache& cache, const NoiseModel& noise,
                                    const SplitNoise& split, const PublicRates& budgets,
                                    int n_threads = 0);
RateLimitedPoint rate_limited_point(const MobilityConfig& mobility,
                                    const NoiseModel& noise, const SplitNoise& split,
                                    const PublicRates& budgets, const McConfig& mc);

// Budget check shared by point evaluation and region sweeps.
bool within_budget(const BoundEstimate& lhs, double budget, bool slack);

}  // namespace pairkey
