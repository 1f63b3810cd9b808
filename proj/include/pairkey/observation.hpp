#pragma once

#include <cstdint>

#include "pairkey/geometry.hpp"
#include "pairkey/rng.hpp"

namespace pairkey {

// Beacon-ranging noise model. Distance-noise variances are stored per
// unordered pair (sigma_ij = sigma_ji), angle-noise variances per user, both
// at their single-beacon (J = 1) values. With `beacons` = J ranging beacons
// per slot, every observation variance is divided by J.
struct NoiseModel {
    double sigma2_12 = 0.1, sigma2_13 = 0.1, sigma2_23 = 0.1;
    double sigma2_ang_1 = 0.1, sigma2_ang_2 = 0.1, sigma2_ang_3 = 0.1;
    std::int64_t beacons = 1;

    void validate() const;
    double sigma2_pair(int i, int j) const;  // symmetric in i, j
    double sigma2_angle(int m) const;
};

// One slot's noisy observations: six ordered-pair distance estimates (the
// two directions of a pair use independent noise draws of equal variance)
// and three angle estimates.
struct ObservationSet {
    double d12 = 0, d21 = 0, d13 = 0, d31 = 0, d23 = 0, d32 = 0;
    double phi1 = 0, phi2 = 0, phi3 = 0;
};

ObservationSet observe(const TriangleSample& t, const NoiseModel& noise, RngStream& rng);

// The remaining user's distance reconstruction from its own two noisy
// distances and its noisy angle (law of cosines). A negative radicand, which
// can occur under large noise, is clamped to zero.
double eve_estimate(double dt_mi, double dt_mj, double phit_m);

// Variance of the linearized reconstruction error for pair {i,j} =
// {1,2,3} \ {eavesdropper}, at J = 1 (divide by `beacons` for the per-slot
// value). Closed form in the three side lengths; clamped at 0.
double eve_estimate_variance(const TriangleSample& t, const NoiseModel& noise,
                             int eavesdropper);

// Same quantity written in terms of the eavesdropper's angle instead of the
// Heron constant; kept as an independent cross-check of the closed form.
double eve_estimate_variance_angle_form(const TriangleSample& t, const NoiseModel& noise,
                                        int eavesdropper);

}  // namespace pairkey
