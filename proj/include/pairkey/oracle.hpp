#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "pairkey/gaussian_mi.hpp"
#include "pairkey/observation.hpp"

namespace pairkey {

// Covariance of one slot's disclosed and observed variables, with the pair
// distance treated as a zero-mean Gaussian of variance d^2 (the reading under
// which the closed forms are algebraically exact). All noise variances scale
// with 1/J, including the split noises. Index order:
//   0 = S_ij (forward disclosure), 1 = S_ji (backward disclosure),
//   2 = dt_ij, 3 = dt_ji (legitimate observations), 4 = dhat_ij (eavesdropper).
Eigen::MatrixXd slot_covariance(double d, double sigma2, double sigma_hat2,
                                double sp2_fwd, double sp2_bwd, std::int64_t beacons);

// Mutual-information evaluations of the same brackets the closed forms
// compute, built only from slot_covariance + gaussian_mi. Used to validate
// every closed form; never used on the production path.
double oracle_unlimited_rate(double d, double sigma2, double sigma_hat2,
                             std::int64_t beacons);
double oracle_forward_term(double d, double sigma2, double sigma_hat2, double sp2_fwd,
                           std::int64_t beacons);
double oracle_backward_term(double d, double sigma2, double sigma_hat2, double sp2_fwd,
                            double sp2_bwd, std::int64_t beacons);
double oracle_public_rate_summand(double d, double sigma2, double sp2,
                                  std::int64_t beacons);

// Randomized equivalence sweep: closed forms vs the covariance oracle, and
// the two eavesdropper-variance forms against each other (plus the Heron
// constant against the shoelace area). Draw parameters are logged in the
// report so failures are reproducible.
struct SelfCheckReport {
    std::int64_t n_draws = 0;
    double max_delta_unlimited = 0.0;   // bits
    double max_delta_forward = 0.0;     // bits
    double max_delta_backward = 0.0;    // bits
    double max_delta_constraint = 0.0;  // bits
    double max_rel_eve_variance = 0.0;  // relative, dual-form equality
    double max_rel_heron = 0.0;         // relative, vs 16 * area^2
    double tol_bits = 1e-9;
    double tol_rel = 1e-9;

    bool pass() const;
    std::string summary() const;
};

SelfCheckReport run_selfcheck(std::int64_t n_draws, std::uint64_t seed);

}  // namespace pairkey
