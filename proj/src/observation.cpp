#include "pairkey/observation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pairkey {

namespace {

struct PairOfEve {
    int i, j;  // the pair the eavesdropper targets, i < j
};

PairOfEve pair_watched_by(int m) {
    switch (m) {
        case 1: return {2, 3};
        case 2: return {1, 3};
        case 3: return {1, 2};
    }
    throw std::invalid_argument("eavesdropper index must be in 1..3");
}

}  // namespace

void NoiseModel::validate() const {
    if (!(sigma2_12 > 0.0) || !(sigma2_13 > 0.0) || !(sigma2_23 > 0.0))
        throw std::invalid_argument("distance-noise variances must be positive");
    if (!(sigma2_ang_1 >= 0.0) || !(sigma2_ang_2 >= 0.0) || !(sigma2_ang_3 >= 0.0))
        throw std::invalid_argument("angle-noise variances must be nonnegative");
    if (beacons < 1) throw std::invalid_argument("beacon count must be at least 1");
}

double NoiseModel::sigma2_pair(int i, int j) const {
    const int lo = std::min(i, j), hi = std::max(i, j);
    if (lo == 1 && hi == 2) return sigma2_12;
    if (lo == 1 && hi == 3) return sigma2_13;
    if (lo == 2 && hi == 3) return sigma2_23;
    throw std::invalid_argument("sigma2_pair: user indices must be distinct and in 1..3");
}

double NoiseModel::sigma2_angle(int m) const {
    switch (m) {
        case 1: return sigma2_ang_1;
        case 2: return sigma2_ang_2;
        case 3: return sigma2_ang_3;
    }
    throw std::invalid_argument("sigma2_angle: user index must be in 1..3");
}

ObservationSet observe(const TriangleSample& t, const NoiseModel& noise, RngStream& rng) {
    noise.validate();
    const double inv_j = 1.0 / static_cast<double>(noise.beacons);
    const double sd12 = std::sqrt(noise.sigma2_12 * inv_j);
    const double sd13 = std::sqrt(noise.sigma2_13 * inv_j);
    const double sd23 = std::sqrt(noise.sigma2_23 * inv_j);

    ObservationSet o;
    o.d12 = t.d12 + sd12 * rng.gaussian();
    o.d21 = t.d12 + sd12 * rng.gaussian();
    o.d13 = t.d13 + sd13 * rng.gaussian();
    o.d31 = t.d13 + sd13 * rng.gaussian();
    o.d23 = t.d23 + sd23 * rng.gaussian();
    o.d32 = t.d23 + sd23 * rng.gaussian();
    o.phi1 = t.phi1 + std::sqrt(noise.sigma2_ang_1 * inv_j) * rng.gaussian();
    o.phi2 = t.phi2 + std::sqrt(noise.sigma2_ang_2 * inv_j) * rng.gaussian();
    o.phi3 = t.phi3 + std::sqrt(noise.sigma2_ang_3 * inv_j) * rng.gaussian();
    return o;
}

double eve_estimate(double dt_mi, double dt_mj, double phit_m) {
    const double r = dt_mi * dt_mi + dt_mj * dt_mj -
                     2.0 * dt_mi * dt_mj * std::cos(phit_m);
    return std::sqrt(std::max(r, 0.0));
}

double eve_estimate_variance(const TriangleSample& t, const NoiseModel& noise,
                             int eavesdropper) {
    const auto [i, j] = pair_watched_by(eavesdropper);
    const double d_ij = t.side(i, j);
    const double d_im = t.side(i, eavesdropper);
    const double d_jm = t.side(j, eavesdropper);
    if (t.degenerate || d_ij <= 0.0 || d_im <= 0.0 || d_jm <= 0.0)
        throw std::domain_error("linearization undefined");

    const double s_im = noise.sigma2_pair(i, eavesdropper);
    const double s_jm = noise.sigma2_pair(j, eavesdropper);
    const double s_m = noise.sigma2_angle(eavesdropper);
    const double c = heron_const(t);
    const double d_ij2 = d_ij * d_ij;
    const double v = s_im + s_jm +
                     c * (s_m / (4.0 * d_ij2) -
                          s_im / (4.0 * d_ij2 * d_im * d_im) -
                          s_jm / (4.0 * d_ij2 * d_jm * d_jm));
    return std::max(v, 0.0);
}

double eve_estimate_variance_angle_form(const TriangleSample& t, const NoiseModel& noise,
                                        int eavesdropper) {
    const auto [i, j] = pair_watched_by(eavesdropper);
    const double d_ij = t.side(i, j);
    const double d_im = t.side(i, eavesdropper);
    const double d_jm = t.side(j, eavesdropper);
    if (t.degenerate || d_ij <= 0.0 || d_im <= 0.0 || d_jm <= 0.0)
        throw std::domain_error("linearization undefined");

    const double s_im = noise.sigma2_pair(i, eavesdropper);
    const double s_jm = noise.sigma2_pair(j, eavesdropper);
    const double s_m = noise.sigma2_angle(eavesdropper);
    const double phi = t.angle(eavesdropper);
    const double cp = std::cos(phi), sp = std::sin(phi);

    const double gi = d_im - d_jm * cp;  // sensitivity to the i-side noise
    const double gj = d_jm - d_im * cp;
    const double ga = d_im * d_jm * sp;
    const double v = (s_im * gi * gi + s_jm * gj * gj + s_m * ga * ga) / (d_ij * d_ij);
    return std::max(v, 0.0);
}

}  // namespace pairkey
