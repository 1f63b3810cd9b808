#include "pairkey/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pairkey/rates.hpp"
#include "pairkey/rng.hpp"

namespace pairkey {

namespace {

double rel_delta(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale < 1e-300) return 0.0;
    return std::abs(a - b) / scale;
}

double log_uniform(RngStream& rng, double lo, double hi) {
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * rng.uniform());
}

}  // namespace

Eigen::MatrixXd slot_covariance(double d, double sigma2, double sigma_hat2,
                                double sp2_fwd, double sp2_bwd, std::int64_t beacons) {
    const double j = static_cast<double>(beacons);
    const double u = d * d;
    const double s = sigma2 / j;
    const double h = sigma_hat2 / j;
    const double qf = sp2_fwd / j;
    const double qb = sp2_bwd / j;

    Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(5, 5, u);
    cov(0, 0) = u + s + qf;
    cov(1, 1) = u + s + qb;
    cov(2, 2) = u + s;
    cov(3, 3) = u + s;
    cov(4, 4) = u + h;
    cov(0, 2) = cov(2, 0) = u + s;  // S_ij shares the dt_ij noise
    cov(1, 3) = cov(3, 1) = u + s;
    return cov;
}

double oracle_unlimited_rate(double d, double sigma2, double sigma_hat2,
                             std::int64_t beacons) {
    const Eigen::MatrixXd cov = slot_covariance(d, sigma2, sigma_hat2, 0.0, 0.0, beacons);
    const double gain = gaussian_mi(cov, {2}, {3});
    const double leak = gaussian_mi(cov, {2}, {4});
    return std::max(0.0, gain - leak);
}

double oracle_forward_term(double d, double sigma2, double sigma_hat2, double sp2_fwd,
                           std::int64_t beacons) {
    if (std::isinf(sp2_fwd)) return 0.0;
    const Eigen::MatrixXd cov =
        slot_covariance(d, sigma2, sigma_hat2, sp2_fwd, 0.0, beacons);
    const double gain = gaussian_mi(cov, {0}, {3});
    const double leak = gaussian_mi(cov, {0}, {4});
    return std::max(0.0, gain - leak);
}

double oracle_backward_term(double d, double sigma2, double sigma_hat2, double sp2_fwd,
                            double sp2_bwd, std::int64_t beacons) {
    if (std::isinf(sp2_bwd)) return 0.0;
    if (sp2_fwd == 0.0) return 0.0;  // conditioning on the observation itself
    if (std::isinf(sp2_fwd)) {
        // The forward disclosure carries nothing; the conditioning drops out.
        const Eigen::MatrixXd cov =
            slot_covariance(d, sigma2, sigma_hat2, 0.0, sp2_bwd, beacons);
        const double gain = gaussian_mi(cov, {1}, {2});
        const double leak = gaussian_mi(cov, {1}, {4});
        return std::max(0.0, gain - leak);
    }
    const Eigen::MatrixXd cov =
        slot_covariance(d, sigma2, sigma_hat2, sp2_fwd, sp2_bwd, beacons);
    const double gain = gaussian_conditional_mi(cov, {1}, {2}, {0});
    const double leak = gaussian_conditional_mi(cov, {1}, {4}, {0});
    return std::max(0.0, gain - leak);
}

double oracle_public_rate_summand(double d, double sigma2, double sp2,
                                  std::int64_t beacons) {
    if (std::isinf(sp2)) return 0.0;
    const Eigen::MatrixXd cov = slot_covariance(d, sigma2, 0.0, sp2, 0.0, beacons);
    return gaussian_conditional_mi(cov, {0}, {2}, {3});
}

bool SelfCheckReport::pass() const {
    return max_delta_unlimited < tol_bits && max_delta_forward < tol_bits &&
           max_delta_backward < tol_bits && max_delta_constraint < tol_bits &&
           max_rel_eve_variance < tol_rel && max_rel_heron < tol_rel;
}

std::string SelfCheckReport::summary() const {
    std::ostringstream os;
    os << "selfcheck over " << n_draws << " draws: "
       << "|d_unlimited|<=" << max_delta_unlimited << " bits, "
       << "|d_forward|<=" << max_delta_forward << " bits, "
       << "|d_backward|<=" << max_delta_backward << " bits, "
       << "|d_constraint|<=" << max_delta_constraint << " bits, "
       << "eve-variance forms rel<=" << max_rel_eve_variance << ", "
       << "heron vs area rel<=" << max_rel_heron << " -> "
       << (pass() ? "pass" : "FAIL");
    return os.str();
}

SelfCheckReport run_selfcheck(std::int64_t n_draws, std::uint64_t seed) {
    SelfCheckReport rep;
    rep.n_draws = n_draws;

    for (std::int64_t k = 0; k < n_draws; ++k) {
        RngStream rng(seed, static_cast<std::uint64_t>(k));

        const double d = log_uniform(rng, 0.2, 5.0);
        const double sigma2 = log_uniform(rng, 0.01, 1.0);
        double sigma_hat2 = log_uniform(rng, 1e-4, 4.0);
        if (k % 7 == 0) sigma_hat2 = sigma2;       // boundary of the clamp
        if (k % 11 == 0) sigma_hat2 = 0.5 * sigma2;  // clamped region
        double sp2_fwd = log_uniform(rng, 0.01, 100.0);
        double sp2_bwd = log_uniform(rng, 0.01, 100.0);
        if (k % 16 == 5) sp2_fwd = kUnlimited;
        if (k % 16 == 9) sp2_bwd = kUnlimited;
        const std::int64_t beacons = 1 + static_cast<std::int64_t>(rng.uniform() * 100.0);

        rep.max_delta_unlimited = std::max(
            rep.max_delta_unlimited,
            std::abs(unlimited_rate_integrand(d, sigma2, sigma_hat2, beacons) -
                     oracle_unlimited_rate(d, sigma2, sigma_hat2, beacons)));
        rep.max_delta_forward = std::max(
            rep.max_delta_forward,
            std::abs(rate_limited_forward_term(d, sigma2, sigma_hat2, sp2_fwd, beacons) -
                     oracle_forward_term(d, sigma2, sigma_hat2, sp2_fwd, beacons)));
        rep.max_delta_backward = std::max(
            rep.max_delta_backward,
            std::abs(rate_limited_backward_term(d, sigma2, sigma_hat2, sp2_fwd, sp2_bwd,
                                                beacons) -
                     oracle_backward_term(d, sigma2, sigma_hat2, sp2_fwd, sp2_bwd,
                                          beacons)));
        rep.max_delta_constraint = std::max(
            rep.max_delta_constraint,
            std::abs(public_rate_summand(d, sigma2, sp2_fwd, beacons) -
                     oracle_public_rate_summand(d, sigma2, sp2_fwd, beacons)));
    }

    // Dual-form eavesdropper variance and Heron-vs-area on random geometry.
    MobilityConfig mobility;
    for (std::int64_t k = 0; k < n_draws; ++k) {
        RngStream rng(seed ^ 0x9e3779b97f4a7c15ull, static_cast<std::uint64_t>(k));
        const auto pos = sample_positions(rng, mobility);
        const TriangleSample t = triangle_from_positions(pos[0], pos[1], pos[2]);
        if (t.degenerate) continue;

        NoiseModel noise;
        noise.sigma2_12 = log_uniform(rng, 0.005, 1.0);
        noise.sigma2_13 = log_uniform(rng, 0.005, 1.0);
        noise.sigma2_23 = log_uniform(rng, 0.005, 1.0);
        noise.sigma2_ang_1 = log_uniform(rng, 0.005, 1.0);
        noise.sigma2_ang_2 = log_uniform(rng, 0.005, 1.0);
        noise.sigma2_ang_3 = log_uniform(rng, 0.005, 1.0);

        for (int m = 1; m <= 3; ++m) {
            rep.max_rel_eve_variance =
                std::max(rep.max_rel_eve_variance,
                         rel_delta(eve_estimate_variance(t, noise, m),
                                   eve_estimate_variance_angle_form(t, noise, m)));
        }

        // Semi-perimeter form of the same sides, in extended precision: for
        // needle triangles the straight formula loses all relative accuracy
        // in double, so the oracle must out-resolve the function under test.
        const long double a = t.d12, b = t.d13, c = t.d23;
        const long double s = (a + b + c) / 2.0L;
        const long double heron_ref = 16.0L * (s * (s - a) * (s - b) * (s - c));
        rep.max_rel_heron = std::max(
            rep.max_rel_heron,
            rel_delta(heron_const(t), static_cast<double>(heron_ref)));
    }

    return rep;
}

}  // namespace pairkey
