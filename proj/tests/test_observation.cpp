#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pairkey/observation.hpp"

using namespace pairkey;
using std::numbers::pi;

namespace {

TriangleSample fixed_triangle() {
    RngStream rng(314159, 0);
    MobilityConfig cfg;
    const auto p = sample_positions(rng, cfg);
    const auto t = triangle_from_positions(p[0], p[1], p[2]);
    REQUIRE_FALSE(t.degenerate);
    return t;
}

}  // namespace

TEST_CASE("noise model validation") {
    NoiseModel noise;
    noise.sigma2_12 = 0.0;
    CHECK_THROWS_AS(noise.validate(), std::invalid_argument);
    noise.sigma2_12 = 0.1;
    noise.beacons = 0;
    CHECK_THROWS_AS(noise.validate(), std::invalid_argument);
    noise.beacons = 1;
    noise.sigma2_ang_2 = -0.1;
    CHECK_THROWS_AS(noise.validate(), std::invalid_argument);
}

TEST_CASE("huge beacon batches reproduce the true values exactly") {
    const auto t = fixed_triangle();
    NoiseModel noise;
    noise.sigma2_12 = noise.sigma2_13 = noise.sigma2_23 = 1e-290;
    noise.sigma2_ang_1 = noise.sigma2_ang_2 = noise.sigma2_ang_3 = 1e-290;
    noise.beacons = 1000000000000000000LL;  // sigma2 / J < 1e-300
    RngStream rng(1, 0);
    const auto o = observe(t, noise, rng);
    CHECK(o.d12 == t.d12);
    CHECK(o.d21 == t.d12);
    CHECK(o.d13 == t.d13);
    CHECK(o.d31 == t.d13);
    CHECK(o.d23 == t.d23);
    CHECK(o.d32 == t.d23);
    CHECK(o.phi1 == t.phi1);
    CHECK(o.phi2 == t.phi2);
    CHECK(o.phi3 == t.phi3);
}

TEST_CASE("observation noise variance matches sigma2/J in both directions") {
    const auto t = fixed_triangle();
    NoiseModel noise;
    noise.sigma2_12 = 0.1;
    const int n = 1000000;
    double s12 = 0, s12_2 = 0, s21 = 0, s21_2 = 0;
    for (int k = 0; k < n; ++k) {
        RngStream rng(777, static_cast<std::uint64_t>(k));
        const auto o = observe(t, noise, rng);
        const double e12 = o.d12 - t.d12;
        const double e21 = o.d21 - t.d12;
        s12 += e12;
        s12_2 += e12 * e12;
        s21 += e21;
        s21_2 += e21 * e21;
    }
    const double var12 = s12_2 / n - (s12 / n) * (s12 / n);
    const double var21 = s21_2 / n - (s21 / n) * (s21 / n);
    CHECK(var12 > 0.099);
    CHECK(var12 < 0.101);
    CHECK(var21 > 0.099);
    CHECK(var21 < 0.101);
}

TEST_CASE("eavesdropper reconstruction basics") {
    // noiseless inputs reproduce the opposite side exactly
    const auto t = fixed_triangle();
    CHECK(eve_estimate(t.d13, t.d23, t.phi3) == doctest::Approx(t.d12).epsilon(1e-12));
    CHECK(eve_estimate(1.0, 1.0, 0.0) == 0.0);
    CHECK(eve_estimate(1.0, 1.0, pi / 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    // large noise can push the radicand negative; the estimator stays total
    CHECK(eve_estimate(1.0, 1.0, -0.1) >= 0.0);
}

TEST_CASE("estimate variance: equilateral closed form") {
    const double h = std::sqrt(3.0) / 2.0;
    const auto t = triangle_from_positions({0, 0}, {1, 0}, {0.5, h});
    NoiseModel noise;
    noise.sigma2_12 = noise.sigma2_13 = noise.sigma2_23 = 0.1;
    noise.sigma2_ang_1 = noise.sigma2_ang_2 = noise.sigma2_ang_3 = 0.2;
    // sigma0^2/2 + (3/4) a^2 sigma_m^2 with a = 1
    const double expected = 0.05 + 0.75 * 0.2;
    for (int m = 1; m <= 3; ++m) {
        CHECK(eve_estimate_variance(t, noise, m) ==
              doctest::Approx(expected).epsilon(1e-12));
        CHECK(eve_estimate_variance_angle_form(t, noise, m) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("estimate variance: noiseless eavesdropper sees zero") {
    const auto t = fixed_triangle();
    NoiseModel noise;
    noise.sigma2_13 = 1e-300;
    noise.sigma2_23 = 1e-300;
    noise.sigma2_ang_3 = 0.0;
    CHECK(eve_estimate_variance(t, noise, 3) <= 3e-300);
}

TEST_CASE("estimate variance rejects degenerate triangles") {
    const auto t = triangle_from_positions({0, 0}, {1, 0}, {2, 0});
    NoiseModel noise;
    CHECK_THROWS_WITH_AS(eve_estimate_variance(t, noise, 3), "linearization undefined",
                         std::domain_error);
    CHECK_THROWS_AS(eve_estimate_variance_angle_form(t, noise, 3), std::domain_error);
}

TEST_CASE("estimate variance approaches the two-sigma sum as the triangle thins") {
    NoiseModel noise;
    noise.sigma2_12 = 0.04;
    noise.sigma2_13 = 0.02;
    noise.sigma2_23 = 0.03;
    noise.sigma2_ang_1 = noise.sigma2_ang_2 = noise.sigma2_ang_3 = 0.5;
    const auto thin = triangle_from_positions({0, 0}, {2, 1e-5}, {1, 1e-5});
    REQUIRE_FALSE(thin.degenerate);
    // pair {1,2} watched by user 3: as the area vanishes the geometry factor
    // drops out and only the two distance noises remain
    CHECK(eve_estimate_variance(thin, noise, 3) ==
          doctest::Approx(noise.sigma2_13 + noise.sigma2_23).epsilon(1e-6));
}

TEST_CASE("dual forms of the estimate variance agree on random geometry") {
    MobilityConfig cfg;
    int checked = 0;
    for (int k = 0; k < 10000; ++k) {
        RngStream rng(8686, static_cast<std::uint64_t>(k));
        const auto p = sample_positions(rng, cfg);
        const auto t = triangle_from_positions(p[0], p[1], p[2]);
        if (t.degenerate) continue;
        NoiseModel noise;
        noise.sigma2_12 = 0.01 + rng.uniform();
        noise.sigma2_13 = 0.01 + rng.uniform();
        noise.sigma2_23 = 0.01 + rng.uniform();
        noise.sigma2_ang_1 = rng.uniform();
        noise.sigma2_ang_2 = rng.uniform();
        noise.sigma2_ang_3 = rng.uniform();
        for (int m = 1; m <= 3; ++m) {
            const double a = eve_estimate_variance(t, noise, m);
            const double b = eve_estimate_variance_angle_form(t, noise, m);
            CHECK(std::abs(a - b) <= 1e-9 * std::max({a, b, 1e-12}));
            CHECK(a >= 0.0);
        }
        ++checked;
    }
    CHECK(checked > 9500);
}

TEST_CASE("linearization: exact-estimator error variance approaches sigma_hat2/J") {
    const auto t = fixed_triangle();
    NoiseModel noise;  // all 0.1
    noise.beacons = 10000;
    const double sh2 = eve_estimate_variance(t, noise, 3);
    const double predicted = sh2 / static_cast<double>(noise.beacons);

    const int n = 200000;
    double sum = 0, sum2 = 0;
    for (int k = 0; k < n; ++k) {
        RngStream rng(4242, static_cast<std::uint64_t>(k));
        const auto o = observe(t, noise, rng);
        const double err = eve_estimate(o.d31, o.d32, o.phi3) - t.d12;
        sum += err;
        sum2 += err * err;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(var - predicted) < 0.1 * predicted);
    // linearized error is unbiased up to higher-order terms
    const double mean_budget =
        3.0 * std::sqrt(predicted / n) + 1e-3;
    CHECK(std::abs(mean) < mean_budget);
}
