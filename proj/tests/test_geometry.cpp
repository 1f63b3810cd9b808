#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pairkey/geometry.hpp"

using namespace pairkey;
using std::numbers::pi;

TEST_CASE("mobility config rejects nonpositive variance") {
    MobilityConfig cfg;
    cfg.variance[1] = 0.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), "variance must be positive",
                         std::invalid_argument);
}

TEST_CASE("right triangle") {
    const auto t = triangle_from_positions({0, 0}, {1, 0}, {0, 1});
    CHECK(t.d12 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(t.d13 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(t.d23 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(t.phi1 == doctest::Approx(pi / 2).epsilon(1e-12));
    CHECK_FALSE(t.degenerate);
}

TEST_CASE("collinear positions are flagged degenerate with angles in {0, pi}") {
    const auto t = triangle_from_positions({0, 0}, {1, 0}, {2, 0});
    CHECK(t.degenerate);
    CHECK(t.phi2 == doctest::Approx(pi).epsilon(1e-12));
    CHECK(t.phi1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(t.phi3 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("coincident positions are degenerate") {
    const auto t = triangle_from_positions({0.5, 0.5}, {0.5, 0.5}, {1, 2});
    CHECK(t.degenerate);
}

TEST_CASE("equilateral triangle") {
    const double h = std::sqrt(3.0) / 2.0;
    const auto t = triangle_from_positions({0, 0}, {1, 0}, {0.5, h});
    CHECK(t.phi1 == doctest::Approx(pi / 3).epsilon(1e-12));
    CHECK(t.phi2 == doctest::Approx(pi / 3).epsilon(1e-12));
    CHECK(t.phi3 == doctest::Approx(pi / 3).epsilon(1e-12));
    CHECK(heron_const(t) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("heron constant is zero for collinear sides") {
    const auto t = triangle_from_positions({0, 0}, {1, 0}, {3, 0});
    CHECK(heron_const(t) == 0.0);
}

TEST_CASE("triangle_from_sides validates the triangle inequality") {
    CHECK_THROWS_AS(triangle_from_sides(1.0, 1.0, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(triangle_from_sides(-1.0, 1.0, 1.0), std::invalid_argument);
    const auto t = triangle_from_sides(3.0, 4.0, 5.0);
    CHECK(t.phi1 == doctest::Approx(pi / 2).epsilon(1e-12));
}

TEST_CASE("sampling is deterministic and mean/variance match the config") {
    MobilityConfig cfg;
    cfg.mean[2] = {3.0, -1.0};
    cfg.variance = {1.0, 2.0, 0.5};

    RngStream a(99, 0), b(99, 0);
    const auto pa = sample_positions(a, cfg);
    const auto pb = sample_positions(b, cfg);
    for (int u = 0; u < 3; ++u) {
        CHECK(pa[u][0] == pb[u][0]);
        CHECK(pa[u][1] == pb[u][1]);
    }
}

TEST_CASE("per-coordinate sample variance over 1e6 draws is within 1%") {
    MobilityConfig cfg;
    const int n = 1000000;
    double sum[2] = {0, 0}, sum2[2] = {0, 0};
    for (int k = 0; k < n; ++k) {
        RngStream rng(2024, static_cast<std::uint64_t>(k));
        const auto p = sample_positions(rng, cfg);
        for (int c = 0; c < 2; ++c) {
            sum[c] += p[0][c];
            sum2[c] += p[0][c] * p[0][c];
        }
    }
    for (int c = 0; c < 2; ++c) {
        const double mean = sum[c] / n;
        const double var = sum2[c] / n - mean * mean;
        CHECK(var > 0.99);
        CHECK(var < 1.01);
    }
}

TEST_CASE("random triangles: angle sum, law of cosines, heron vs shoelace") {
    MobilityConfig cfg;
    int checked = 0;
    for (int k = 0; k < 20000; ++k) {
        RngStream rng(5150, static_cast<std::uint64_t>(k));
        const auto p = sample_positions(rng, cfg);
        const auto t = triangle_from_positions(p[0], p[1], p[2]);
        if (t.degenerate) continue;
        ++checked;

        CHECK(t.phi1 + t.phi2 + t.phi3 == doctest::Approx(pi).epsilon(1e-9));

        // reconstruct each side from the opposite angle
        const double d23 = std::sqrt(t.d12 * t.d12 + t.d13 * t.d13 -
                                     2 * t.d12 * t.d13 * std::cos(t.phi1));
        const double d13 = std::sqrt(t.d12 * t.d12 + t.d23 * t.d23 -
                                     2 * t.d12 * t.d23 * std::cos(t.phi2));
        const double d12 = std::sqrt(t.d13 * t.d13 + t.d23 * t.d23 -
                                     2 * t.d13 * t.d23 * std::cos(t.phi3));
        CHECK(d23 == doctest::Approx(t.d23).epsilon(1e-9));
        CHECK(d13 == doctest::Approx(t.d13).epsilon(1e-9));
        CHECK(d12 == doctest::Approx(t.d12).epsilon(1e-9));

        // side() is symmetric by construction
        CHECK(t.side(1, 2) == t.side(2, 1));
        CHECK(t.side(3, 1) == t.side(1, 3));

        const double cross = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) -
                             (p[1][1] - p[0][1]) * (p[2][0] - p[0][0]);
        const double area2_16 = 4.0 * cross * cross;  // 16 * (cross/2)^2
        const double heron = heron_const(t);
        const double scale = std::max({t.d12, t.d13, t.d23});
        const double scale4 = scale * scale * scale * scale;
        if (heron > 1e-5 * scale4) {
            // Well-conditioned regime: full relative agreement.
            CHECK(std::abs(heron - area2_16) <= 1e-9 * area2_16);
        } else {
            // Needle triangles: the side lengths round away the area
            // information, so only a scale-normalized absolute bound is
            // meaningful in double precision.
            CHECK(std::abs(heron - area2_16) <= 1e-8 * scale4);
        }
    }
    CHECK(checked > 19000);
}
