#include "pairkey/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pairkey {

namespace {

constexpr double kDegenerateTol = 1e-12;

double cos_angle(double adjacent1, double adjacent2, double opposite) {
    if (adjacent1 <= 0.0 || adjacent2 <= 0.0) return 1.0;  // angle collapses to 0
    const double c =
        (adjacent1 * adjacent1 + adjacent2 * adjacent2 - opposite * opposite) /
        (2.0 * adjacent1 * adjacent2);
    return std::clamp(c, -1.0, 1.0);
}

TriangleSample from_sides_unchecked(double d12, double d13, double d23) {
    TriangleSample t;
    t.d12 = d12;
    t.d13 = d13;
    t.d23 = d23;
    t.phi1 = std::acos(cos_angle(d12, d13, d23));
    t.phi2 = std::acos(cos_angle(d12, d23, d13));
    t.phi3 = std::acos(cos_angle(d13, d23, d12));
    const double scale = std::max({d12, d13, d23});
    const double smallest = std::min({d12, d13, d23});
    t.degenerate = scale <= 0.0 || smallest <= kDegenerateTol * scale ||
                   heron_const(t) <= kDegenerateTol * scale * scale * scale * scale;
    return t;
}

}  // namespace

void MobilityConfig::validate() const {
    for (double v : variance) {
        if (!(v > 0.0)) throw std::invalid_argument("variance must be positive");
    }
}

double TriangleSample::side(int i, int j) const {
    const int lo = std::min(i, j), hi = std::max(i, j);
    if (lo == 1 && hi == 2) return d12;
    if (lo == 1 && hi == 3) return d13;
    if (lo == 2 && hi == 3) return d23;
    throw std::invalid_argument("side: user indices must be distinct and in 1..3");
}

double TriangleSample::angle(int m) const {
    switch (m) {
        case 1: return phi1;
        case 2: return phi2;
        case 3: return phi3;
    }
    throw std::invalid_argument("angle: user index must be in 1..3");
}

std::array<Vec2, 3> sample_positions(RngStream& rng, const MobilityConfig& config) {
    config.validate();
    std::array<Vec2, 3> p;
    for (int u = 0; u < 3; ++u) {
        const double sd = std::sqrt(config.variance[u]);
        p[u][0] = config.mean[u][0] + sd * rng.gaussian();
        p[u][1] = config.mean[u][1] + sd * rng.gaussian();
    }
    return p;
}

TriangleSample triangle_from_positions(const Vec2& p1, const Vec2& p2, const Vec2& p3) {
    const double d12 = std::hypot(p1[0] - p2[0], p1[1] - p2[1]);
    const double d13 = std::hypot(p1[0] - p3[0], p1[1] - p3[1]);
    const double d23 = std::hypot(p2[0] - p3[0], p2[1] - p3[1]);
    return from_sides_unchecked(d12, d13, d23);
}

TriangleSample triangle_from_sides(double d12, double d13, double d23) {
    if (!(d12 >= 0.0) || !(d13 >= 0.0) || !(d23 >= 0.0))
        throw std::invalid_argument("sides must be nonnegative");
    const double scale = std::max({d12, d13, d23});
    const double tol = kDegenerateTol * scale;
    if (d12 > d13 + d23 + tol || d13 > d12 + d23 + tol || d23 > d12 + d13 + tol)
        throw std::invalid_argument("sides violate the triangle inequality");
    return from_sides_unchecked(d12, d13, d23);
}

double heron_const(const TriangleSample& t) {
    double a = t.d12, b = t.d13, c = t.d23;
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    const double prod =
        (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    return std::max(prod, 0.0);
}

}  // namespace pairkey
