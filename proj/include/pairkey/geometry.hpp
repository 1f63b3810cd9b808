#pragma once

#include <array>

#include "pairkey/rng.hpp"

namespace pairkey {

using Vec2 = std::array<double, 2>;

// Per-slot user positions: independent 2-D Gaussians, circularly symmetric
// (both coordinates of a user share one scalar variance).
struct MobilityConfig {
    std::array<Vec2, 3> mean{{{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}};
    std::array<double, 3> variance{1.0, 1.0, 1.0};

    void validate() const;  // throws std::invalid_argument on variance <= 0
};

// One slot's triangle: pairwise distances and interior angles (radians),
// phi1/phi2/phi3 at users 1/2/3. Collinear or coincident positions are
// flagged degenerate and carry angles in {0, pi}.
struct TriangleSample {
    double d12 = 0.0, d13 = 0.0, d23 = 0.0;
    double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;
    bool degenerate = false;

    // Side between users i and j (1-based), symmetric in i, j.
    double side(int i, int j) const;
    double angle(int m) const;
};

// Draws the three user positions for one slot (6 normals consumed).
std::array<Vec2, 3> sample_positions(RngStream& rng, const MobilityConfig& config);

TriangleSample triangle_from_positions(const Vec2& p1, const Vec2& p2, const Vec2& p3);

// Builds a sample from side lengths alone; throws std::invalid_argument if
// the triangle inequality fails beyond a 1e-12 relative tolerance.
TriangleSample triangle_from_sides(double d12, double d13, double d23);

// (a+b+c)(a+b-c)(b+c-a)(a+c-b) = 16 * squared area, clamped at 0. Factors
// are grouped per Kahan's ordering so needle triangles keep full relative
// accuracy.
double heron_const(const TriangleSample& t);

}  // namespace pairkey
