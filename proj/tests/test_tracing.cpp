#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pairkey/tracing.hpp"

using namespace pairkey;

namespace {

NoiseSweepSpec sweep_spec(std::vector<double> grid, std::int64_t n, std::uint64_t seed) {
    NoiseSweepSpec spec;
    spec.grid = std::move(grid);
    spec.mc.n_samples = n;
    spec.mc.seed = seed;
    return spec;
}

TraceSpec paper_trace_spec(std::int64_t n, std::uint64_t seed) {
    TraceSpec spec;
    spec.budgets = PublicRates{0.5, 0.2, 0.8};
    spec.mc.n_samples = n;
    spec.mc.seed = seed;
    spec.refine_samples = 0;
    spec.split_grid = default_split_grid();
    return spec;
}

}  // namespace

TEST_CASE("symmetric noise keeps the 13 and 23 bounds together") {
    const auto rows = sweep_pair_noise(sweep_spec({0.1}, 100000, 9));
    REQUIRE(rows.size() == 1);
    const auto& row = rows[0];
    const double d = std::abs(row.inner[1].mean - row.inner[2].mean);
    const double se =
        std::sqrt(row.inner[1].std_error * row.inner[1].std_error +
                  row.inner[2].std_error * row.inner[2].std_error);
    CHECK(d <= 3.0 * se);
    // outer bounds coincide up to the same Monte-Carlo wobble
    CHECK(std::abs(row.outer.rates.r13 - row.outer.rates.r23) <=
          3.0 * (row.outer.rate_std_error[1] + row.outer.rate_std_error[2]));
}

TEST_CASE("pair-noise sweep reproduces the published trends") {
    const auto rows = sweep_pair_noise(
        sweep_spec({0.05, 0.1, 0.2, 0.3, 0.4, 0.5}, 50000, 10));
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        CHECK(rows[i + 1].inner[0].mean < rows[i].inner[0].mean);   // R12 falls
        CHECK(rows[i + 1].inner[1].mean > rows[i].inner[1].mean);   // R13 grows
        CHECK(rows[i + 1].outer.rates.r12 < rows[i].outer.rates.r12);
        CHECK(rows[i + 1].outer.rates.r13 > rows[i].outer.rates.r13);
    }
    const double outer_rates0[3] = {rows[0].outer.rates.r12, rows[0].outer.rates.r13,
                                    rows[0].outer.rates.r23};
    for (const auto& row : rows) {
        const double outer_rates[3] = {row.outer.rates.r12, row.outer.rates.r13,
                                       row.outer.rates.r23};
        for (int p = 0; p < 3; ++p) CHECK(row.inner[p].mean <= outer_rates[p] + 1e-12);
    }
    (void)outer_rates0;
}

TEST_CASE("axis parsing") {
    CHECK(parse_axis_pair("R12-R13") == AxisPair::R12_R13);
    CHECK(parse_axis_pair("R12-R23") == AxisPair::R12_R23);
    CHECK(parse_axis_pair("R13-R23") == AxisPair::R13_R23);
    CHECK_THROWS_AS(parse_axis_pair("R21-R13"), std::invalid_argument);
}

TEST_CASE("unlimited budgets with a zero split hit the unlimited-channel corner") {
    TraceSpec spec;
    spec.budgets = PublicRates{};  // unlimited
    spec.mc.n_samples = 5000;
    spec.mc.seed = 21;
    spec.refine_samples = 0;
    spec.split_grid = {0.0, 1.0, kUnlimited};
    const ProjectedRegion region = trace_projection(spec);
    REQUIRE_FALSE(region.points.empty());

    const auto inner =
        inner_bound_unlimited(spec.mobility, spec.noise, spec.mc);
    bool corner_found = false;
    for (const auto& pt : region.points)
        corner_found =
            corner_found || (pt.axis1 == inner[0].mean && pt.axis2 == inner[1].mean &&
                             pt.third_best == inner[2].mean);
    CHECK(corner_found);
    // nothing beats the unlimited corner on either axis
    for (const auto& pt : region.points) {
        CHECK(pt.axis1 <= inner[0].mean + 1e-12);
        CHECK(pt.axis2 <= inner[1].mean + 1e-12);
    }
}

TEST_CASE("zero budgets leave only the origin") {
    TraceSpec spec;
    spec.budgets = PublicRates{0.0, 0.0, 0.0};
    spec.mc.n_samples = 5000;
    spec.mc.seed = 22;
    spec.refine_samples = 0;
    spec.split_grid = {1.0, kUnlimited};
    const ProjectedRegion region = trace_projection(spec);
    REQUIRE(region.points.size() == 1);
    CHECK(region.points[0].axis1 == 0.0);
    CHECK(region.points[0].axis2 == 0.0);
    CHECK(region.points[0].frontier);
}

TEST_CASE("paper budgets give a non-rectangular frontier") {
    const ProjectedRegion region = trace_projection(paper_trace_spec(4000, 23));
    REQUIRE(region.n_feasible > 0);

    std::vector<const RegionPoint*> frontier;
    for (const auto& pt : region.points)
        if (pt.frontier) frontier.push_back(&pt);
    REQUIRE(frontier.size() >= 2);

    // mutually non-dominated
    for (const auto* a : frontier)
        for (const auto* b : frontier) {
            if (a == b) continue;
            const bool dominates = a->axis1 >= b->axis1 && a->axis2 >= b->axis2 &&
                                   (a->axis1 > b->axis1 || a->axis2 > b->axis2);
            CHECK_FALSE(dominates);
        }

    // distinct R12 values exist on the frontier, and over the feasible set
    // the best R12 at R13 = 0 beats the R12 available at the largest R13
    // (the region is not a rectangle)
    double max_a1 = 0, max_a2 = 0, a1_at_max_a2 = 0, best_a1_at_zero_a2 = -1;
    for (const auto& pt : region.points) {
        max_a1 = std::max(max_a1, pt.axis1);
        if (pt.axis2 > max_a2) {
            max_a2 = pt.axis2;
            a1_at_max_a2 = pt.axis1;
        }
        if (pt.axis2 == 0.0) best_a1_at_zero_a2 = std::max(best_a1_at_zero_a2, pt.axis1);
    }
    CHECK(max_a1 > 0.0);
    CHECK(best_a1_at_zero_a2 > a1_at_max_a2);
}

TEST_CASE("emitted points re-validate through the point evaluator") {
    TraceSpec spec = paper_trace_spec(3000, 24);
    spec.split_grid = {0.1, 10.0, kUnlimited};
    const ProjectedRegion region = trace_projection(spec);
    REQUIRE_FALSE(region.points.empty());

    int checked = 0;
    for (const auto& pt : region.points) {
        if (checked >= 5) break;
        const auto point = rate_limited_point(spec.mobility, spec.noise, pt.split,
                                              spec.budgets, spec.mc);
        CHECK(point.feasible);
        for (int p = 0; p < 3; ++p)
            CHECK(point.rates[p].mean == pt.detail.rates[p].mean);
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("grid refinement never shrinks the feasible set") {
    TraceSpec coarse = paper_trace_spec(2000, 25);
    coarse.split_grid = {0.1, kUnlimited};
    TraceSpec fine = coarse;
    fine.split_grid = {0.1, 1.0, kUnlimited};

    const ProjectedRegion a = trace_projection(coarse);
    const ProjectedRegion b = trace_projection(fine);
    CHECK(b.n_feasible >= a.n_feasible);
    for (const auto& pa : a.points) {
        bool present = false;
        for (const auto& pb : b.points)
            present = present ||
                      (pb.axis1 == pa.axis1 && pb.axis2 == pa.axis2 &&
                       pb.third_best >= pa.third_best);
        CHECK(present);
    }
}

TEST_CASE("frontier refinement re-evaluates at the requested precision") {
    TraceSpec spec = paper_trace_spec(2000, 26);
    spec.split_grid = {0.1, 10.0, kUnlimited};
    spec.refine_samples = 8000;
    const ProjectedRegion region = trace_projection(spec);
    bool any = false;
    for (const auto& pt : region.points) {
        if (!pt.frontier) {
            CHECK_FALSE(pt.has_refined);
            continue;
        }
        REQUIRE(pt.has_refined);
        any = true;
        CHECK(pt.refined.rates[0].n_samples == 8000);
        // refined values agree with the coarse ones within Monte-Carlo error
        for (int p = 0; p < 3; ++p)
            CHECK(std::abs(pt.refined.rates[p].mean - pt.detail.rates[p].mean) <=
                  5.0 * (pt.detail.rates[p].std_error + pt.refined.rates[p].std_error) +
                      1e-12);
    }
    CHECK(any);
}

TEST_CASE("empty feasible set comes back with a diagnostic") {
    TraceSpec spec = paper_trace_spec(2000, 27);
    spec.budgets = PublicRates{0.0, 0.0, 0.0};
    spec.split_grid = {0.1, 1.0};  // nothing silent available
    const ProjectedRegion region = trace_projection(spec);
    CHECK(region.points.empty());
    CHECK_FALSE(region.diagnostic.empty());
}
