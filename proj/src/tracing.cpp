#include "pairkey/tracing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace pairkey {

std::vector<NoiseSweepRow> sweep_pair_noise(const NoiseSweepSpec& spec) {
    if (spec.grid.empty()) throw std::invalid_argument("sweep grid must be nonempty");
    std::vector<NoiseSweepRow> rows;
    rows.reserve(spec.grid.size());
    for (double sigma2_12 : spec.grid) {
        NoiseModel noise = spec.noise;
        noise.sigma2_12 = sigma2_12;
        const GeometryCache cache = build_geometry_cache(spec.mobility, noise, spec.mc);
        NoiseSweepRow row;
        row.sigma2_12 = sigma2_12;
        row.inner = inner_bound_unlimited(cache, noise);
        row.outer = outer_bound_detailed(cache, noise);
        row.n_excluded = cache.n_excluded;
        rows.push_back(std::move(row));
    }
    return rows;
}

AxisPair parse_axis_pair(std::string_view text) {
    if (text == "R12-R13") return AxisPair::R12_R13;
    if (text == "R12-R23") return AxisPair::R12_R23;
    if (text == "R13-R23") return AxisPair::R13_R23;
    throw std::invalid_argument("unknown axes: expected R12-R13, R12-R23 or R13-R23");
}

const char* axis_pair_name(AxisPair axes) {
    switch (axes) {
        case AxisPair::R12_R13: return "R12-R13";
        case AxisPair::R12_R23: return "R12-R23";
        case AxisPair::R13_R23: return "R13-R23";
    }
    return "?";
}

std::vector<double> default_split_grid() {
    std::vector<double> grid;
    for (int k = 0; k < 6; ++k) grid.push_back(std::pow(10.0, -3.0 + 1.2 * k));
    grid.push_back(kUnlimited);
    return grid;
}

namespace {

struct AxisMap {
    int a1, a2, third;  // pair indices 0={1,2}, 1={1,3}, 2={2,3}
};

AxisMap axis_map(AxisPair axes) {
    switch (axes) {
        case AxisPair::R12_R13: return {0, 1, 2};
        case AxisPair::R12_R23: return {0, 2, 1};
        case AxisPair::R13_R23: return {1, 2, 0};
    }
    throw std::invalid_argument("bad axis pair");
}

SplitNoise split_from_indices(const std::vector<double>& g, int i12, int i21, int i13,
                              int i31, int i23, int i32) {
    return SplitNoise{g[i12], g[i21], g[i13], g[i31], g[i23], g[i32]};
}

}  // namespace

ProjectedRegion trace_projection(const TraceSpec& spec) {
    if (spec.split_grid.empty())
        throw std::invalid_argument("split grid must be nonempty");
    for (double v : spec.split_grid)
        if (!(v >= 0.0)) throw std::invalid_argument("split grid values must be nonnegative");
    spec.budgets.validate();

    const GeometryCache cache = build_geometry_cache(spec.mobility, spec.noise, spec.mc);
    const std::vector<double>& grid = spec.split_grid;
    const int g = static_cast<int>(grid.size());
    const int threads = spec.mc.n_threads;

    // Rates of a pair depend only on that pair's two split variances, and a
    // user's constraint side only on its own two; tabulating those reductions
    // makes the 6-D sweep a table walk while staying bit-identical to a
    // direct rate_limited_point evaluation of any combination.
    auto reduce_one = [&](auto&& sample_fn) {
        return block_reduce(
            cache.size(), 1,
            [&](std::int64_t idx, double* out) {
                const PairGeometry& geo = cache.samples[static_cast<std::size_t>(idx)];
                if (!geo.valid) return false;
                out[0] = sample_fn(geo);
                return true;
            },
            threads, cache.mc.batch_size)[0];
    };

    std::array<std::vector<BoundEstimate>, 3> rate_tab;
    for (int p = 0; p < 3; ++p) {
        rate_tab[p].resize(static_cast<std::size_t>(g) * g);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j)
                rate_tab[p][static_cast<std::size_t>(i) * g + j] =
                    reduce_one([&](const PairGeometry& geo) {
                        return pair_rate_sample(geo, p, spec.noise, grid[i], grid[j]);
                    });
    }

    std::array<std::vector<BoundEstimate>, 3> user_tab;
    for (int u = 0; u < 3; ++u) {
        user_tab[u].resize(static_cast<std::size_t>(g) * g);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) {
                SplitNoise s;
                switch (u) {
                    case 0: s.sp2_12 = grid[i]; s.sp2_13 = grid[j]; break;
                    case 1: s.sp2_21 = grid[i]; s.sp2_23 = grid[j]; break;
                    case 2: s.sp2_31 = grid[i]; s.sp2_32 = grid[j]; break;
                }
                user_tab[u][static_cast<std::size_t>(i) * g + j] =
                    reduce_one([&](const PairGeometry& geo) {
                        return user_lhs_sample(geo, u, spec.noise, s);
                    });
            }
    }

    const AxisMap ax = axis_map(spec.axes);
    const double budget[3] = {spec.budgets.r1, spec.budgets.r2, spec.budgets.r3};

    struct Best {
        double third;
        std::array<int, 6> combo;  // i12, i21, i13, i31, i23, i32
    };
    std::map<std::pair<double, double>, Best> best_by_point;

    ProjectedRegion region;
    region.axes = spec.axes;
    region.n_excluded = cache.n_excluded;

    for (int i12 = 0; i12 < g; ++i12)
        for (int i21 = 0; i21 < g; ++i21)
            for (int i13 = 0; i13 < g; ++i13)
                for (int i31 = 0; i31 < g; ++i31) {
                    const BoundEstimate& r12 = rate_tab[0][static_cast<std::size_t>(i12) * g + i21];
                    const BoundEstimate& r13 = rate_tab[1][static_cast<std::size_t>(i13) * g + i31];
                    const BoundEstimate& c1 = user_tab[0][static_cast<std::size_t>(i12) * g + i13];
                    if (!within_budget(c1, budget[0], true)) {
                        region.n_combos += static_cast<std::int64_t>(g) * g;
                        continue;
                    }
                    for (int i23 = 0; i23 < g; ++i23)
                        for (int i32 = 0; i32 < g; ++i32) {
                            ++region.n_combos;
                            const BoundEstimate& r23 =
                                rate_tab[2][static_cast<std::size_t>(i23) * g + i32];
                            const BoundEstimate& c2 =
                                user_tab[1][static_cast<std::size_t>(i21) * g + i23];
                            const BoundEstimate& c3 =
                                user_tab[2][static_cast<std::size_t>(i31) * g + i32];
                            if (!within_budget(c2, budget[1], true) ||
                                !within_budget(c3, budget[2], true))
                                continue;
                            ++region.n_feasible;

                            const BoundEstimate* rates[3] = {&r12, &r13, &r23};
                            const double a1 = rates[ax.a1]->mean;
                            const double a2 = rates[ax.a2]->mean;
                            const double third = rates[ax.third]->mean;
                            const std::array<int, 6> combo{i12, i21, i13, i31, i23, i32};
                            auto [it, inserted] = best_by_point.try_emplace(
                                std::make_pair(a1, a2), Best{third, combo});
                            if (!inserted && third > it->second.third)
                                it->second = Best{third, combo};
                        }
                }

    if (best_by_point.empty()) {
        region.diagnostic = "no feasible split combination under the given budgets";
        return region;
    }

    for (const auto& [key, best] : best_by_point) {
        const auto& c = best.combo;
        RegionPoint pt;
        pt.split = split_from_indices(grid, c[0], c[1], c[2], c[3], c[4], c[5]);
        pt.axis1 = key.first;
        pt.axis2 = key.second;
        pt.third_best = best.third;
        pt.detail.rates = {rate_tab[0][static_cast<std::size_t>(c[0]) * g + c[1]],
                           rate_tab[1][static_cast<std::size_t>(c[2]) * g + c[3]],
                           rate_tab[2][static_cast<std::size_t>(c[4]) * g + c[5]]};
        pt.detail.public_rate_lhs = {user_tab[0][static_cast<std::size_t>(c[0]) * g + c[2]],
                                     user_tab[1][static_cast<std::size_t>(c[1]) * g + c[4]],
                                     user_tab[2][static_cast<std::size_t>(c[3]) * g + c[5]]};
        pt.detail.feasible = true;
        pt.detail.feasible_strict = true;
        for (int u = 0; u < 3; ++u)
            pt.detail.feasible_strict =
                pt.detail.feasible_strict &&
                within_budget(pt.detail.public_rate_lhs[u], budget[u], false);
        region.points.push_back(std::move(pt));
    }

    // Non-dominated frontier on (axis1, axis2): sweep by descending axis1.
    std::vector<std::size_t> order(region.points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const RegionPoint& px = region.points[x];
        const RegionPoint& py = region.points[y];
        if (px.axis1 != py.axis1) return px.axis1 > py.axis1;
        return px.axis2 > py.axis2;
    });
    double best_a2 = -1.0;
    for (std::size_t i : order) {
        if (region.points[i].axis2 > best_a2) {
            region.points[i].frontier = true;
            best_a2 = region.points[i].axis2;
        }
    }

    if (spec.refine_samples > 0) {
        McConfig refine_mc = spec.mc;
        refine_mc.n_samples = spec.refine_samples;
        const GeometryCache refine_cache =
            build_geometry_cache(spec.mobility, spec.noise, refine_mc);
        for (RegionPoint& pt : region.points) {
            if (!pt.frontier) continue;
            pt.refined = rate_limited_point(refine_cache, spec.noise, pt.split,
                                            spec.budgets, threads);
            pt.has_refined = true;
        }
    }

    return region;
}

}  // namespace pairkey
