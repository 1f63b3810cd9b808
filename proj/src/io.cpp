#include "pairkey/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "pairkey/version.hpp"

namespace pairkey {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace {

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

nlohmann::json estimate_json(const BoundEstimate& e) {
    return {{"mean", e.mean},
            {"std_error", e.std_error},
            {"n_samples", e.n_samples},
            {"n_excluded", e.n_excluded}};
}

}  // namespace

std::string meta_preamble(const RunMeta& meta) {
    std::ostringstream os;
    os << "# pairkey " << kVersion << "\n";
    os << "# command: " << meta.command << "\n";
    os << "# seed: " << meta.seed << "\n";
    os << "# samples: " << meta.n_samples << "\n";
    os << "# excluded: " << meta.n_excluded << "\n";
    os << "# config_hash: " << hex64(meta.config_hash) << "\n";
    os << "# log_base: 2\n";
    return os.str();
}

nlohmann::json meta_json(const RunMeta& meta) {
    return {{"tool", "pairkey"},          {"version", kVersion},
            {"command", meta.command},    {"seed", meta.seed},
            {"samples", meta.n_samples},  {"excluded", meta.n_excluded},
            {"config_hash", hex64(meta.config_hash)}, {"log_base", 2}};
}

std::string noise_sweep_csv(const std::vector<NoiseSweepRow>& rows, const RunMeta& meta) {
    std::ostringstream os;
    os << meta_preamble(meta);
    os << "# columns: sigma2_12; per pair (12,13,23): inner-bound mean and standard "
          "error, outer bound and its delta-method standard error; excluded samples\n";
    os << "sigma2_12,inner_r12,inner_r12_se,outer_r12,outer_r12_se,"
          "inner_r13,inner_r13_se,outer_r13,outer_r13_se,"
          "inner_r23,inner_r23_se,outer_r23,outer_r23_se,n_samples,n_excluded\n";
    for (const NoiseSweepRow& row : rows) {
        const double outer[3] = {row.outer.rates.r12, row.outer.rates.r13,
                                 row.outer.rates.r23};
        os << format_number(row.sigma2_12);
        for (int p = 0; p < 3; ++p) {
            os << ',' << format_number(row.inner[p].mean) << ','
               << format_number(row.inner[p].std_error) << ',' << format_number(outer[p])
               << ',' << format_number(row.outer.rate_std_error[p]);
        }
        os << ',' << row.inner[0].n_samples << ',' << row.n_excluded << "\n";
    }
    return os.str();
}

nlohmann::json noise_sweep_json(const std::vector<NoiseSweepRow>& rows,
                                const RunMeta& meta) {
    nlohmann::json out;
    out["meta"] = meta_json(meta);
    out["rows"] = nlohmann::json::array();
    for (const NoiseSweepRow& row : rows) {
        const double outer[3] = {row.outer.rates.r12, row.outer.rates.r13,
                                 row.outer.rates.r23};
        nlohmann::json j;
        j["sigma2_12"] = row.sigma2_12;
        const char* names[3] = {"r12", "r13", "r23"};
        for (int p = 0; p < 3; ++p) {
            j["inner"][names[p]] = estimate_json(row.inner[p]);
            j["outer"][names[p]] = {{"bound", outer[p]},
                                    {"std_error", row.outer.rate_std_error[p]}};
        }
        j["n_excluded"] = row.n_excluded;
        out["rows"].push_back(std::move(j));
    }
    return out;
}

namespace {

void region_point_row(std::ostringstream& os, const RegionPoint& pt) {
    const double splits[6] = {pt.split.sp2_12, pt.split.sp2_21, pt.split.sp2_13,
                              pt.split.sp2_31, pt.split.sp2_23, pt.split.sp2_32};
    for (double s : splits) os << format_number(s) << ',';
    const char* sep = "";
    for (int p = 0; p < 3; ++p) {
        os << sep << format_number(pt.detail.rates[p].mean) << ','
           << format_number(pt.detail.rates[p].std_error);
        sep = ",";
    }
    for (int u = 0; u < 3; ++u)
        os << ',' << format_number(pt.detail.public_rate_lhs[u].mean) << ','
           << format_number(pt.detail.public_rate_lhs[u].std_error);
    os << ',' << format_number(pt.axis1) << ',' << format_number(pt.axis2) << ','
       << format_number(pt.third_best);
    os << ',' << (pt.detail.feasible_strict ? 1 : 0) << ',' << (pt.frontier ? 1 : 0);
    if (pt.has_refined) {
        for (int p = 0; p < 3; ++p)
            os << ',' << format_number(pt.refined.rates[p].mean) << ','
               << format_number(pt.refined.rates[p].std_error);
        os << ',' << (pt.refined.feasible ? 1 : 0);
    } else {
        os << ",,,,,,,";
    }
    os << "\n";
}

}  // namespace

std::string region_csv(const ProjectedRegion& region, const RunMeta& meta) {
    std::ostringstream os;
    os << meta_preamble(meta);
    os << "# axes: " << axis_pair_name(region.axes) << "\n";
    os << "# grid combinations: " << region.n_combos
       << ", feasible: " << region.n_feasible << "\n";
    if (!region.diagnostic.empty()) os << "# diagnostic: " << region.diagnostic << "\n";
    os << "# columns: six split variances (inf = direction discloses nothing); rate "
          "mean/standard error per pair; public-rate LHS mean/standard error per user; "
          "projected coordinates and best hidden-pair rate; strict feasibility; "
          "frontier flag; refined frontier rates (blank for non-frontier rows)\n";
    os << "sp2_12,sp2_21,sp2_13,sp2_31,sp2_23,sp2_32,"
          "r12,r12_se,r13,r13_se,r23,r23_se,"
          "c1,c1_se,c2,c2_se,c3,c3_se,"
          "axis1,axis2,third_best,feasible_strict,frontier,"
          "refined_r12,refined_r12_se,refined_r13,refined_r13_se,"
          "refined_r23,refined_r23_se,refined_feasible\n";
    for (const RegionPoint& pt : region.points) region_point_row(os, pt);
    return os.str();
}

nlohmann::json region_json(const ProjectedRegion& region, const RunMeta& meta) {
    nlohmann::json out;
    out["meta"] = meta_json(meta);
    out["axes"] = axis_pair_name(region.axes);
    out["n_combos"] = region.n_combos;
    out["n_feasible"] = region.n_feasible;
    if (!region.diagnostic.empty()) out["diagnostic"] = region.diagnostic;
    out["points"] = nlohmann::json::array();
    const char* names[3] = {"r12", "r13", "r23"};
    for (const RegionPoint& pt : region.points) {
        nlohmann::json j;
        j["split"] = {{"sp2_12", format_number(pt.split.sp2_12)},
                      {"sp2_21", format_number(pt.split.sp2_21)},
                      {"sp2_13", format_number(pt.split.sp2_13)},
                      {"sp2_31", format_number(pt.split.sp2_31)},
                      {"sp2_23", format_number(pt.split.sp2_23)},
                      {"sp2_32", format_number(pt.split.sp2_32)}};
        for (int p = 0; p < 3; ++p) j["rates"][names[p]] = estimate_json(pt.detail.rates[p]);
        for (int u = 0; u < 3; ++u)
            j["public_rate_lhs"][u] = estimate_json(pt.detail.public_rate_lhs[u]);
        j["axis1"] = pt.axis1;
        j["axis2"] = pt.axis2;
        j["third_best"] = pt.third_best;
        j["feasible_strict"] = pt.detail.feasible_strict;
        j["frontier"] = pt.frontier;
        if (pt.has_refined) {
            for (int p = 0; p < 3; ++p)
                j["refined"][names[p]] = estimate_json(pt.refined.rates[p]);
            j["refined"]["feasible"] = pt.refined.feasible;
        }
        out["points"].push_back(std::move(j));
    }
    return out;
}

nlohmann::json bounds_json(const std::array<BoundEstimate, 3>& inner, const RunMeta& meta) {
    nlohmann::json out;
    out["meta"] = meta_json(meta);
    const char* names[3] = {"r12", "r13", "r23"};
    for (int p = 0; p < 3; ++p) out["inner"][names[p]] = estimate_json(inner[p]);
    return out;
}

nlohmann::json outer_json(const OuterBound& outer, const RunMeta& meta) {
    nlohmann::json out;
    out["meta"] = meta_json(meta);
    const double rates[3] = {outer.rates.r12, outer.rates.r13, outer.rates.r23};
    const char* names[3] = {"r12", "r13", "r23"};
    for (int p = 0; p < 3; ++p) {
        out["outer"][names[p]] = {{"bound", rates[p]},
                                  {"std_error", outer.rate_std_error[p]},
                                  {"mean_eve_variance", estimate_json(outer.mean_eve_variance[p])}};
    }
    return out;
}

nlohmann::json rate_limited_json(const RateLimitedPoint& point, const RunMeta& meta) {
    nlohmann::json out;
    out["meta"] = meta_json(meta);
    const char* names[3] = {"r12", "r13", "r23"};
    for (int p = 0; p < 3; ++p) out["rates"][names[p]] = estimate_json(point.rates[p]);
    for (int u = 0; u < 3; ++u)
        out["public_rate_lhs"][u] = estimate_json(point.public_rate_lhs[u]);
    out["feasible"] = point.feasible;
    out["feasible_strict"] = point.feasible_strict;
    return out;
}

nlohmann::json coefficients_json(const RegionCoefficients& k) {
    nlohmann::json out;
    out["one_way"] = {{"r12", k.r12}, {"r21", k.r21}, {"r13", k.r13},
                      {"r31", k.r31}, {"r23", k.r23}, {"r32", k.r32}};
    out["coupling"] = {{"i12", k.i12}, {"i13", k.i13}, {"i23", k.i23},
                       {"i1", k.i1},   {"i2", k.i2},   {"i3", k.i3}};
    out["constraints_lhs"] = {{"c1", k.c1},   {"c2", k.c2},   {"c3", k.c3},
                              {"c12", k.c12}, {"c13", k.c13}, {"c23", k.c23},
                              {"c123", k.c123}};
    out["region_rhs"] = {{"r12", k.rhs_r12()},
                         {"r13", k.rhs_r13()},
                         {"r23", k.rhs_r23()},
                         {"r12+r13", k.rhs_r12_r13()},
                         {"r12+r23", k.rhs_r12_r23()},
                         {"r13+r23", k.rhs_r13_r23()},
                         {"r12+r13+r23", k.rhs_sum()}};
    return out;
}

}  // namespace pairkey
