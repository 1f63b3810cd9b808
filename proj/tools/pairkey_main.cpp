#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "pairkey/config.hpp"
#include "pairkey/io.hpp"
#include "pairkey/version.hpp"

namespace {

using namespace pairkey;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << content;
}

std::string estimates_csv(const RunMeta& meta, const std::array<BoundEstimate, 3>& est,
                          const char* what) {
    std::ostringstream os;
    os << meta_preamble(meta);
    os << "pair," << what << "," << what << "_se,n_samples,n_excluded\n";
    const char* names[3] = {"R12", "R13", "R23"};
    for (int p = 0; p < 3; ++p)
        os << names[p] << ',' << format_number(est[p].mean) << ','
           << format_number(est[p].std_error) << ',' << est[p].n_samples << ','
           << est[p].n_excluded << "\n";
    return os.str();
}

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> samples;
    std::optional<int> threads;

    RunConfig resolve() const {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_run_config(config_path);
        if (seed) cfg.mc.seed = *seed;
        if (samples) {
            cfg.mc.n_samples = *samples;
            cfg.region_samples = *samples;
        }
        if (threads) cfg.mc.n_threads = *threads;
        if (!out_path.empty()) cfg.out_path = out_path;
        if (!format.empty()) cfg.format = format;
        if (cfg.format != "csv" && cfg.format != "json")
            throw ConfigError("format must be csv or json");
        cfg.mc.validate();
        return cfg;
    }
};

RunMeta make_meta(const char* command, const RunConfig& cfg, std::int64_t n_samples,
                  std::int64_t n_excluded) {
    RunMeta meta;
    meta.command = command;
    meta.seed = cfg.mc.seed;
    meta.config_hash = cfg.config_hash;
    meta.n_samples = n_samples;
    meta.n_excluded = n_excluded;
    return meta;
}

int cmd_fig3(const CommonFlags& flags) {
    const RunConfig cfg = flags.resolve();
    NoiseSweepSpec spec;
    spec.grid = cfg.sweep_grid;
    spec.mobility = cfg.mobility;
    spec.noise = cfg.noise;
    spec.mc = cfg.mc;
    const auto rows = sweep_pair_noise(spec);
    std::int64_t excluded = 0;
    for (const auto& row : rows) excluded += row.n_excluded;
    const RunMeta meta = make_meta("fig3", cfg, cfg.mc.n_samples, excluded);
    write_output(cfg.out_path, cfg.format == "json"
                                   ? noise_sweep_json(rows, meta).dump(2) + "\n"
                                   : noise_sweep_csv(rows, meta));
    return kExitOk;
}

int cmd_region(const CommonFlags& flags, const std::string& axes_flag) {
    RunConfig cfg = flags.resolve();
    if (!axes_flag.empty()) cfg.axes = axes_flag;
    TraceSpec spec;
    try {
        spec.axes = parse_axis_pair(cfg.axes);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    spec.budgets = cfg.budgets;
    spec.mobility = cfg.mobility;
    spec.noise = cfg.noise;
    spec.split_grid = cfg.split_grid;
    spec.mc = cfg.mc;
    spec.mc.n_samples = cfg.region_samples;
    spec.refine_samples = cfg.refine_samples;
    const ProjectedRegion region = trace_projection(spec);
    const RunMeta meta = make_meta("region", cfg, spec.mc.n_samples, region.n_excluded);
    write_output(cfg.out_path, cfg.format == "json"
                                   ? region_json(region, meta).dump(2) + "\n"
                                   : region_csv(region, meta));
    return kExitOk;
}

int cmd_thm2(const CommonFlags& flags) {
    const RunConfig cfg = flags.resolve();
    const auto inner = inner_bound_unlimited(cfg.mobility, cfg.noise, cfg.mc);
    const RunMeta meta = make_meta("thm2", cfg, cfg.mc.n_samples, inner[0].n_excluded);
    write_output(cfg.out_path, cfg.format == "json"
                                   ? bounds_json(inner, meta).dump(2) + "\n"
                                   : estimates_csv(meta, inner, "inner"));
    return kExitOk;
}

int cmd_outer(const CommonFlags& flags) {
    const RunConfig cfg = flags.resolve();
    const OuterBound outer = outer_bound_detailed(cfg.mobility, cfg.noise, cfg.mc);
    const RunMeta meta =
        make_meta("outer", cfg, cfg.mc.n_samples, outer.mean_eve_variance[0].n_excluded);
    if (cfg.format == "json") {
        write_output(cfg.out_path, outer_json(outer, meta).dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << meta_preamble(meta);
        os << "pair,outer,outer_se,mean_eve_variance,mean_eve_variance_se\n";
        const double rates[3] = {outer.rates.r12, outer.rates.r13, outer.rates.r23};
        const char* names[3] = {"R12", "R13", "R23"};
        for (int p = 0; p < 3; ++p)
            os << names[p] << ',' << format_number(rates[p]) << ','
               << format_number(outer.rate_std_error[p]) << ','
               << format_number(outer.mean_eve_variance[p].mean) << ','
               << format_number(outer.mean_eve_variance[p].std_error) << "\n";
        write_output(cfg.out_path, os.str());
    }
    return kExitOk;
}

int cmd_thm3_point(const CommonFlags& flags) {
    const RunConfig cfg = flags.resolve();
    const RateLimitedPoint point =
        rate_limited_point(cfg.mobility, cfg.noise, cfg.split, cfg.budgets, cfg.mc);
    const RunMeta meta =
        make_meta("thm3-point", cfg, cfg.mc.n_samples, point.rates[0].n_excluded);
    if (cfg.format == "json") {
        write_output(cfg.out_path, rate_limited_json(point, meta).dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << meta_preamble(meta);
        os << "# feasible: " << (point.feasible ? 1 : 0)
           << ", feasible_strict: " << (point.feasible_strict ? 1 : 0) << "\n";
        os << "quantity,mean,std_error\n";
        const char* rn[3] = {"R12", "R13", "R23"};
        const char* cn[3] = {"C1", "C2", "C3"};
        for (int p = 0; p < 3; ++p)
            os << rn[p] << ',' << format_number(point.rates[p].mean) << ','
               << format_number(point.rates[p].std_error) << "\n";
        for (int u = 0; u < 3; ++u)
            os << cn[u] << ',' << format_number(point.public_rate_lhs[u].mean) << ','
               << format_number(point.public_rate_lhs[u].std_error) << "\n";
        write_output(cfg.out_path, os.str());
    }
    return kExitOk;
}

int cmd_discrete(const CommonFlags& flags) {
    const RunConfig cfg = flags.resolve();
    if (cfg.discrete.is_null())
        throw ConfigError("discrete command needs a config with a \"discrete\" section");
    DiscreteInstance inst;
    try {
        inst = discrete_from_json_text(cfg.discrete.dump());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const RegionCoefficients coeffs = region_coefficients(inst.source, inst.channels);

    nlohmann::json report = coefficients_json(coeffs);
    RunMeta meta = make_meta("discrete", cfg, 0, 0);
    report["meta"] = meta_json(meta);
    if (cfg.discrete.contains("query")) {
        const auto& q = cfg.discrete.at("query");
        RateTriple rates;
        PublicRates budgets;
        try {
            const auto r = q.at("rates");
            rates.r12 = parse_extended_number(r.at(0), "query.rates");
            rates.r13 = parse_extended_number(r.at(1), "query.rates");
            rates.r23 = parse_extended_number(r.at(2), "query.rates");
            if (q.contains("budgets")) {
                const auto b = q.at("budgets");
                budgets.r1 = parse_extended_number(b.at(0), "query.budgets");
                budgets.r2 = parse_extended_number(b.at(1), "query.budgets");
                budgets.r3 = parse_extended_number(b.at(2), "query.budgets");
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("discrete query schema: ") + e.what());
        }
        report["membership"] = membership(coeffs, rates, budgets);
    }
    write_output(cfg.out_path, report.dump(2) + "\n");
    return kExitOk;
}

int cmd_selftest(const CommonFlags& flags) {
    const RunConfig cfg = flags.resolve();
    const std::int64_t draws = flags.samples ? *flags.samples : 10000;
    const SelfCheckReport report = run_selfcheck(draws, cfg.mc.seed);
    std::cout << report.summary() << "\n";
    return report.pass() ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inner and outer bounds on the three-user pairwise secret-key "
                 "capacity region from location-derived randomness"};
    app.set_version_flag("--version", std::string("pairkey ") + pairkey::kVersion);
    app.fallthrough();
    app.require_subcommand(1);

    CommonFlags flags;
    app.add_option("--config", flags.config_path, "JSON run configuration");
    app.add_option("--out", flags.out_path, "output path (default: stdout)");
    app.add_option("--format", flags.format, "output format: csv or json");
    app.add_option("--seed", flags.seed, "Monte-Carlo seed");
    app.add_option("--samples", flags.samples, "Monte-Carlo sample count");
    app.add_option("--threads", flags.threads, "worker threads (0 = auto)");

    auto* fig3 = app.add_subcommand(
        "fig3", "sweep sigma2_12 and tabulate inner/outer bounds for all pairs");
    auto* region = app.add_subcommand(
        "region", "trace one 2-D projection of the rate-limited achievable region");
    std::string axes_flag;
    region->add_option("--axes", axes_flag, "projection axes: R12-R13, R12-R23, R13-R23");
    auto* thm2 = app.add_subcommand("thm2", "inner bound with unlimited public channels");
    auto* outer = app.add_subcommand("outer", "outer bound on the key capacity region");
    auto* thm3 = app.add_subcommand(
        "thm3-point", "rate-limited achievable point for one split-noise choice");
    auto* discrete = app.add_subcommand(
        "discrete", "evaluate the discrete-source region coefficients from JSON");
    auto* selftest = app.add_subcommand(
        "selftest", "closed forms vs the Gaussian mutual-information oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (fig3->parsed()) return cmd_fig3(flags);
        if (region->parsed()) return cmd_region(flags, axes_flag);
        if (thm2->parsed()) return cmd_thm2(flags);
        if (outer->parsed()) return cmd_outer(flags);
        if (thm3->parsed()) return cmd_thm3_point(flags);
        if (discrete->parsed()) return cmd_discrete(flags);
        if (selftest->parsed()) return cmd_selftest(flags);
    } catch (const pairkey::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}
