#include "pairkey/config.hpp"

#include <fstream>
#include <sstream>

#include "pairkey/io.hpp"

namespace pairkey {

double parse_extended_number(const nlohmann::json& v, const char* what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "Inf" || s == "Infinity") return kUnlimited;
    }
    throw ConfigError(std::string(what) + ": expected a number or \"inf\"");
}

namespace {

double number_at(const nlohmann::json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    return parse_extended_number(obj.at(key), key);
}

std::vector<double> grid_from(const nlohmann::json& j, const char* what) {
    std::vector<double> grid;
    if (j.is_array()) {
        for (const auto& v : j) grid.push_back(parse_extended_number(v, what));
    } else if (j.is_object()) {
        const double from = j.at("from").get<double>();
        const double to = j.at("to").get<double>();
        const int count = j.at("count").get<int>();
        const bool log_spaced = j.value("log", false);
        if (count < 1) throw ConfigError(std::string(what) + ": count must be positive");
        if (count == 1) {
            grid.push_back(from);
        } else if (log_spaced) {
            if (!(from > 0.0) || !(to > 0.0))
                throw ConfigError(std::string(what) + ": log grid needs positive bounds");
            const double lf = std::log(from), lt = std::log(to);
            for (int k = 0; k < count; ++k)
                grid.push_back(std::exp(lf + (lt - lf) * k / (count - 1)));
        } else {
            for (int k = 0; k < count; ++k)
                grid.push_back(from + (to - from) * k / (count - 1));
        }
    } else {
        throw ConfigError(std::string(what) + ": expected an array or a range object");
    }
    if (grid.empty()) throw ConfigError(std::string(what) + ": grid is empty");
    return grid;
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& doc) {
    RunConfig cfg;
    cfg.config_hash = fnv1a64(doc.dump());
    try {
        if (doc.contains("mobility")) {
            const auto& m = doc.at("mobility");
            if (m.contains("means")) {
                const auto means = m.at("means").get<std::vector<std::vector<double>>>();
                if (means.size() != 3)
                    throw ConfigError("mobility.means must list three 2-vectors");
                for (int u = 0; u < 3; ++u) {
                    if (means[u].size() != 2)
                        throw ConfigError("mobility.means entries must be 2-vectors");
                    cfg.mobility.mean[u] = {means[u][0], means[u][1]};
                }
            }
            if (m.contains("variances")) {
                const auto v = m.at("variances").get<std::vector<double>>();
                if (v.size() != 3)
                    throw ConfigError("mobility.variances must list three values");
                cfg.mobility.variance = {v[0], v[1], v[2]};
            }
        }
        if (doc.contains("noise")) {
            const auto& n = doc.at("noise");
            cfg.noise.sigma2_12 = number_at(n, "sigma2_12", cfg.noise.sigma2_12);
            cfg.noise.sigma2_13 = number_at(n, "sigma2_13", cfg.noise.sigma2_13);
            cfg.noise.sigma2_23 = number_at(n, "sigma2_23", cfg.noise.sigma2_23);
            cfg.noise.sigma2_ang_1 = number_at(n, "sigma2_ang_1", cfg.noise.sigma2_ang_1);
            cfg.noise.sigma2_ang_2 = number_at(n, "sigma2_ang_2", cfg.noise.sigma2_ang_2);
            cfg.noise.sigma2_ang_3 = number_at(n, "sigma2_ang_3", cfg.noise.sigma2_ang_3);
            if (n.contains("beacons")) cfg.noise.beacons = n.at("beacons").get<std::int64_t>();
        }
        if (doc.contains("mc")) {
            const auto& m = doc.at("mc");
            if (m.contains("n_samples")) cfg.mc.n_samples = m.at("n_samples").get<std::int64_t>();
            if (m.contains("seed")) cfg.mc.seed = m.at("seed").get<std::uint64_t>();
            if (m.contains("batch_size")) cfg.mc.batch_size = m.at("batch_size").get<std::int64_t>();
            if (m.contains("n_threads")) cfg.mc.n_threads = m.at("n_threads").get<int>();
        }
        if (doc.contains("budgets")) {
            const auto& b = doc.at("budgets");
            cfg.budgets.r1 = number_at(b, "R1", cfg.budgets.r1);
            cfg.budgets.r2 = number_at(b, "R2", cfg.budgets.r2);
            cfg.budgets.r3 = number_at(b, "R3", cfg.budgets.r3);
        }
        if (doc.contains("split")) {
            const auto& s = doc.at("split");
            cfg.split.sp2_12 = number_at(s, "sp2_12", cfg.split.sp2_12);
            cfg.split.sp2_21 = number_at(s, "sp2_21", cfg.split.sp2_21);
            cfg.split.sp2_13 = number_at(s, "sp2_13", cfg.split.sp2_13);
            cfg.split.sp2_31 = number_at(s, "sp2_31", cfg.split.sp2_31);
            cfg.split.sp2_23 = number_at(s, "sp2_23", cfg.split.sp2_23);
            cfg.split.sp2_32 = number_at(s, "sp2_32", cfg.split.sp2_32);
        }
        if (doc.contains("sweep")) {
            const auto& s = doc.at("sweep");
            if (s.contains("parameter") && s.at("parameter").get<std::string>() != "sigma2_12")
                throw ConfigError("sweep.parameter: only sigma2_12 is supported");
            if (s.contains("grid")) cfg.sweep_grid = grid_from(s.at("grid"), "sweep.grid");
        }
        if (doc.contains("region")) {
            const auto& r = doc.at("region");
            if (r.contains("axes")) cfg.axes = r.at("axes").get<std::string>();
            if (r.contains("split_grid"))
                cfg.split_grid = grid_from(r.at("split_grid"), "region.split_grid");
            if (r.contains("samples")) cfg.region_samples = r.at("samples").get<std::int64_t>();
            if (r.contains("refine_samples"))
                cfg.refine_samples = r.at("refine_samples").get<std::int64_t>();
        }
        if (doc.contains("discrete")) cfg.discrete = doc.at("discrete");
        if (doc.contains("output")) {
            const auto& o = doc.at("output");
            if (o.contains("path")) cfg.out_path = o.at("path").get<std::string>();
            if (o.contains("format")) cfg.format = o.at("format").get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config schema: ") + e.what());
    }

    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("output.format must be csv or json");
    try {
        cfg.mobility.validate();
        cfg.noise.validate();
        cfg.mc.validate();
        cfg.budgets.validate();
        cfg.split.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_run_config(doc);
}

}  // namespace pairkey
