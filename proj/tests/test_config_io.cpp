#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pairkey/config.hpp"
#include "pairkey/io.hpp"

using namespace pairkey;

TEST_CASE("number formatting") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(kUnlimited) == "inf");
    CHECK(format_number(-kUnlimited) == "-inf");
    CHECK(format_number(123456789012.0) == "123456789012");
}

TEST_CASE("fnv1a64 matches the published reference values") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("ab") != fnv1a64("ba"));
}

TEST_CASE("defaults survive an empty config document") {
    const RunConfig cfg = parse_run_config(nlohmann::json::object());
    CHECK(cfg.noise.sigma2_12 == 0.1);
    CHECK(cfg.mc.n_samples == 1000000);
    CHECK(std::isinf(cfg.budgets.r1));
    CHECK(cfg.sweep_grid.size() == 6);
    CHECK(cfg.split_grid.size() == 7);
    CHECK(std::isinf(cfg.split_grid.back()));
    CHECK(cfg.format == "csv");
}

TEST_CASE("full config parses and validates") {
    const auto doc = nlohmann::json::parse(R"({
      "mobility": {"means": [[0,0],[1,0],[0,1]], "variances": [1, 2, 0.5]},
      "noise": {"sigma2_12": 0.2, "beacons": 4},
      "mc": {"n_samples": 5000, "seed": 42, "n_threads": 2},
      "budgets": {"R1": 0.5, "R2": "inf", "R3": 0.8},
      "split": {"sp2_12": "inf", "sp2_21": 0.25},
      "sweep": {"parameter": "sigma2_12", "grid": {"from": 0.05, "to": 0.5, "count": 4, "log": true}},
      "region": {"axes": "R13-R23", "split_grid": [0.1, "inf"], "samples": 2000, "refine_samples": 0},
      "output": {"format": "json"}
    })");
    const RunConfig cfg = parse_run_config(doc);
    CHECK(cfg.mobility.variance[1] == 2.0);
    CHECK(cfg.noise.sigma2_12 == 0.2);
    CHECK(cfg.noise.beacons == 4);
    CHECK(cfg.mc.seed == 42);
    CHECK(std::isinf(cfg.budgets.r2));
    CHECK(std::isinf(cfg.split.sp2_12));
    CHECK(cfg.split.sp2_21 == 0.25);
    CHECK(cfg.sweep_grid.size() == 4);
    CHECK(cfg.sweep_grid.front() == doctest::Approx(0.05));
    CHECK(cfg.sweep_grid.back() == doctest::Approx(0.5));
    CHECK(cfg.axes == "R13-R23");
    CHECK(cfg.region_samples == 2000);
    CHECK(cfg.format == "json");
    CHECK(cfg.config_hash != 0);
}

TEST_CASE("config rejections") {
    CHECK_THROWS_AS(parse_run_config(nlohmann::json::parse(
                        R"({"mobility": {"variances": [1, 0, 1]}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(nlohmann::json::parse(
                        R"({"output": {"format": "xml"}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(nlohmann::json::parse(
                        R"({"sweep": {"parameter": "sigma2_13"}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(nlohmann::json::parse(
                        R"({"budgets": {"R1": "huge"}})")),
                    ConfigError);
    CHECK_THROWS_AS(load_run_config("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("metadata preamble is stable and carries no timestamps") {
    RunMeta meta;
    meta.command = "fig3";
    meta.seed = 9;
    meta.config_hash = 0xabcdef;
    meta.n_samples = 100;
    const std::string a = meta_preamble(meta);
    const std::string b = meta_preamble(meta);
    CHECK(a == b);
    CHECK(a.find("# pairkey") == 0);
    CHECK(a.find("seed: 9") != std::string::npos);
    CHECK(a.find("log_base: 2") != std::string::npos);
}

TEST_CASE("sweep CSV shape") {
    NoiseSweepSpec spec;
    spec.grid = {0.1};
    spec.mc.n_samples = 2000;
    spec.mc.seed = 1;
    const auto rows = sweep_pair_noise(spec);
    RunMeta meta;
    meta.command = "fig3";
    meta.n_samples = 2000;
    const std::string csv = noise_sweep_csv(rows, meta);
    CHECK(csv.find("sigma2_12,inner_r12,inner_r12_se,outer_r12,outer_r12_se") !=
          std::string::npos);
    // one comment block, one header, one data row
    CHECK(std::count(csv.begin(), csv.end(), '\n') >= 10);
    const auto json = noise_sweep_json(rows, meta);
    CHECK(json["rows"].size() == 1);
    CHECK(json["meta"]["log_base"] == 2);
}
