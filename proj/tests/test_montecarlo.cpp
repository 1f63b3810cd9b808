#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pairkey/montecarlo.hpp"

using namespace pairkey;

namespace {

double d12_squared(const TriangleSample& t) { return t.d12 * t.d12; }

}  // namespace

TEST_CASE("config validation") {
    McConfig mc;
    mc.n_samples = 0;
    CHECK_THROWS_AS(mc.validate(), std::invalid_argument);
}

TEST_CASE("an all-excluded input is an error") {
    CHECK_THROWS_WITH_AS(
        block_reduce(100, 1, [](std::int64_t, double*) { return false; }, 1),
        "all samples degenerate", std::runtime_error);
}

TEST_CASE("constant integrand") {
    MobilityConfig mobility;
    McConfig mc{.n_samples = 5000, .seed = 3};
    const auto est = estimate([](const TriangleSample&) { return 1.0; }, mobility, mc);
    CHECK(est.mean == 1.0);
    CHECK(est.std_error == 0.0);
    CHECK(est.n_samples == 5000);
    CHECK(est.n_excluded == 0);
}

TEST_CASE("squared pair distance has expectation 4 under unit-variance positions") {
    MobilityConfig mobility;
    McConfig mc{.n_samples = 1000000, .seed = 17};
    const auto est = estimate(d12_squared, mobility, mc);
    CHECK(std::abs(est.mean - 4.0) < 3.0 * est.std_error);
}

TEST_CASE("same seed gives bit-identical results") {
    MobilityConfig mobility;
    McConfig mc{.n_samples = 40000, .seed = 20240601};
    const auto a = estimate(d12_squared, mobility, mc);
    const auto b = estimate(d12_squared, mobility, mc);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("results are independent of thread count and batch size") {
    MobilityConfig mobility;
    auto run = [&](int threads, std::int64_t batch) {
        McConfig mc{.n_samples = 50000, .seed = 5, .batch_size = batch,
                    .n_threads = threads};
        return mc_run(
            2,
            [](const TriangleSample& t, RngStream&, double* out) {
                out[0] = t.d12 * t.d12;
                out[1] = t.phi1;
            },
            mobility, mc);
    };
    const auto ref = run(1, 8192);
    for (int threads : {2, 4}) {
        const auto r = run(threads, 8192);
        for (int j = 0; j < 2; ++j) {
            CHECK(r[j].mean == ref[j].mean);
            CHECK(r[j].std_error == ref[j].std_error);
        }
    }
    for (std::int64_t batch : {1024LL, 3000LL, 50000LL}) {
        const auto r = run(3, batch);
        for (int j = 0; j < 2; ++j) {
            CHECK(r[j].mean == ref[j].mean);
            CHECK(r[j].std_error == ref[j].std_error);
        }
    }
}

TEST_CASE("standard error shrinks like 1/sqrt(n)") {
    MobilityConfig mobility;
    McConfig small{.n_samples = 50000, .seed = 8};
    McConfig big{.n_samples = 200000, .seed = 8};
    const auto a = estimate(d12_squared, mobility, small);
    const auto b = estimate(d12_squared, mobility, big);
    const double ratio = a.std_error / b.std_error;
    CHECK(ratio > 2.0 * 0.8);
    CHECK(ratio < 2.0 * 1.2);
}

TEST_CASE("kernels may draw extra randomness from the sample stream") {
    MobilityConfig mobility;
    McConfig mc{.n_samples = 20000, .seed = 99};
    const auto r = mc_run(
        1,
        [](const TriangleSample&, RngStream& rng, double* out) {
            out[0] = rng.gaussian();
        },
        mobility, mc);
    CHECK(std::abs(r[0].mean) < 4.0 * r[0].std_error);
    CHECK(r[0].std_error == doctest::Approx(1.0 / std::sqrt(20000.0)).epsilon(0.05));
}
