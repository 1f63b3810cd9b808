#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pairkey/config.hpp"
#include "pairkey/discrete.hpp"
#include "pairkey/io.hpp"
#include "pairkey/oracle.hpp"
#include "pairkey/tracing.hpp"
#include "pairkey/version.hpp"

namespace py = pybind11;
using namespace pairkey;

PYBIND11_MODULE(_pairkey, m) {
    m.doc() = "Pairwise secret-key capacity bounds for three users from "
              "location-derived randomness";
    m.attr("__version__") = kVersion;
    m.attr("UNLIMITED") = kUnlimited;

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"),
             py::arg("substream") = 0)
        .def("uniform", &RngStream::uniform)
        .def("gaussian", &RngStream::gaussian);

    py::class_<MobilityConfig>(m, "MobilityConfig")
        .def(py::init<>())
        .def_readwrite("mean", &MobilityConfig::mean)
        .def_readwrite("variance", &MobilityConfig::variance)
        .def("validate", &MobilityConfig::validate);

    py::class_<TriangleSample>(m, "TriangleSample")
        .def(py::init<>())
        .def_readwrite("d12", &TriangleSample::d12)
        .def_readwrite("d13", &TriangleSample::d13)
        .def_readwrite("d23", &TriangleSample::d23)
        .def_readwrite("phi1", &TriangleSample::phi1)
        .def_readwrite("phi2", &TriangleSample::phi2)
        .def_readwrite("phi3", &TriangleSample::phi3)
        .def_readwrite("degenerate", &TriangleSample::degenerate)
        .def("side", &TriangleSample::side)
        .def("angle", &TriangleSample::angle);

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init<>())
        .def_readwrite("sigma2_12", &NoiseModel::sigma2_12)
        .def_readwrite("sigma2_13", &NoiseModel::sigma2_13)
        .def_readwrite("sigma2_23", &NoiseModel::sigma2_23)
        .def_readwrite("sigma2_ang_1", &NoiseModel::sigma2_ang_1)
        .def_readwrite("sigma2_ang_2", &NoiseModel::sigma2_ang_2)
        .def_readwrite("sigma2_ang_3", &NoiseModel::sigma2_ang_3)
        .def_readwrite("beacons", &NoiseModel::beacons)
        .def("validate", &NoiseModel::validate);

    py::class_<ObservationSet>(m, "ObservationSet")
        .def_readonly("d12", &ObservationSet::d12)
        .def_readonly("d21", &ObservationSet::d21)
        .def_readonly("d13", &ObservationSet::d13)
        .def_readonly("d31", &ObservationSet::d31)
        .def_readonly("d23", &ObservationSet::d23)
        .def_readonly("d32", &ObservationSet::d32)
        .def_readonly("phi1", &ObservationSet::phi1)
        .def_readonly("phi2", &ObservationSet::phi2)
        .def_readonly("phi3", &ObservationSet::phi3);

    py::class_<McConfig>(m, "McConfig")
        .def(py::init<>())
        .def_readwrite("n_samples", &McConfig::n_samples)
        .def_readwrite("seed", &McConfig::seed)
        .def_readwrite("batch_size", &McConfig::batch_size)
        .def_readwrite("n_threads", &McConfig::n_threads);

    py::class_<BoundEstimate>(m, "BoundEstimate")
        .def_readonly("mean", &BoundEstimate::mean)
        .def_readonly("std_error", &BoundEstimate::std_error)
        .def_readonly("n_samples", &BoundEstimate::n_samples)
        .def_readonly("n_excluded", &BoundEstimate::n_excluded)
        .def("__repr__", [](const BoundEstimate& e) {
            return "BoundEstimate(mean=" + format_number(e.mean) +
                   ", std_error=" + format_number(e.std_error) + ")";
        });

    py::class_<RateTriple>(m, "RateTriple")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("r12"), py::arg("r13"),
             py::arg("r23"))
        .def_readwrite("r12", &RateTriple::r12)
        .def_readwrite("r13", &RateTriple::r13)
        .def_readwrite("r23", &RateTriple::r23);

    py::class_<PublicRates>(m, "PublicRates")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("r1"), py::arg("r2"),
             py::arg("r3"))
        .def_readwrite("r1", &PublicRates::r1)
        .def_readwrite("r2", &PublicRates::r2)
        .def_readwrite("r3", &PublicRates::r3);

    py::class_<SplitNoise>(m, "SplitNoise")
        .def(py::init<>())
        .def(py::init<double, double, double, double, double, double>(),
             py::arg("sp2_12"), py::arg("sp2_21"), py::arg("sp2_13"), py::arg("sp2_31"),
             py::arg("sp2_23"), py::arg("sp2_32"))
        .def_readwrite("sp2_12", &SplitNoise::sp2_12)
        .def_readwrite("sp2_21", &SplitNoise::sp2_21)
        .def_readwrite("sp2_13", &SplitNoise::sp2_13)
        .def_readwrite("sp2_31", &SplitNoise::sp2_31)
        .def_readwrite("sp2_23", &SplitNoise::sp2_23)
        .def_readwrite("sp2_32", &SplitNoise::sp2_32);

    py::class_<OuterBound>(m, "OuterBound")
        .def_readonly("mean_eve_variance", &OuterBound::mean_eve_variance)
        .def_readonly("rates", &OuterBound::rates)
        .def_readonly("rate_std_error", &OuterBound::rate_std_error);

    py::class_<RateLimitedPoint>(m, "RateLimitedPoint")
        .def_readonly("rates", &RateLimitedPoint::rates)
        .def_readonly("public_rate_lhs", &RateLimitedPoint::public_rate_lhs)
        .def_readonly("feasible", &RateLimitedPoint::feasible)
        .def_readonly("feasible_strict", &RateLimitedPoint::feasible_strict)
        .def("rate_triple", &RateLimitedPoint::rate_triple);

    // geometry
    m.def("sample_positions", &sample_positions, py::arg("rng"), py::arg("config"));
    m.def("triangle_from_positions", &triangle_from_positions);
    m.def("triangle_from_sides", &triangle_from_sides);
    m.def("heron_const", &heron_const);

    // observation
    m.def("observe", &observe, py::arg("triangle"), py::arg("noise"), py::arg("rng"));
    m.def("eve_estimate", &eve_estimate, py::arg("dt_mi"), py::arg("dt_mj"),
          py::arg("phit_m"));
    m.def("eve_estimate_variance", &eve_estimate_variance, py::arg("triangle"),
          py::arg("noise"), py::arg("eavesdropper"));
    m.def("eve_estimate_variance_angle_form", &eve_estimate_variance_angle_form,
          py::arg("triangle"), py::arg("noise"), py::arg("eavesdropper"));

    // Gaussian mutual information
    m.def("gaussian_mi", &gaussian_mi, py::arg("cov"), py::arg("a"), py::arg("b"));
    m.def("gaussian_conditional_mi", &gaussian_conditional_mi, py::arg("cov"),
          py::arg("a"), py::arg("b"), py::arg("c"));

    // per-slot closed forms
    m.def("unlimited_rate_integrand", &unlimited_rate_integrand, py::arg("d"),
          py::arg("sigma2"), py::arg("sigma_hat2"), py::arg("beacons") = 1);
    m.def("rate_limited_forward_term", &rate_limited_forward_term);
    m.def("rate_limited_backward_term", &rate_limited_backward_term);
    m.def("rate_limited_pair_terms", &rate_limited_pair_terms);
    m.def("public_rate_summand", &public_rate_summand);

    // Monte-Carlo aggregates (pure C++ paths release the GIL)
    m.def(
        "estimate",
        [](const std::function<double(const TriangleSample&)>& integrand,
           const MobilityConfig& mobility, McConfig mc) {
            mc.n_threads = 1;  // python callback; keep it on one thread
            return estimate(integrand, mobility, mc);
        },
        py::arg("integrand"), py::arg("mobility"), py::arg("mc"));
    m.def(
        "inner_bound_unlimited",
        [](const MobilityConfig& mobility, const NoiseModel& noise, const McConfig& mc) {
            return inner_bound_unlimited(mobility, noise, mc);
        },
        py::arg("mobility"), py::arg("noise"), py::arg("mc"),
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "outer_bound_detailed",
        [](const MobilityConfig& mobility, const NoiseModel& noise, const McConfig& mc) {
            return outer_bound_detailed(mobility, noise, mc);
        },
        py::arg("mobility"), py::arg("noise"), py::arg("mc"),
        py::call_guard<py::gil_scoped_release>());
    m.def("outer_bound", &outer_bound, py::arg("mobility"), py::arg("noise"),
          py::arg("mc"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "rate_limited_point",
        [](const MobilityConfig& mobility, const NoiseModel& noise,
           const SplitNoise& split, const PublicRates& budgets, const McConfig& mc) {
            return rate_limited_point(mobility, noise, split, budgets, mc);
        },
        py::arg("mobility"), py::arg("noise"), py::arg("split"), py::arg("budgets"),
        py::arg("mc"), py::call_guard<py::gil_scoped_release>());

    // sweeps
    py::class_<NoiseSweepSpec>(m, "NoiseSweepSpec")
        .def(py::init<>())
        .def_readwrite("grid", &NoiseSweepSpec::grid)
        .def_readwrite("mobility", &NoiseSweepSpec::mobility)
        .def_readwrite("noise", &NoiseSweepSpec::noise)
        .def_readwrite("mc", &NoiseSweepSpec::mc);
    py::class_<NoiseSweepRow>(m, "NoiseSweepRow")
        .def_readonly("sigma2_12", &NoiseSweepRow::sigma2_12)
        .def_readonly("inner", &NoiseSweepRow::inner)
        .def_readonly("outer", &NoiseSweepRow::outer)
        .def_readonly("n_excluded", &NoiseSweepRow::n_excluded);
    m.def("sweep_pair_noise", &sweep_pair_noise,
          py::call_guard<py::gil_scoped_release>());

    py::enum_<AxisPair>(m, "AxisPair")
        .value("R12_R13", AxisPair::R12_R13)
        .value("R12_R23", AxisPair::R12_R23)
        .value("R13_R23", AxisPair::R13_R23);
    m.def("parse_axis_pair", &parse_axis_pair);
    m.def("default_split_grid", &default_split_grid);

    py::class_<TraceSpec>(m, "TraceSpec")
        .def(py::init<>())
        .def_readwrite("axes", &TraceSpec::axes)
        .def_readwrite("budgets", &TraceSpec::budgets)
        .def_readwrite("mobility", &TraceSpec::mobility)
        .def_readwrite("noise", &TraceSpec::noise)
        .def_readwrite("split_grid", &TraceSpec::split_grid)
        .def_readwrite("mc", &TraceSpec::mc)
        .def_readwrite("refine_samples", &TraceSpec::refine_samples);
    py::class_<RegionPoint>(m, "RegionPoint")
        .def_readonly("split", &RegionPoint::split)
        .def_readonly("axis1", &RegionPoint::axis1)
        .def_readonly("axis2", &RegionPoint::axis2)
        .def_readonly("third_best", &RegionPoint::third_best)
        .def_readonly("detail", &RegionPoint::detail)
        .def_readonly("frontier", &RegionPoint::frontier)
        .def_readonly("has_refined", &RegionPoint::has_refined)
        .def_readonly("refined", &RegionPoint::refined);
    py::class_<ProjectedRegion>(m, "ProjectedRegion")
        .def_readonly("axes", &ProjectedRegion::axes)
        .def_readonly("points", &ProjectedRegion::points)
        .def_readonly("n_combos", &ProjectedRegion::n_combos)
        .def_readonly("n_feasible", &ProjectedRegion::n_feasible)
        .def_readonly("n_excluded", &ProjectedRegion::n_excluded)
        .def_readonly("diagnostic", &ProjectedRegion::diagnostic);
    m.def("trace_projection", &trace_projection,
          py::call_guard<py::gil_scoped_release>());

    // discrete-source region
    py::class_<DiscreteSource>(m, "DiscreteSource")
        .def(py::init<>())
        .def_readwrite("alphabet", &DiscreteSource::alphabet)
        .def_readwrite("pmf", &DiscreteSource::pmf)
        .def("validate", &DiscreteSource::validate);
    py::class_<AuxiliaryChannels::Channel>(m, "Channel")
        .def(py::init<>())
        .def_readwrite("outputs", &AuxiliaryChannels::Channel::outputs)
        .def_readwrite("rows", &AuxiliaryChannels::Channel::rows);
    py::class_<AuxiliaryChannels>(m, "AuxiliaryChannels")
        .def(py::init<>())
        .def_readwrite("ch", &AuxiliaryChannels::ch);
    py::class_<RegionCoefficients>(m, "RegionCoefficients")
        .def_readonly("r12", &RegionCoefficients::r12)
        .def_readonly("r21", &RegionCoefficients::r21)
        .def_readonly("r13", &RegionCoefficients::r13)
        .def_readonly("r31", &RegionCoefficients::r31)
        .def_readonly("r23", &RegionCoefficients::r23)
        .def_readonly("r32", &RegionCoefficients::r32)
        .def_readonly("i12", &RegionCoefficients::i12)
        .def_readonly("i13", &RegionCoefficients::i13)
        .def_readonly("i23", &RegionCoefficients::i23)
        .def_readonly("i1", &RegionCoefficients::i1)
        .def_readonly("i2", &RegionCoefficients::i2)
        .def_readonly("i3", &RegionCoefficients::i3)
        .def_readonly("c1", &RegionCoefficients::c1)
        .def_readonly("c2", &RegionCoefficients::c2)
        .def_readonly("c3", &RegionCoefficients::c3)
        .def_readonly("c12", &RegionCoefficients::c12)
        .def_readonly("c13", &RegionCoefficients::c13)
        .def_readonly("c23", &RegionCoefficients::c23)
        .def_readonly("c123", &RegionCoefficients::c123)
        .def("rhs_r12", &RegionCoefficients::rhs_r12)
        .def("rhs_r13", &RegionCoefficients::rhs_r13)
        .def("rhs_r23", &RegionCoefficients::rhs_r23)
        .def("rhs_r12_r13", &RegionCoefficients::rhs_r12_r13)
        .def("rhs_r12_r23", &RegionCoefficients::rhs_r12_r23)
        .def("rhs_r13_r23", &RegionCoefficients::rhs_r13_r23)
        .def("rhs_sum", &RegionCoefficients::rhs_sum);
    m.def("region_coefficients", &region_coefficients, py::arg("source"),
          py::arg("channels"));
    m.def("membership", &membership, py::arg("coefficients"), py::arg("rates"),
          py::arg("budgets"));
    m.def("discrete_from_json_text", [](const std::string& text) {
        const DiscreteInstance inst = discrete_from_json_text(text);
        return py::make_tuple(inst.source, inst.channels);
    });

    // verification harness
    py::class_<SelfCheckReport>(m, "SelfCheckReport")
        .def_readonly("n_draws", &SelfCheckReport::n_draws)
        .def_readonly("max_delta_unlimited", &SelfCheckReport::max_delta_unlimited)
        .def_readonly("max_delta_forward", &SelfCheckReport::max_delta_forward)
        .def_readonly("max_delta_backward", &SelfCheckReport::max_delta_backward)
        .def_readonly("max_delta_constraint", &SelfCheckReport::max_delta_constraint)
        .def_readonly("max_rel_eve_variance", &SelfCheckReport::max_rel_eve_variance)
        .def_readonly("max_rel_heron", &SelfCheckReport::max_rel_heron)
        .def("passed", &SelfCheckReport::pass)
        .def("summary", &SelfCheckReport::summary);
    m.def("run_selfcheck", &run_selfcheck, py::arg("n_draws") = 10000,
          py::arg("seed") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("oracle_unlimited_rate", &oracle_unlimited_rate);
    m.def("oracle_forward_term", &oracle_forward_term);
    m.def("oracle_backward_term", &oracle_backward_term);
    m.def("oracle_public_rate_summand", &oracle_public_rate_summand);
}
