#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "gapdex/decompose.hpp"
#include "gapdex/errors.hpp"
#include "gapdex/gumbel.hpp"
#include "gapdex/io.hpp"
#include "gapdex/montecarlo.hpp"
#include "gapdex/normal.hpp"
#include "gapdex/reports.hpp"
#include "gapdex/rng.hpp"
#include "gapdex/spacings.hpp"

namespace py = pybind11;
using namespace gapdex;

namespace {

DetectionOutput detect(std::vector<double> values) {
    Sample s = make_sample(std::move(values));
    const VarianceDecomposition d = decompose(s);
    const ClusterSplit split = cluster_index(d, s);
    const GumbelTest test = cluster_test(s.n(), split.statistic);
    return make_detection_output(s, d, split, test);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gap-based cluster detection: spacing statistics, the variance "
              "decomposition split, its extreme-value calibration, and the "
              "deterministic replication engine.";

    py::register_exception<degenerate_sample_error>(m, "DegenerateSampleError", PyExc_ValueError);
    py::register_exception<io_error>(m, "IoError", PyExc_IOError);
    py::register_exception<data_error>(m, "DataError", PyExc_ValueError);

    py::class_<Sample>(m, "Sample", "Sorted, validated univariate sample")
        .def(py::init<std::vector<double>>(), py::arg("values"))
        .def_property_readonly("n", &Sample::n)
        .def_property_readonly("values", &Sample::values)
        .def("order_stat", &Sample::order_stat, py::arg("i"),
             "1-based order statistic")
        .def("lower_mean", &Sample::lower_mean, py::arg("i"))
        .def("upper_mean", &Sample::upper_mean, py::arg("i"))
        .def("mean", &Sample::mean);

    py::class_<SpacingSet>(m, "SpacingSet")
        .def_readonly("gaps", &SpacingSet::gaps)
        .def_readonly("sorted_desc", &SpacingSet::sorted_desc)
        .def_readonly("n", &SpacingSet::n);
    m.def("spacings", &spacings, py::arg("sample"));
    m.def("kth_max_spacing", &kth_max_spacing, py::arg("spacings"), py::arg("k"));
    m.def("segment_means", &segment_means, py::arg("sample"), py::arg("i"));

    py::class_<DecompositionComponent>(m, "DecompositionComponent")
        .def_readonly("index", &DecompositionComponent::index)
        .def_readonly("weight", &DecompositionComponent::weight)
        .def_readonly("mean_gap", &DecompositionComponent::mean_gap)
        .def_readonly("spacing", &DecompositionComponent::spacing)
        .def_readonly("raw", &DecompositionComponent::raw)
        .def_readonly("standardized", &DecompositionComponent::standardized);
    py::class_<VarianceDecomposition>(m, "VarianceDecomposition")
        .def_readonly("components", &VarianceDecomposition::components)
        .def_readonly("sample_variance", &VarianceDecomposition::sample_variance)
        .def_readonly("n", &VarianceDecomposition::n);
    py::class_<ClusterSplit>(m, "ClusterSplit")
        .def_readonly("j", &ClusterSplit::j)
        .def_readonly("statistic", &ClusterSplit::statistic)
        .def_readonly("separator_low", &ClusterSplit::separator_low)
        .def_readonly("separator_high", &ClusterSplit::separator_high)
        .def_readonly("cluster1", &ClusterSplit::cluster1)
        .def_readonly("cluster2", &ClusterSplit::cluster2);
    m.def("decompose", &decompose, py::arg("sample"));
    m.def("cluster_index", &cluster_index, py::arg("decomposition"), py::arg("sample"));
    m.def(
        "cluster_statistic",
        [](std::vector<double> sorted_values) {
            return cluster_statistic(std::span<const double>(sorted_values));
        },
        py::arg("sorted_values"), "Statistic of an already sorted sample");

    py::class_<GumbelTest>(m, "GumbelTest")
        .def_readonly("n", &GumbelTest::n)
        .def_readonly("statistic", &GumbelTest::statistic)
        .def_readonly("x", &GumbelTest::x)
        .def_readonly("p_value", &GumbelTest::p_value);
    m.def("cluster_test", &cluster_test, py::arg("n"), py::arg("statistic"));
    m.def("gumbel_cdf", &gumbel_cdf, py::arg("x"));
    m.def("gumbel_quantile", &gumbel_quantile, py::arg("p"));
    m.def("half_limit_cdf", &half_limit_cdf, py::arg("x"));

    py::class_<TruncatedNormalMoments>(m, "TruncatedNormalMoments")
        .def_readonly("threshold", &TruncatedNormalMoments::threshold)
        .def_readonly("mean", &TruncatedNormalMoments::mean)
        .def_readonly("variance", &TruncatedNormalMoments::variance)
        .def_readonly("skewness", &TruncatedNormalMoments::skewness);
    m.def("std_normal_pdf", &std_normal_pdf, py::arg("z"));
    m.def("std_normal_cdf", &std_normal_cdf, py::arg("z"));
    m.def("std_normal_upper_tail", &std_normal_upper_tail, py::arg("z"));
    m.def("std_normal_quantile", &std_normal_quantile, py::arg("p"));
    m.def("mills_ratio", &mills_ratio, py::arg("z"));
    m.def("truncated_moments", &truncated_moments, py::arg("z"));
    m.def("lemma31_bound", &lemma31_bound, py::arg("eps"), py::arg("m"));

    py::class_<RandomStream>(m, "RandomStream",
                             "Counter-based stream; (seed, index) fixes the whole stream")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("index"))
        .def("next_raw", &RandomStream::next_raw)
        .def("next_uniform", &RandomStream::next_uniform)
        .def("next_normal", &RandomStream::next_normal);
    m.def("substream", &substream, py::arg("seed"), py::arg("index"));
    m.def(
        "sample_std_normal",
        [](RandomStream& stream, std::size_t n) { return sample_std_normal(stream, n); },
        py::arg("stream"), py::arg("n"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init([](std::size_t n, std::size_t reps, std::uint64_t seed,
                         std::vector<double> grid) {
                 return SimConfig{n, reps, seed, std::move(grid)};
             }),
             py::arg("n"), py::arg("reps"), py::arg("seed"), py::arg("grid"))
        .def_readonly("n", &SimConfig::n)
        .def_readonly("reps", &SimConfig::reps)
        .def_readonly("seed", &SimConfig::seed)
        .def_readonly("grid", &SimConfig::grid);
    py::class_<MonteCarloReport>(m, "MonteCarloReport")
        .def_readonly("config", &MonteCarloReport::config)
        .def_readonly("reference", &MonteCarloReport::reference)
        .def_readonly("empirical_cdf", &MonteCarloReport::empirical_cdf)
        .def_readonly("reference_cdf", &MonteCarloReport::reference_cdf)
        .def_readonly("ks_distance", &MonteCarloReport::ks_distance)
        .def_readonly("quantiles", &MonteCarloReport::quantiles)
        .def_readonly("excluded", &MonteCarloReport::excluded)
        .def("to_json", [](const MonteCarloReport& r) { return to_json(r); });
    py::class_<LemmaCheckCase>(m, "LemmaCheckCase")
        .def_readonly("name", &LemmaCheckCase::name)
        .def_readonly("parameters", &LemmaCheckCase::parameters)
        .def_readonly("empirical", &LemmaCheckCase::empirical)
        .def_readonly("reference", &LemmaCheckCase::reference)
        .def_readonly("standard_error", &LemmaCheckCase::standard_error)
        .def_readonly("pass", &LemmaCheckCase::pass);
    py::class_<LemmaCheckReport>(m, "LemmaCheckReport")
        .def_readonly("check", &LemmaCheckReport::check)
        .def_readonly("cases", &LemmaCheckReport::cases)
        .def_readonly("overall_pass", &LemmaCheckReport::overall_pass)
        .def_readonly("indeterminate", &LemmaCheckReport::indeterminate)
        .def_readonly("excluded", &LemmaCheckReport::excluded)
        .def("to_json", [](const LemmaCheckReport& r) { return to_json(r); });
    m.def("simulate_cluster_statistic", &simulate_cluster_statistic, py::arg("config"),
          py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("simulate_half_statistic", &simulate_half_statistic, py::arg("config"),
          py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());
    m.def(
        "verify_lemma31",
        [](std::size_t n, std::vector<std::size_t> i_list, double eps, std::size_t reps,
           std::uint64_t seed, std::size_t workers) {
            py::gil_scoped_release release;
            return verify_lemma31(n, i_list, eps, reps, seed, workers);
        },
        py::arg("n"), py::arg("i_list"), py::arg("eps"), py::arg("reps"), py::arg("seed"),
        py::arg("workers") = 1);
    m.def("verify_uniform_ratio", &verify_uniform_ratio, py::arg("n"), py::arg("reps"),
          py::arg("seed"), py::arg("exponent_offset") = 0, py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "max_spacing_scaling",
        [](std::vector<std::size_t> n_list, std::size_t reps, std::uint64_t seed,
           std::size_t workers) {
            py::gil_scoped_release release;
            return max_spacing_scaling(n_list, reps, seed, workers);
        },
        py::arg("n_list"), py::arg("reps"), py::arg("seed"), py::arg("workers") = 1);
    m.def("ks_critical_value", &ks_critical_value, py::arg("count"), py::arg("alpha"));
    m.def(
        "empirical_cdf",
        [](std::vector<double> samples, std::vector<double> grid) {
            return empirical_cdf(samples, grid);
        },
        py::arg("samples"), py::arg("grid"));

    py::class_<ComponentSummary>(m, "ComponentSummary")
        .def_readonly("index", &ComponentSummary::index)
        .def_readonly("standardized", &ComponentSummary::standardized);
    py::class_<InputDigest>(m, "InputDigest")
        .def_readonly("count", &InputDigest::count)
        .def_readonly("min", &InputDigest::min)
        .def_readonly("max", &InputDigest::max)
        .def_readonly("mean", &InputDigest::mean)
        .def_readonly("variance", &InputDigest::variance);
    py::class_<ProjectionInfo>(m, "ProjectionInfo")
        .def_readonly("index", &ProjectionInfo::index)
        .def_readonly("direction", &ProjectionInfo::direction)
        .def_readonly("directions_tried", &ProjectionInfo::directions_tried)
        .def_readonly("skipped", &ProjectionInfo::skipped);
    py::class_<DetectionOutput>(m, "DetectionOutput")
        .def_readonly("split", &DetectionOutput::split)
        .def_readonly("test", &DetectionOutput::test)
        .def_readonly("top_components", &DetectionOutput::top_components)
        .def_readonly("digest", &DetectionOutput::digest)
        .def_readonly("projection", &DetectionOutput::projection)
        .def("to_json", [](const DetectionOutput& o) { return to_json(o); });
    m.def("detect", &detect, py::arg("values"),
          "Sort, split, and test one numeric series");

    m.def("load_series", &load_series, py::arg("path"),
          py::arg("column") = std::nullopt);
    m.def(
        "load_matrix", [](const std::string& path) { return load_matrix(path); },
        py::arg("path"));
    m.def("parse_grid", &parse_grid, py::arg("text"));
}
