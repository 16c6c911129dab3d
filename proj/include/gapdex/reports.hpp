#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gapdex/decompose.hpp"
#include "gapdex/gumbel.hpp"
#include "gapdex/montecarlo.hpp"

namespace gapdex {

struct InputDigest {
    std::size_t count = 0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double variance = 0.0;  // 1/n denominator, matching the decomposition
};

struct ComponentSummary {
    std::size_t index = 0;
    double standardized = 0.0;
};

// Present only for projection scans: which direction won and how many
// were tried. The p-value is per-direction; no multiplicity correction.
struct ProjectionInfo {
    std::size_t index = 0;
    std::vector<double> direction;
    std::size_t directions_tried = 0;
    std::size_t skipped = 0;  // constant projections
};

struct DetectionOutput {
    ClusterSplit split;
    GumbelTest test;
    std::vector<ComponentSummary> top_components;  // top 5 by standardized value
    InputDigest digest;
    std::optional<ProjectionInfo> projection;
};

DetectionOutput make_detection_output(const Sample& s, const VarianceDecomposition& d,
                                      const ClusterSplit& split, const GumbelTest& test);

// JSON with every number at 17 significant digits, so parse(emit(x))
// reproduces x exactly. Non-finite values encode as null.
std::string to_json(const DetectionOutput& o);
std::string to_json(const MonteCarloReport& r);
std::string to_json(const LemmaCheckReport& r);
std::string to_json(const std::vector<LemmaCheckReport>& reports);

DetectionOutput detection_from_json(const std::string& text);
MonteCarloReport montecarlo_from_json(const std::string& text);
LemmaCheckReport lemmacheck_from_json(const std::string& text);

// CSV: a key,value block for scalars, a blank line, then a plot-ready table.
std::string to_csv(const DetectionOutput& o);
std::string to_csv(const MonteCarloReport& r);
std::string to_csv(const LemmaCheckReport& r);

}  // namespace gapdex
