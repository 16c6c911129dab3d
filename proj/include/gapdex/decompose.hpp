#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gapdex/spacings.hpp"

namespace gapdex {

// One term of the variance identity at split index i (1-based).
struct DecompositionComponent {
    std::size_t index = 0;
    double weight = 0.0;        // i(n-i)/n^2
    double mean_gap = 0.0;      // upper segment mean - lower segment mean
    double spacing = 0.0;       // X_(i+1) - X_(i)
    double raw = 0.0;           // weight * mean_gap * spacing
    double standardized = 0.0;  // raw / sample_variance
};

// The n-1 components whose raw values sum to the sample variance
// (1/n denominator). Standardized components are nonnegative and sum to 1.
struct VarianceDecomposition {
    std::vector<DecompositionComponent> components;
    double sample_variance = 0.0;
    std::size_t n = 0;
};

// The split at the argmax standardized component. Index ranges are 1-based
// inclusive; cluster1 and cluster2 partition [1, n].
struct ClusterSplit {
    std::size_t j = 0;              // smallest argmax index
    double statistic = 0.0;         // max standardized component, in (0, 1]
    double separator_low = 0.0;     // X_(j)
    double separator_high = 0.0;    // X_(j+1)
    std::pair<std::size_t, std::size_t> cluster1;  // [1, j]
    std::pair<std::size_t, std::size_t> cluster2;  // [j+1, n]
};

// Throws degenerate_sample_error when the sample variance is zero.
VarianceDecomposition decompose(const Sample& s);

// Ties at the max raw component resolve to the smallest index.
ClusterSplit cluster_index(const VarianceDecomposition& d, const Sample& s);

// Statistic-only fast path for simulation loops: same accumulation order
// as decompose + cluster_index, so the result is bit-identical to the
// full pipeline. Precondition: `sorted_values` ascending and finite.
double cluster_statistic(std::span<const double> sorted_values);

}  // namespace gapdex
