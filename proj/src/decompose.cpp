#include "gapdex/decompose.hpp"

#include <cassert>
#include <stdexcept>

#include "gapdex/accumulate.hpp"
#include "gapdex/errors.hpp"

namespace gapdex {

namespace {

double variance_of(std::span<const double> values, double mean) {
    Accumulator acc;
    for (double v : values) {
        const double d = v - mean;
        acc.add(d * d);
    }
    return acc.total() / static_cast<double>(values.size());
}

}  // namespace

VarianceDecomposition decompose(const Sample& s) {
    const std::size_t n = s.n();
    // min == max is the exact zero-variance test for a sorted sample; the
    // accumulated variance alone can round to a positive sliver.
    if (s.order_stat(1) == s.order_stat(n)) {
        throw degenerate_sample_error("decompose: sample variance is zero");
    }
    const double total = s.prefix_sum(n);
    const double mean = total / static_cast<double>(n);
    const double variance = variance_of(s.values(), mean);
    if (variance <= 0.0) {
        throw degenerate_sample_error("decompose: sample variance is zero");
    }
    VarianceDecomposition d;
    d.n = n;
    d.sample_variance = variance;
    d.components.reserve(n - 1);
    const double dn = static_cast<double>(n);
    for (std::size_t i = 1; i < n; ++i) {
        DecompositionComponent c;
        c.index = i;
        c.weight = (static_cast<double>(i) * static_cast<double>(n - i)) / (dn * dn);
        const double lower = s.prefix_sum(i) / static_cast<double>(i);
        const double upper = (total - s.prefix_sum(i)) / static_cast<double>(n - i);
        c.mean_gap = upper - lower;
        c.spacing = s.order_stat(i + 1) - s.order_stat(i);
        c.raw = c.weight * c.mean_gap * c.spacing;
        c.standardized = c.raw / variance;
        d.components.push_back(c);
    }
    return d;
}

ClusterSplit cluster_index(const VarianceDecomposition& d, const Sample& s) {
    if (d.n != s.n() || d.components.size() + 1 != s.n()) {
        throw std::invalid_argument("cluster_index: decomposition does not match sample");
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < d.components.size(); ++k) {
        if (d.components[k].raw > d.components[best].raw) {
            best = k;
        }
    }
    const DecompositionComponent& c = d.components[best];
    ClusterSplit split;
    split.j = c.index;
    split.statistic = c.standardized;
    split.separator_low = s.order_stat(c.index);
    split.separator_high = s.order_stat(c.index + 1);
    split.cluster1 = {1, c.index};
    split.cluster2 = {c.index + 1, d.n};
    return split;
}

double cluster_statistic(std::span<const double> sorted_values) {
    const std::size_t n = sorted_values.size();
    if (n < 2) {
        throw std::invalid_argument("cluster_statistic: need at least 2 observations");
    }
    if (sorted_values.front() == sorted_values.back()) {
        throw degenerate_sample_error("cluster_statistic: sample variance is zero");
    }
    Accumulator total_acc;
    for (double v : sorted_values) {
        total_acc.add(v);
    }
    const double total = total_acc.total();
    const double mean = total / static_cast<double>(n);
    const double variance = variance_of(sorted_values, mean);
    if (variance <= 0.0) {
        throw degenerate_sample_error("cluster_statistic: sample variance is zero");
    }
    const double dn = static_cast<double>(n);
    Accumulator prefix;
    double best_raw = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        prefix.add(sorted_values[i - 1]);
        const double p = prefix.total();
        const double weight = (static_cast<double>(i) * static_cast<double>(n - i)) / (dn * dn);
        const double lower = p / static_cast<double>(i);
        const double upper = (total - p) / static_cast<double>(n - i);
        const double raw = weight * (upper - lower) * (sorted_values[i] - sorted_values[i - 1]);
        if (i == 1 || raw > best_raw) {
            best_raw = raw;
        }
    }
    return best_raw / variance;
}

}  // namespace gapdex
