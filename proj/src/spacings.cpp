#include "gapdex/spacings.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "gapdex/accumulate.hpp"
#include "gapdex/errors.hpp"

namespace gapdex {

Sample::Sample(std::vector<double> raw) : values_(std::move(raw)) {
    if (values_.size() < 2) {
        throw std::invalid_argument("make_sample: need at least 2 observations, got " +
                                    std::to_string(values_.size()));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw data_error("make_sample: observations must be finite");
        }
    }
    std::sort(values_.begin(), values_.end());
    prefix_.resize(values_.size() + 1);
    prefix_[0] = 0.0;
    Accumulator acc;
    for (std::size_t k = 0; k < values_.size(); ++k) {
        acc.add(values_[k]);
        prefix_[k + 1] = acc.total();
    }
}

double Sample::order_stat(std::size_t i) const {
    if (i < 1 || i > values_.size()) {
        throw std::out_of_range("order_stat: index must lie in [1, n]");
    }
    return values_[i - 1];
}

double Sample::prefix_sum(std::size_t i) const {
    if (i > values_.size()) {
        throw std::out_of_range("prefix_sum: index must lie in [0, n]");
    }
    return prefix_[i];
}

double Sample::lower_mean(std::size_t i) const {
    if (i < 1 || i > values_.size()) {
        throw std::out_of_range("lower_mean: index must lie in [1, n]");
    }
    return prefix_[i] / static_cast<double>(i);
}

double Sample::upper_mean(std::size_t i) const {
    if (i >= values_.size()) {
        throw std::out_of_range("upper_mean: index must lie in [0, n-1]");
    }
    return (prefix_.back() - prefix_[i]) / static_cast<double>(values_.size() - i);
}

double Sample::mean() const { return prefix_.back() / static_cast<double>(values_.size()); }

Sample make_sample(std::vector<double> raw) { return Sample(std::move(raw)); }

SpacingSet spacings(const Sample& s) {
    SpacingSet sp;
    sp.n = s.n();
    sp.gaps.resize(sp.n - 1);
    const auto& v = s.values();
    for (std::size_t i = 0; i + 1 < sp.n; ++i) {
        sp.gaps[i] = v[i + 1] - v[i];
    }
    sp.sorted_desc = sp.gaps;
    std::sort(sp.sorted_desc.begin(), sp.sorted_desc.end(), std::greater<double>());
    return sp;
}

double kth_max_spacing(const SpacingSet& sp, std::size_t k) {
    if (k < 1 || k > sp.sorted_desc.size()) {
        throw std::out_of_range("kth_max_spacing: k must lie in [1, n-1]");
    }
    return sp.sorted_desc[k - 1];
}

std::pair<double, double> segment_means(const Sample& s, std::size_t i) {
    if (i < 1 || i >= s.n()) {
        throw std::out_of_range("segment_means: split index must lie in [1, n-1]");
    }
    return {s.lower_mean(i), s.upper_mean(i)};
}

}  // namespace gapdex
