#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace gapdex {

// Validated univariate sample, sorted ascending, with compensated prefix
// sums so any segment mean is O(1). Immutable after construction.
class Sample {
  public:
    // Sorts a copy of `raw`. Throws std::invalid_argument when fewer than
    // two observations are given and data_error on non-finite values.
    explicit Sample(std::vector<double> raw);

    std::size_t n() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

    // 1-based order statistic; 1 <= i <= n.
    double order_stat(std::size_t i) const;

    // Compensated sum of the i smallest observations; 0 <= i <= n.
    double prefix_sum(std::size_t i) const;

    // Mean of the i smallest observations; 1 <= i <= n.
    double lower_mean(std::size_t i) const;

    // Mean of the n-i largest observations; 0 <= i <= n-1.
    double upper_mean(std::size_t i) const;

    double mean() const;

  private:
    std::vector<double> values_;
    std::vector<double> prefix_;  // prefix_[i] = sum of values_[0..i)
};

// Consecutive gaps of a sample plus the same gaps sorted descending, so
// the k-th largest spacing is an O(1) lookup.
struct SpacingSet {
    std::vector<double> gaps;         // gaps[i] = X_(i+2) - X_(i+1), 0-based
    std::vector<double> sorted_desc;  // permutation of gaps, nonincreasing
    std::size_t n = 0;                // source sample size
};

Sample make_sample(std::vector<double> raw);

SpacingSet spacings(const Sample& s);

// k-th largest gap, 1-based; k = 1 is the maximum spacing.
double kth_max_spacing(const SpacingSet& sp, std::size_t k);

// (mean of the i smallest, mean of the n-i largest); 1 <= i <= n-1.
std::pair<double, double> segment_means(const Sample& s, std::size_t i);

}  // namespace gapdex
