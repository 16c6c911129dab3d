#pragma once

#include <cstddef>

namespace gapdex {

// Significance test of a cluster-index value against the extreme-value
// null calibration. pValue is the upper tail: large statistics give small
// p-values.
struct GumbelTest {
    std::size_t n = 0;
    double statistic = 0.0;  // cluster index, in (0, 1]
    double x = 0.0;          // n * statistic - log n
    double p_value = 0.0;    // 1 - exp(-exp(-x))
};

// exp(-exp(-x)); strictly increasing on the reals.
double gumbel_cdf(double x);

// Inverse of gumbel_cdf on (0, 1): -log(-log p).
double gumbel_quantile(double p);

// exp(-0.5 * exp(-x)); satisfies half_limit_cdf(x)^2 = gumbel_cdf(x).
double half_limit_cdf(double x);

// Centers the statistic as x = n * statistic - log n and reports the
// upper-tail p-value. Round-off a hair above 1 in `statistic` is accepted;
// genuinely out-of-range values throw std::domain_error.
GumbelTest cluster_test(std::size_t n, double statistic);

}  // namespace gapdex
