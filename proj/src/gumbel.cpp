#include "gapdex/gumbel.hpp"

#include <cmath>
#include <stdexcept>

namespace gapdex {

namespace {

void require_finite(double x, const char* fn) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(fn) + ": argument must be finite");
    }
}

}  // namespace

double gumbel_cdf(double x) {
    require_finite(x, "gumbel_cdf");
    return std::exp(-std::exp(-x));
}

double gumbel_quantile(double p) {
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0) {
        throw std::domain_error("gumbel_quantile: p must lie in (0, 1)");
    }
    return -std::log(-std::log(p));
}

double half_limit_cdf(double x) {
    require_finite(x, "half_limit_cdf");
    return std::exp(-0.5 * std::exp(-x));
}

GumbelTest cluster_test(std::size_t n, double statistic) {
    if (n < 2) {
        throw std::invalid_argument("cluster_test: n must be >= 2");
    }
    // Slack of a few ulps above 1: the statistic is a ratio of two sums
    // that agree only to round-off when the largest component dominates.
    if (!(statistic > 0.0) || statistic > 1.0 + 1e-9) {
        throw std::domain_error("cluster_test: statistic must lie in (0, 1]");
    }
    GumbelTest t;
    t.n = n;
    t.statistic = statistic;
    t.x = static_cast<double>(n) * statistic - std::log(static_cast<double>(n));
    // -expm1(-e^{-x}) degrades gracefully at both ends: x large gives
    // e^{-x} itself (never a premature 0), x very negative gives exactly 1.
    t.p_value = -std::expm1(-std::exp(-t.x));
    return t;
}

}  // namespace gapdex
