#pragma once

#include <optional>

namespace gapdex {

// Moments of a standard normal truncated below at `threshold`.
struct TruncatedNormalMoments {
    double threshold = 0.0;
    double mean = 0.0;      // phi(z) / (1 - Phi(z))
    double variance = 0.0;  // 1 + z*mean - mean^2
    double skewness = 0.0;  // third central moment / variance^(3/2)
};

// Both sides of one analytic tail inequality, kept so test logs show the
// margin rather than a bare boolean. `mid` is set only by
// eval_mills_bounds, where the bracketed quantity sits between two bounds.
// `eps` is NaN where the inequality has no epsilon.
struct InequalityCheck {
    double x = 0.0;
    double eps = 0.0;
    double lhs = 0.0;
    std::optional<double> mid;
    double rhs = 0.0;
    bool holds = false;
};

// Standard normal density, (2*pi)^(-1/2) * exp(-z^2/2).
double std_normal_pdf(double z);

// Standard normal distribution function Phi(z).
double std_normal_cdf(double z);

// 1 - Phi(z) without cancellation; accurate deep into the tail.
double std_normal_upper_tail(double z);

// Inverse of std_normal_cdf on (0, 1).
double std_normal_quantile(double p);

// phi(z) / (1 - Phi(z)), the mean of a standard normal truncated below at
// z. Stable for all finite z, including far beyond the range where the
// density and tail underflow individually.
double mills_ratio(double z);

// Mean, variance, and skewness of the z-truncated standard normal, from
// closed-form moment recursions.
TruncatedNormalMoments truncated_moments(double z);

// Phi(x + eps/x) - Phi(x) >= eps * phi(x + eps/x) / x, for x, eps > 0.
InequalityCheck eval_gap_bound(double x, double eps);

// x/(1+x^2) * phi(x) < 1 - Phi(x) < phi(x)/x, both strict, for x > 0.
InequalityCheck eval_mills_bounds(double x);

// (Phi(x + eps/x) - Phi(x)) / (1 - Phi(x)) >= eps * exp(-eps^2/(2x^2) - eps).
InequalityCheck eval_ratio_bound(double x, double eps);

// (1 - eps*exp(-1.5*eps))^m, the tail bound for the product of an upper
// order statistic with its following spacing; m >= 1, eps > 0.
double lemma31_bound(double eps, long m);

}  // namespace gapdex
