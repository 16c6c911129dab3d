#include "gapdex/normal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gapdex {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;  // 1/sqrt(2*pi)
constexpr double kInvSqrt2 = 0.7071067811865475244008444;    // 1/sqrt(2)

void require_finite(double z, const char* fn) {
    if (!std::isfinite(z)) {
        throw std::domain_error(std::string(fn) + ": argument must be finite");
    }
}

void require_positive(double v, const char* fn, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw std::domain_error(std::string(fn) + ": " + name + " must be finite and > 0");
    }
}

// Wichura's AS 241 rational approximations (PPND16), |relative error|
// below 1e-15 over the full open unit interval.
double as241_quantile(double p) {
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) *
                        r +
                    4.5921953931549871457e+4) *
                       r +
                   1.3731693765509461125e+4) *
                      r +
                  1.9715909503065514427e+3) *
                     r +
                 1.3314166789178437745e+2) *
                    r +
                3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) *
                        r +
                    2.1213794301586595867e+4) *
                       r +
                   5.3941960214247511077e+3) *
                      r +
                  6.8718700749205790830e+2) *
                     r +
                 4.2313330701600911252e+1) *
                    r +
                1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        z = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) *
                     r +
                 1.27045825245236838258e+0) *
                    r +
                3.64784832476320460504e+0) *
                   r +
               5.76949722146069140550e+0) *
                  r +
              4.63033784615654529590e+0) *
                 r +
             1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) *
                     r +
                 1.48103976427480074590e-1) *
                    r +
                6.89767334985100004550e-1) *
                   r +
               1.67638483018380384940e+0) *
                  r +
              2.05319162663775882187e+0) *
                 r +
             1.0);
    } else {
        r -= 5.0;
        z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) *
                     r +
                 2.65321895265761230930e-2) *
                    r +
                2.96560571828504891230e-1) *
                   r +
               1.78482653991729133580e+0) *
                  r +
              5.46378491116411436990e+0) *
                 r +
             6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) *
                     r +
                 7.86869131145613259100e-4) *
                    r +
                1.48753612908506148525e-2) *
                   r +
               1.36929880922735805310e-1) *
                  r +
              5.99832206555887937690e-1) *
                 r +
             1.0);
    }
    return q < 0.0 ? -z : z;
}

}  // namespace

double std_normal_pdf(double z) {
    require_finite(z, "std_normal_pdf");
    return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double std_normal_cdf(double z) {
    require_finite(z, "std_normal_cdf");
    return 0.5 * std::erfc(-z * kInvSqrt2);
}

double std_normal_upper_tail(double z) {
    require_finite(z, "std_normal_upper_tail");
    return 0.5 * std::erfc(z * kInvSqrt2);
}

double std_normal_quantile(double p) {
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0) {
        throw std::domain_error("std_normal_quantile: p must lie in (0, 1)");
    }
    return as241_quantile(p);
}

double mills_ratio(double z) {
    require_finite(z, "mills_ratio");
    if (z < 30.0) {
        return std_normal_pdf(z) / std_normal_upper_tail(z);
    }
    // Laplace continued fraction for the hazard: phi/(1-Phi) evaluated
    // without forming either factor, which both underflow past z ~ 38.
    double f = 0.0;
    for (int k = 60; k >= 1; --k) {
        f = static_cast<double>(k) / (z + f);
    }
    return z + f;
}

TruncatedNormalMoments truncated_moments(double z) {
    require_finite(z, "truncated_moments");
    const double h = mills_ratio(z);
    const double variance = 1.0 + z * h - h * h;
    // Raw-moment recursion m_k = (k-1) m_{k-2} + z^{k-1} h for the
    // z-truncated standard normal.
    const double m2 = 1.0 + z * h;
    const double m3 = (2.0 + z * z) * h;
    const double mu3 = m3 - 3.0 * h * m2 + 2.0 * h * h * h;
    const double skewness = mu3 / (variance * std::sqrt(variance));
    return {z, h, variance, skewness};
}

InequalityCheck eval_gap_bound(double x, double eps) {
    require_positive(x, "eval_gap_bound", "x");
    require_positive(eps, "eval_gap_bound", "eps");
    const double shifted = x + eps / x;
    // Phi(x + eps/x) - Phi(x) as a difference of upper tails, which is
    // cancellation-free for positive x.
    const double lhs = std_normal_upper_tail(x) - std_normal_upper_tail(shifted);
    const double rhs = eps * std_normal_pdf(shifted) / x;
    return {x, eps, lhs, std::nullopt, rhs, lhs >= rhs};
}

InequalityCheck eval_mills_bounds(double x) {
    require_positive(x, "eval_mills_bounds", "x");
    const double density = std_normal_pdf(x);
    const double lhs = x * density / (1.0 + x * x);
    const double mid = std_normal_upper_tail(x);
    const double rhs = density / x;
    return {x, std::numeric_limits<double>::quiet_NaN(), lhs, mid, rhs, lhs < mid && mid < rhs};
}

InequalityCheck eval_ratio_bound(double x, double eps) {
    require_positive(x, "eval_ratio_bound", "x");
    require_positive(eps, "eval_ratio_bound", "eps");
    const double shifted = x + eps / x;
    const double tail_x = std_normal_upper_tail(x);
    const double lhs = (tail_x - std_normal_upper_tail(shifted)) / tail_x;
    const double rhs = eps * std::exp(-0.5 * eps * eps / (x * x) - eps);
    return {x, eps, lhs, std::nullopt, rhs, lhs >= rhs};
}

double lemma31_bound(double eps, long m) {
    require_positive(eps, "lemma31_bound", "eps");
    if (m < 1) {
        throw std::domain_error("lemma31_bound: exponent m must be >= 1");
    }
    const double base = 1.0 - eps * std::exp(-1.5 * eps);
    return std::pow(base, static_cast<double>(m));
}

}  // namespace gapdex
