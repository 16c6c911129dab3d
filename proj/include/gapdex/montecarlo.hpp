#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gapdex {

// Replication parameters. Reports are a pure function of this config:
// worker count never enters the output.
struct SimConfig {
    std::size_t n = 0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    std::vector<double> grid;  // evaluation points, sorted ascending
};

struct MonteCarloReport {
    SimConfig config;
    std::string reference;               // name of the reference CDF
    std::vector<double> empirical_cdf;   // on config.grid
    std::vector<double> reference_cdf;   // reference CDF on config.grid
    double ks_distance = 0.0;
    std::vector<std::pair<double, double>> quantiles;  // (prob, value)
    std::size_t excluded = 0;            // degenerate replicates dropped
};

struct LemmaCheckCase {
    std::string name;
    std::vector<std::pair<std::string, double>> parameters;
    double empirical = 0.0;
    double reference = 0.0;       // bound, critical value, or paired value
    double standard_error = 0.0;  // NaN where no binomial error applies
    bool pass = false;
};

struct LemmaCheckReport {
    std::string check;
    std::vector<LemmaCheckCase> cases;
    bool overall_pass = false;
    bool indeterminate = false;  // replicate count too small for the thresholds
    std::size_t excluded = 0;
};

// Runs fn(replicateIndex, row) for every replicate, any number of workers.
// Rows are indexed by replicate, so output is schedule-independent. fn must
// be thread-safe; it signals an excluded replicate by writing NaN.
void run_replicates(std::size_t reps, std::size_t row_width, std::size_t workers,
                    std::vector<double>& out,
                    const std::function<void(std::size_t, std::span<double>)>& fn);

// Fraction of samples <= g for each grid point g. Sorts an internal copy
// unless `samples` is already ascending.
std::vector<double> empirical_cdf(std::span<const double> samples, std::span<const double> grid);

// sup over sorted sample points of the two one-sided ECDF deviations.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& reference_cdf);

// Two-sided KS critical value at significance alpha for N observations.
double ks_critical_value(std::size_t count, double alpha);

// Empirical CDF of n*I_n - log n over the replicates, against the
// extreme-value reference. Degenerate replicates (flat samples) are
// excluded and counted; more than 0.1% of them is an error.
MonteCarloReport simulate_cluster_statistic(const SimConfig& cfg, std::size_t workers = 1);

// Positive-side max of (n-i) * gap * hazard, centered by log n, against
// the square root of the extreme-value reference. Replicates with no
// positive observation below the maximum are excluded and counted.
MonteCarloReport simulate_half_statistic(const SimConfig& cfg, std::size_t workers = 1);

// Empirical frequency of {Z_(i) * (Z_(i+1) - Z_(i)) > eps} against the
// analytic bound (1 - eps*e^{-1.5 eps})^{n-i}, for each i in i_list.
// Every i must satisfy n/2 < i <= n-1.
LemmaCheckReport verify_lemma31(std::size_t n, std::span<const std::size_t> i_list, double eps,
                                std::size_t reps, std::uint64_t seed, std::size_t workers = 1);

// Pools the n-1 ratio powers of upper-tail order statistics per replicate
// and KS-tests them against Uniform(0,1). exponent_offset deliberately
// mis-specifies the power (correct value 0); nonzero offsets are the
// negative control and should fail.
LemmaCheckReport verify_uniform_ratio(std::size_t n, std::size_t reps, std::uint64_t seed,
                                      int exponent_offset = 0, std::size_t workers = 1);

// Per sample size: distribution summary of sqrt(2 log n) * (max spacing),
// and KS distance of the scaled top-10 spacings to the unit exponential.
// Sizes must be >= 100 and strictly increasing; medians beyond n = 1000
// must not increase by more than Monte Carlo noise.
LemmaCheckReport max_spacing_scaling(std::span<const std::size_t> n_list, std::size_t reps,
                                     std::uint64_t seed, std::size_t workers = 1);

}  // namespace gapdex
