#include "gapdex/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

#include "gapdex/decompose.hpp"
#include "gapdex/errors.hpp"
#include "gapdex/gumbel.hpp"
#include "gapdex/normal.hpp"
#include "gapdex/rng.hpp"

namespace gapdex {

namespace {

constexpr double kQuantileProbs[] = {0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99};

// The iid KS critical value is unreachable for the pooled top-spacing fit
// at feasible sizes: the exponential description of the j-th largest gap
// carries a scale bias that decays only like 1/log n. Envelope frozen from
// a reference run over n in [10^3, 10^4], j <= 10 (observed ~0.10 at
// n = 10^3, decreasing in n), with headroom for replicate noise.
constexpr double kTopSpacingKsEnvelope = 0.15;

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_config(const SimConfig& cfg, std::size_t min_n, const char* fn) {
    if (cfg.n < min_n) {
        throw std::invalid_argument(std::string(fn) + ": n must be >= " + std::to_string(min_n));
    }
    if (cfg.reps < 1) {
        throw std::invalid_argument(std::string(fn) + ": reps must be >= 1");
    }
    if (cfg.grid.empty()) {
        throw std::invalid_argument(std::string(fn) + ": grid must be nonempty");
    }
    for (double g : cfg.grid) {
        if (!std::isfinite(g)) {
            throw std::invalid_argument(std::string(fn) + ": grid points must be finite");
        }
    }
    if (!std::is_sorted(cfg.grid.begin(), cfg.grid.end())) {
        throw std::invalid_argument(std::string(fn) + ": grid must be sorted ascending");
    }
}

// Type-7 (linear interpolation) empirical quantile of an ascending sample.
double quantile_type7(std::span<const double> sorted, double p) {
    const std::size_t count = sorted.size();
    const double h = p * static_cast<double>(count - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= count) {
        return sorted[count - 1];
    }
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

std::vector<double> ecdf_sorted(std::span<const double> sorted, std::span<const double> grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double g : grid) {
        const auto count = std::upper_bound(sorted.begin(), sorted.end(), g) - sorted.begin();
        out.push_back(static_cast<double>(count) / static_cast<double>(sorted.size()));
    }
    return out;
}

double ks_sorted(std::span<const double> sorted, const std::function<double(double)>& cdf) {
    const double count = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / count - f));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / count));
    }
    return d;
}

// Drops NaN-marked replicates; more than 0.1% of them means the generator
// or the statistic is broken, not bad luck.
std::vector<double> keep_valid(std::vector<double>&& rows, std::size_t reps, std::size_t& excluded,
                               const char* fn) {
    std::vector<double> kept;
    kept.reserve(rows.size());
    excluded = 0;
    for (double v : rows) {
        if (std::isnan(v)) {
            ++excluded;
        } else {
            kept.push_back(v);
        }
    }
    if (excluded * 1000 > reps) {
        throw data_error(std::string(fn) + ": " + std::to_string(excluded) +
                         " degenerate replicates excluded, above the 0.1% budget");
    }
    return kept;
}

MonteCarloReport finish_report(const SimConfig& cfg, std::string reference,
                               const std::function<double(double)>& ref_cdf,
                               std::vector<double>&& rows, const char* fn) {
    MonteCarloReport report;
    report.config = cfg;
    report.reference = std::move(reference);
    std::vector<double> kept = keep_valid(std::move(rows), cfg.reps, report.excluded, fn);
    std::sort(kept.begin(), kept.end());
    report.empirical_cdf = ecdf_sorted(kept, cfg.grid);
    report.reference_cdf.reserve(cfg.grid.size());
    for (double g : cfg.grid) {
        report.reference_cdf.push_back(ref_cdf(g));
    }
    report.ks_distance = ks_sorted(kept, ref_cdf);
    for (double p : kQuantileProbs) {
        report.quantiles.emplace_back(p, quantile_type7(kept, p));
    }
    return report;
}

// Median standard error from the quantile-density estimate
// 1 / (2 f(median) sqrt(reps)), with f taken from the central 20% band.
double median_standard_error(std::span<const double> sorted) {
    if (sorted.size() < 2) {
        return std::numeric_limits<double>::infinity();
    }
    const double band = quantile_type7(sorted, 0.6) - quantile_type7(sorted, 0.4);
    if (!(band > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return band / (0.4 * std::sqrt(static_cast<double>(sorted.size())));
}

}  // namespace

void run_replicates(std::size_t reps, std::size_t row_width, std::size_t workers,
                    std::vector<double>& out,
                    const std::function<void(std::size_t, std::span<double>)>& fn) {
    if (reps < 1 || row_width < 1) {
        throw std::invalid_argument("run_replicates: reps and row_width must be positive");
    }
    out.assign(reps * row_width, 0.0);
    workers = std::max<std::size_t>(1, std::min(workers, reps));
    const auto worker_loop = [&](std::size_t w) {
        for (std::size_t r = w; r < reps; r += workers) {
            fn(r, std::span<double>(out.data() + r * row_width, row_width));
        }
    };
    if (workers == 1) {
        worker_loop(0);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&worker_loop, &errors, w] {
            try {
                worker_loop(w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) {
        t.join();
    }
    for (const std::exception_ptr& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

std::vector<double> empirical_cdf(std::span<const double> samples, std::span<const double> grid) {
    if (samples.empty()) {
        throw std::domain_error("empirical_cdf: samples must be nonempty");
    }
    if (!std::is_sorted(grid.begin(), grid.end())) {
        throw std::invalid_argument("empirical_cdf: grid must be sorted ascending");
    }
    if (std::is_sorted(samples.begin(), samples.end())) {
        return ecdf_sorted(samples, grid);
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return ecdf_sorted(sorted, grid);
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& reference_cdf) {
    if (samples.empty()) {
        throw std::domain_error("ks_distance: samples must be nonempty");
    }
    if (!std::is_sorted(samples.begin(), samples.end())) {
        std::sort(samples.begin(), samples.end());
    }
    return ks_sorted(samples, reference_cdf);
}

double ks_critical_value(std::size_t count, double alpha) {
    if (count < 1) {
        throw std::domain_error("ks_critical_value: count must be >= 1");
    }
    if (!(alpha > 0.0) || alpha >= 1.0) {
        throw std::domain_error("ks_critical_value: alpha must lie in (0, 1)");
    }
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(count));
}

MonteCarloReport simulate_cluster_statistic(const SimConfig& cfg, std::size_t workers) {
    validate_config(cfg, 3, "simulate_cluster_statistic");
    const double log_n = std::log(static_cast<double>(cfg.n));
    std::vector<double> rows;
    run_replicates(cfg.reps, 1, workers, rows, [&cfg, log_n](std::size_t r, std::span<double> row) {
        thread_local std::vector<double> z;
        z.resize(cfg.n);
        RandomStream stream = substream(cfg.seed, r);
        sample_std_normal(stream, std::span<double>(z));
        std::sort(z.begin(), z.end());
        try {
            row[0] = static_cast<double>(cfg.n) * cluster_statistic(z) - log_n;
        } catch (const degenerate_sample_error&) {
            row[0] = kNaN;
        }
    });
    return finish_report(cfg, "gumbel", [](double x) { return gumbel_cdf(x); }, std::move(rows),
                         "simulate_cluster_statistic");
}

MonteCarloReport simulate_half_statistic(const SimConfig& cfg, std::size_t workers) {
    validate_config(cfg, 2, "simulate_half_statistic");
    const double log_n = std::log(static_cast<double>(cfg.n));
    std::vector<double> rows;
    run_replicates(cfg.reps, 1, workers, rows, [&cfg, log_n](std::size_t r, std::span<double> row) {
        thread_local std::vector<double> z;
        z.resize(cfg.n);
        RandomStream stream = substream(cfg.seed, r);
        sample_std_normal(stream, std::span<double>(z));
        std::sort(z.begin(), z.end());
        const std::size_t n = cfg.n;
        double best = kNaN;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (!(z[k] > 0.0)) {
                continue;
            }
            const double term =
                static_cast<double>(n - 1 - k) * (z[k + 1] - z[k]) * mills_ratio(z[k]);
            if (std::isnan(best) || term > best) {
                best = term;
            }
        }
        row[0] = std::isnan(best) ? kNaN : best - log_n;
    });
    return finish_report(cfg, "half-gumbel", [](double x) { return half_limit_cdf(x); },
                         std::move(rows), "simulate_half_statistic");
}

LemmaCheckReport verify_lemma31(std::size_t n, std::span<const std::size_t> i_list, double eps,
                                std::size_t reps, std::uint64_t seed, std::size_t workers) {
    if (n < 3) {
        throw std::invalid_argument("verify_lemma31: n must be >= 3");
    }
    if (reps < 1) {
        throw std::invalid_argument("verify_lemma31: reps must be >= 1");
    }
    if (!std::isfinite(eps) || eps <= 0.0) {
        throw std::domain_error("verify_lemma31: eps must be finite and > 0");
    }
    if (i_list.empty()) {
        throw std::invalid_argument("verify_lemma31: index list must be nonempty");
    }
    for (std::size_t i : i_list) {
        if (2 * i <= n || i > n - 1) {
            throw std::domain_error("verify_lemma31: each index must satisfy n/2 < i <= n-1");
        }
    }
    const std::vector<std::size_t> idx(i_list.begin(), i_list.end());
    std::vector<double> rows;
    run_replicates(reps, idx.size(), workers, rows,
                   [n, seed, eps, &idx](std::size_t r, std::span<double> row) {
                       thread_local std::vector<double> z;
                       z.resize(n);
                       RandomStream stream = substream(seed, r);
                       sample_std_normal(stream, std::span<double>(z));
                       std::sort(z.begin(), z.end());
                       for (std::size_t k = 0; k < idx.size(); ++k) {
                           const std::size_t i = idx[k];
                           row[k] = (z[i - 1] * (z[i] - z[i - 1]) > eps) ? 1.0 : 0.0;
                       }
                   });
    LemmaCheckReport report;
    report.check = "lemma31";
    report.indeterminate = reps < 100;
    report.overall_pass = true;
    const double dreps = static_cast<double>(reps);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        double hits = 0.0;
        for (std::size_t r = 0; r < reps; ++r) {
            hits += rows[r * idx.size() + k];
        }
        const double p_hat = hits / dreps;
        LemmaCheckCase c;
        c.name = "i=" + std::to_string(idx[k]);
        c.parameters = {{"n", static_cast<double>(n)},
                        {"i", static_cast<double>(idx[k])},
                        {"eps", eps},
                        {"reps", dreps}};
        c.empirical = p_hat;
        c.reference = lemma31_bound(eps, static_cast<long>(n - idx[k]));
        c.standard_error = std::sqrt(p_hat * (1.0 - p_hat) / dreps);
        c.pass = p_hat <= c.reference + 3.0 * c.standard_error;
        report.overall_pass = report.overall_pass && c.pass;
        report.cases.push_back(std::move(c));
    }
    return report;
}

LemmaCheckReport verify_uniform_ratio(std::size_t n, std::size_t reps, std::uint64_t seed,
                                      int exponent_offset, std::size_t workers) {
    if (n < 3) {
        throw std::invalid_argument("verify_uniform_ratio: n must be >= 3");
    }
    if (reps < 1) {
        throw std::invalid_argument("verify_uniform_ratio: reps must be >= 1");
    }
    std::vector<double> rows;
    run_replicates(reps, n - 1, workers, rows,
                   [n, seed, exponent_offset](std::size_t r, std::span<double> row) {
                       thread_local std::vector<double> z;
                       z.resize(n);
                       RandomStream stream = substream(seed, r);
                       sample_std_normal(stream, std::span<double>(z));
                       std::sort(z.begin(), z.end());
                       // The k-th smallest upper-tail value comes from the
                       // k-th largest observation; each ratio power uses
                       // adjacent tail order statistics.
                       for (std::size_t k = 1; k < n; ++k) {
                           const double num = std_normal_upper_tail(z[n - k]);
                           const double den = std_normal_upper_tail(z[n - k - 1]);
                           row[k - 1] =
                               std::pow(num / den, static_cast<double>(k) + exponent_offset);
                       }
                   });
    const std::size_t pooled = rows.size();
    const double ks =
        ks_distance(std::move(rows), [](double x) { return std::clamp(x, 0.0, 1.0); });
    LemmaCheckReport report;
    report.check = "uniform-ratio";
    report.indeterminate = reps < 100 && pooled < 1000;
    LemmaCheckCase c;
    c.name = "pooled ratio powers";
    c.parameters = {{"n", static_cast<double>(n)},
                    {"reps", static_cast<double>(reps)},
                    {"exponent_offset", static_cast<double>(exponent_offset)},
                    {"pooled", static_cast<double>(pooled)}};
    c.empirical = ks;
    c.reference = ks_critical_value(pooled, 0.01);
    c.standard_error = kNaN;
    c.pass = ks < c.reference;
    report.overall_pass = c.pass;
    report.cases.push_back(std::move(c));
    return report;
}

LemmaCheckReport max_spacing_scaling(std::span<const std::size_t> n_list, std::size_t reps,
                                     std::uint64_t seed, std::size_t workers) {
    if (n_list.empty()) {
        throw std::invalid_argument("max_spacing_scaling: size list must be nonempty");
    }
    if (reps < 1) {
        throw std::invalid_argument("max_spacing_scaling: reps must be >= 1");
    }
    for (std::size_t n : n_list) {
        if (n < 100) {
            throw std::domain_error("max_spacing_scaling: sizes must be >= 100");
        }
    }
    for (std::size_t k = 0; k + 1 < n_list.size(); ++k) {
        if (n_list[k + 1] <= n_list[k]) {
            throw std::invalid_argument("max_spacing_scaling: sizes must be strictly increasing");
        }
    }
    constexpr std::size_t kTopGaps = 10;
    struct SizeSummary {
        double median = 0.0;
        double q25 = 0.0;
        double q75 = 0.0;
        double se_median = 0.0;
        double ks = 0.0;
        std::size_t pooled = 0;
    };
    std::vector<SizeSummary> summaries;
    summaries.reserve(n_list.size());
    for (std::size_t n : n_list) {
        const double scale = std::sqrt(2.0 * std::log(static_cast<double>(n)));
        std::vector<double> rows;
        run_replicates(reps, 1 + kTopGaps, workers, rows,
                       [n, seed, scale](std::size_t r, std::span<double> row) {
                           thread_local std::vector<double> z;
                           z.resize(n);
                           RandomStream stream = substream(seed, r);
                           sample_std_normal(stream, std::span<double>(z));
                           std::sort(z.begin(), z.end());
                           double max_gap = 0.0;
                           for (std::size_t i = 1; i < n; ++i) {
                               max_gap = std::max(max_gap, z[i] - z[i - 1]);
                           }
                           row[0] = scale * max_gap;
                           for (std::size_t jj = 0; jj < kTopGaps; ++jj) {
                               row[1 + jj] = scale * static_cast<double>(jj + 1) *
                                             (z[n - 1 - jj] - z[n - 2 - jj]);
                           }
                       });
        std::vector<double> max_vals(reps);
        std::vector<double> top;
        top.reserve(reps * kTopGaps);
        for (std::size_t r = 0; r < reps; ++r) {
            max_vals[r] = rows[r * (1 + kTopGaps)];
            for (std::size_t jj = 0; jj < kTopGaps; ++jj) {
                top.push_back(rows[r * (1 + kTopGaps) + 1 + jj]);
            }
        }
        std::sort(max_vals.begin(), max_vals.end());
        SizeSummary s;
        s.median = quantile_type7(max_vals, 0.5);
        s.q25 = quantile_type7(max_vals, 0.25);
        s.q75 = quantile_type7(max_vals, 0.75);
        s.se_median = median_standard_error(max_vals);
        s.pooled = top.size();
        s.ks = ks_distance(std::move(top),
                           [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); });
        summaries.push_back(s);
    }
    LemmaCheckReport report;
    report.check = "spacing-scaling";
    report.indeterminate = reps < 100;
    report.overall_pass = true;
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        const SizeSummary& s = summaries[k];
        LemmaCheckCase c;
        c.name = "scaled max spacing n=" + std::to_string(n_list[k]);
        c.parameters = {{"n", static_cast<double>(n_list[k])},
                        {"reps", static_cast<double>(reps)},
                        {"q25", s.q25},
                        {"q75", s.q75}};
        c.empirical = s.median;
        c.reference = kNaN;
        c.standard_error = s.se_median;
        c.pass = true;
        report.cases.push_back(std::move(c));
    }
    for (std::size_t k = 0; k + 1 < n_list.size(); ++k) {
        if (n_list[k] < 1000) {
            continue;
        }
        const SizeSummary& lo = summaries[k];
        const SizeSummary& hi = summaries[k + 1];
        const double se = std::sqrt(lo.se_median * lo.se_median + hi.se_median * hi.se_median);
        LemmaCheckCase c;
        c.name = "median trend n=" + std::to_string(n_list[k]) + " to n=" +
                 std::to_string(n_list[k + 1]);
        c.parameters = {{"n_low", static_cast<double>(n_list[k])},
                        {"n_high", static_cast<double>(n_list[k + 1])}};
        c.empirical = hi.median - lo.median;
        c.reference = 3.0 * se;
        c.standard_error = se;
        c.pass = c.empirical <= c.reference;
        report.overall_pass = report.overall_pass && c.pass;
        report.cases.push_back(std::move(c));
    }
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        const SizeSummary& s = summaries[k];
        LemmaCheckCase c;
        c.name = "top spacing exponential fit n=" + std::to_string(n_list[k]);
        c.parameters = {{"n", static_cast<double>(n_list[k])},
                        {"reps", static_cast<double>(reps)},
                        {"pooled", static_cast<double>(s.pooled)}};
        c.empirical = s.ks;
        c.reference = std::max(kTopSpacingKsEnvelope, ks_critical_value(s.pooled, 0.01));
        c.standard_error = kNaN;
        c.pass = s.ks < c.reference;
        report.overall_pass = report.overall_pass && c.pass;
        report.cases.push_back(std::move(c));
    }
    return report;
}

}  // namespace gapdex
