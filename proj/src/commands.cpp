#include "gapdex/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gapdex/decompose.hpp"
#include "gapdex/errors.hpp"
#include "gapdex/gumbel.hpp"
#include "gapdex/io.hpp"
#include "gapdex/montecarlo.hpp"
#include "gapdex/normal.hpp"
#include "gapdex/reports.hpp"
#include "gapdex/rng.hpp"
#include "gapdex/spacings.hpp"

namespace gapdex {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Per-point agreement band for the positive-side limit check. Covers the
// finite-size bias at the default sample size plus Monte Carlo noise at
// the default replicate count.
constexpr double kHalfLimitBand = 0.03;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

template <class Report>
void emit_one(const Report& r, const std::string& format, std::ostream& out) {
    if (format == "csv") {
        out << to_csv(r);
    } else {
        out << to_json(r) << '\n';
    }
}

DetectionOutput detect_series(std::vector<double> raw) {
    Sample s = make_sample(std::move(raw));
    const VarianceDecomposition d = decompose(s);
    const ClusterSplit split = cluster_index(d, s);
    const GumbelTest test = cluster_test(s.n(), split.statistic);
    return make_detection_output(s, d, split, test);
}

void finish(LemmaCheckReport& r) {
    r.overall_pass = !r.cases.empty();
    for (const LemmaCheckCase& c : r.cases) {
        r.overall_pass = r.overall_pass && c.pass;
    }
}

// Minimum margin of the spacing lower bound over an (x, eps) grid.
LemmaCheckCase check_gap_bound_grid() {
    LemmaCheckCase c;
    c.name = "spacing lower bound";
    double worst = std::numeric_limits<double>::infinity();
    bool all = true;
    int points = 0;
    for (int xi = 1; xi <= 60; ++xi) {
        for (int ei = 1; ei <= 30; ++ei) {
            const InequalityCheck q = eval_gap_bound(0.1 * xi, 0.1 * ei);
            worst = std::min(worst, q.lhs - q.rhs);
            all = all && q.holds;
            ++points;
        }
    }
    c.parameters = {{"x_max", 6.0}, {"eps_max", 3.0}, {"points", double(points)}};
    c.empirical = worst;
    c.reference = 0.0;
    c.standard_error = kNaN;
    c.pass = all && worst >= 0.0;
    return c;
}

// Strictness of the two-sided tail bracket on a log-spaced grid.
LemmaCheckCase check_mills_brackets() {
    LemmaCheckCase c;
    c.name = "tail bracket";
    double worst = std::numeric_limits<double>::infinity();
    bool all = true;
    const double lo = std::log(1e-3);
    const double hi = std::log(12.0);
    const int points = 100;
    for (int k = 0; k < points; ++k) {
        const double x = std::exp(lo + (hi - lo) * k / (points - 1));
        const InequalityCheck q = eval_mills_bounds(x);
        worst = std::min({worst, *q.mid - q.lhs, q.rhs - *q.mid});
        all = all && q.holds;
    }
    c.parameters = {{"x_min", 1e-3}, {"x_max", 12.0}, {"points", double(points)}};
    c.empirical = worst;
    c.reference = 0.0;
    c.standard_error = kNaN;
    c.pass = all && worst > 0.0;
    return c;
}

// Minimum margin of the conditional spacing probability bound.
LemmaCheckCase check_ratio_bound_grid() {
    LemmaCheckCase c;
    c.name = "conditional spacing bound";
    double worst = std::numeric_limits<double>::infinity();
    bool all = true;
    int points = 0;
    for (int xi = 1; xi <= 60; ++xi) {
        for (int ei = 1; ei <= 30; ++ei) {
            const InequalityCheck q = eval_ratio_bound(0.1 * xi, 0.1 * ei);
            worst = std::min(worst, q.lhs - q.rhs);
            all = all && q.holds;
            ++points;
        }
    }
    c.parameters = {{"x_max", 6.0}, {"eps_max", 3.0}, {"points", double(points)}};
    c.empirical = worst;
    c.reference = 0.0;
    c.standard_error = kNaN;
    c.pass = all && worst >= 0.0;
    return c;
}

double conditional_tail_ratio(double x, double eps) {
    return std_normal_upper_tail(x + eps / x) / std_normal_upper_tail(x);
}

// The conditional exceedance ratio grows in x toward exp(-eps), so its
// supremum check and its monotonicity are verified together.
void append_tail_ratio_cases(LemmaCheckReport& r) {
    for (double eps : {0.25, 1.0, 4.0}) {
        LemmaCheckCase c;
        c.name = "exceedance ratio increasing eps=" + fmt(eps);
        c.parameters = {{"eps", eps}, {"x_max", 8.0}, {"points", 400.0}};
        double min_step = std::numeric_limits<double>::infinity();
        double prev = conditional_tail_ratio(8.0 / 400.0, eps);
        for (int k = 2; k <= 400; ++k) {
            const double cur = conditional_tail_ratio(8.0 * k / 400.0, eps);
            min_step = std::min(min_step, cur - prev);
            prev = cur;
        }
        c.empirical = min_step;
        c.reference = 0.0;
        c.standard_error = kNaN;
        c.pass = min_step >= -1e-12;  // exact ties from rounding are fine
        r.cases.push_back(std::move(c));
    }
    for (double eps : {0.25, 0.5, 1.0, 2.0, 3.0}) {
        LemmaCheckCase c;
        c.name = "exceedance ratio bound eps=" + fmt(eps);
        c.parameters = {{"eps", eps}, {"x_max", 8.0}, {"points", 1600.0}};
        double sup = 0.0;
        for (int k = 1; k <= 1600; ++k) {
            sup = std::max(sup, conditional_tail_ratio(8.0 * k / 1600.0, eps));
        }
        c.empirical = sup;
        c.reference = 1.0 - eps * std::exp(-1.5 * eps);
        c.standard_error = kNaN;
        c.pass = sup <= c.reference;
        r.cases.push_back(std::move(c));
    }
}

LemmaCheckReport verify_tail_inequalities() {
    LemmaCheckReport r;
    r.check = "tail inequalities";
    r.cases.push_back(check_gap_bound_grid());
    r.cases.push_back(check_mills_brackets());
    r.cases.push_back(check_ratio_bound_grid());
    append_tail_ratio_cases(r);
    finish(r);
    return r;
}

LemmaCheckReport verify_truncated_family() {
    LemmaCheckReport r;
    r.check = "truncated moments";
    {
        LemmaCheckCase c;
        c.name = "variance in (0,1)";
        c.parameters = {{"z_min", -2.0}, {"z_max", 8.0}, {"points", 101.0}};
        double max_var = -std::numeric_limits<double>::infinity();
        bool all = true;
        for (int k = 0; k <= 100; ++k) {
            const double v = truncated_moments(-2.0 + 0.1 * k).variance;
            max_var = std::max(max_var, v);
            all = all && v > 0.0 && v < 1.0;
        }
        c.empirical = max_var;
        c.reference = 1.0;
        c.standard_error = kNaN;
        c.pass = all;
        r.cases.push_back(std::move(c));
    }
    {
        LemmaCheckCase c;
        c.name = "mean exceeds threshold";
        c.parameters = {{"z_min", -2.0}, {"z_max", 8.0}, {"points", 101.0}};
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 100; ++k) {
            const double z = -2.0 + 0.1 * k;
            worst = std::min(worst, truncated_moments(z).mean - std::max(z, 0.0));
        }
        c.empirical = worst;
        c.reference = 0.0;
        c.standard_error = kNaN;
        c.pass = worst > 0.0;
        r.cases.push_back(std::move(c));
    }
    {
        LemmaCheckCase c;
        c.name = "skewness increasing";
        c.parameters = {{"z_min", 0.0}, {"z_max", 10.0}, {"points", 41.0}};
        double min_step = std::numeric_limits<double>::infinity();
        double prev = truncated_moments(0.0).skewness;
        for (int k = 1; k <= 40; ++k) {
            const double cur = truncated_moments(0.25 * k).skewness;
            min_step = std::min(min_step, cur - prev);
            prev = cur;
        }
        c.empirical = min_step;
        c.reference = 0.0;
        c.standard_error = kNaN;
        c.pass = min_step > 0.0;
        r.cases.push_back(std::move(c));
    }
    {
        // The exact deviation at z = 10 is 0.05397 (50-digit quadrature),
        // so the band sits just above it; the limit itself is 2.
        LemmaCheckCase c;
        c.name = "skewness tail limit";
        c.parameters = {{"z", 10.0}, {"band", 0.055}};
        c.empirical = truncated_moments(10.0).skewness;
        c.reference = 2.0;
        c.standard_error = kNaN;
        c.pass = std::fabs(c.empirical - c.reference) < 0.055;
        r.cases.push_back(std::move(c));
    }
    finish(r);
    return r;
}

LemmaCheckReport verify_half_limit(const RunConfig& cfg) {
    SimConfig sc;
    sc.n = cfg.n.value_or(2000);
    sc.reps = cfg.reps.value_or(10000);
    sc.seed = cfg.seed;
    sc.grid = cfg.grid_text ? parse_grid(*cfg.grid_text)
                            : std::vector<double>{-1.0, 0.0, 1.0, 2.0};
    const MonteCarloReport mc = simulate_half_statistic(sc, cfg.workers);
    LemmaCheckReport r;
    r.check = "positive-side limit";
    const double valid = double(sc.reps - mc.excluded);
    for (std::size_t k = 0; k < sc.grid.size(); ++k) {
        LemmaCheckCase c;
        c.name = "x=" + fmt(sc.grid[k]);
        c.parameters = {{"n", double(sc.n)}, {"reps", double(sc.reps)}, {"band", kHalfLimitBand}};
        c.empirical = mc.empirical_cdf[k];
        c.reference = mc.reference_cdf[k];
        c.standard_error =
            valid > 0.0 ? std::sqrt(c.empirical * (1.0 - c.empirical) / valid) : kNaN;
        c.pass = std::fabs(c.empirical - c.reference) <= kHalfLimitBand;
        r.cases.push_back(std::move(c));
    }
    r.excluded = mc.excluded;
    r.indeterminate = sc.reps < 100;
    finish(r);
    return r;
}

LemmaCheckReport verify_ratio_powers(const RunConfig& cfg) {
    const std::size_t n = cfg.n.value_or(50);
    const std::size_t reps = cfg.reps.value_or(200);
    LemmaCheckReport r = verify_uniform_ratio(n, reps, cfg.seed, 0, cfg.workers);
    // Deliberately wrong power: the same fit must now reject, otherwise
    // the primary case passes for lack of power rather than correctness.
    const LemmaCheckReport neg = verify_uniform_ratio(n, reps, cfg.seed, 1, cfg.workers);
    LemmaCheckCase c = neg.cases.front();
    c.name = "negative control (misspecified power)";
    c.parameters.emplace_back("exponent_offset", 1.0);
    c.pass = c.empirical >= c.reference;
    r.cases.push_back(std::move(c));
    r.excluded += neg.excluded;
    r.indeterminate = r.indeterminate || neg.indeterminate;
    finish(r);
    return r;
}

std::vector<double> project_rows(const std::vector<std::vector<double>>& rows,
                                 const std::vector<double>& dir) {
    std::vector<double> y(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < dir.size(); ++c) {
            acc += rows[r][c] * dir[c];
        }
        y[r] = acc;
    }
    return y;
}

std::vector<double> draw_direction(std::uint64_t seed, std::uint64_t index, std::size_t dim) {
    RandomStream st = substream(seed, index);
    std::vector<double> dir(dim);
    for (;;) {
        double norm2 = 0.0;
        for (double& v : dir) {
            v = st.next_normal();
            norm2 += v * v;
        }
        if (norm2 > 0.0) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (double& v : dir) {
                v *= inv;
            }
            return dir;
        }
    }
}

}  // namespace

int cmd_detect(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    if (!cfg.input_path) {
        throw std::invalid_argument("detect requires --input");
    }
    const DetectionOutput o = detect_series(load_series(*cfg.input_path, cfg.column));
    emit_one(o, cfg.format, out);
    return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    SimConfig sc;
    sc.n = cfg.n.value_or(1000);
    sc.reps = cfg.reps.value_or(10000);
    sc.seed = cfg.seed;
    sc.grid = parse_grid(cfg.grid_text.value_or("-2:8:0.25"));
    const MonteCarloReport r = cfg.half ? simulate_half_statistic(sc, cfg.workers)
                                        : simulate_cluster_statistic(sc, cfg.workers);
    emit_one(r, cfg.format, out);
    return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    static const char* known[] = {"inequalities", "truncated",     "lemma31",
                                  "half-limit",   "uniform-ratio", "spacing-scaling",
                                  "all"};
    if (std::find_if(std::begin(known), std::end(known),
                     [&cfg](const char* k) { return cfg.check == k; }) == std::end(known)) {
        throw std::invalid_argument(
            "unknown check '" + cfg.check +
            "'; expected inequalities, truncated, lemma31, half-limit, uniform-ratio, "
            "spacing-scaling, or all");
    }
    const bool all = cfg.check == "all";
    std::vector<LemmaCheckReport> reports;
    if (all || cfg.check == "inequalities") {
        reports.push_back(verify_tail_inequalities());
    }
    if (all || cfg.check == "truncated") {
        reports.push_back(verify_truncated_family());
    }
    if (all || cfg.check == "lemma31") {
        const std::size_t n = cfg.n.value_or(1000);
        if (n < 3) {
            throw std::invalid_argument("lemma31 check needs n >= 3");
        }
        std::vector<std::size_t> idx = {n / 2 + 1, 9 * n / 10, 99 * n / 100, n - 1};
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        reports.push_back(
            verify_lemma31(n, idx, cfg.eps, cfg.reps.value_or(10000), cfg.seed, cfg.workers));
    }
    if (all || cfg.check == "half-limit") {
        reports.push_back(verify_half_limit(cfg));
    }
    if (all || cfg.check == "uniform-ratio") {
        reports.push_back(verify_ratio_powers(cfg));
    }
    if (all || cfg.check == "spacing-scaling") {
        const std::vector<std::size_t> sizes =
            cfg.n ? std::vector<std::size_t>{*cfg.n}
                  : std::vector<std::size_t>{1000, 2000, 5000};
        reports.push_back(
            max_spacing_scaling(sizes, cfg.reps.value_or(500), cfg.seed, cfg.workers));
    }

    bool ok = true;
    for (const LemmaCheckReport& r : reports) {
        ok = ok && r.overall_pass;
        if (!r.overall_pass) {
            diag << "check failed: " << r.check << '\n';
        }
    }
    if (cfg.format == "csv") {
        for (std::size_t k = 0; k < reports.size(); ++k) {
            if (k > 0) {
                out << '\n';
            }
            out << to_csv(reports[k]);
        }
    } else if (reports.size() == 1) {
        out << to_json(reports.front()) << '\n';
    } else {
        out << to_json(reports) << '\n';
    }
    return ok ? 0 : 1;
}

int cmd_project(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    if (!cfg.input_path) {
        throw std::invalid_argument("project requires --input");
    }
    if (cfg.directions < 1) {
        throw std::invalid_argument("--directions must be >= 1");
    }
    const std::vector<std::vector<double>> rows = load_matrix(*cfg.input_path);
    if (rows.size() < 2) {
        throw std::invalid_argument("projection needs at least two rows");
    }
    const std::size_t dim = rows.front().size();
    if (dim < 2) {
        throw std::invalid_argument(
            "projection needs at least two columns; use detect for a single series");
    }

    std::size_t skipped = 0;
    bool have_best = false;
    std::size_t best_k = 0;
    double best_stat = 0.0;
    for (std::size_t k = 0; k < cfg.directions; ++k) {
        std::vector<double> y = project_rows(rows, draw_direction(cfg.seed, k, dim));
        std::sort(y.begin(), y.end());
        double stat;
        try {
            stat = cluster_statistic(y);
        } catch (const degenerate_sample_error&) {
            ++skipped;
            diag << "note: direction " << k << " skipped (constant projection)\n";
            continue;
        }
        if (!have_best || stat > best_stat) {
            have_best = true;
            best_stat = stat;
            best_k = k;
        }
    }
    if (!have_best) {
        throw degenerate_sample_error("every projection was constant");
    }

    // Streams restart per index, so redrawing direction best_k reproduces
    // it exactly; the full pipeline then matches the scan's statistic.
    std::vector<double> dir = draw_direction(cfg.seed, best_k, dim);
    DetectionOutput o = detect_series(project_rows(rows, dir));
    o.projection = ProjectionInfo{best_k, std::move(dir), cfg.directions, skipped};
    emit_one(o, cfg.format, out);
    return 0;
}

}  // namespace gapdex
