// Acceptance suite: one line per criterion, [PASS]/[FAIL] plus the measured
// numbers. Exit status is the number of failed criteria. Budgets are wall
// clock and enforced; thresholds are frozen, not recomputed per run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "gapdex/commands.hpp"
#include "gapdex/decompose.hpp"
#include "gapdex/gumbel.hpp"
#include "gapdex/io.hpp"
#include "gapdex/montecarlo.hpp"
#include "gapdex/normal.hpp"
#include "gapdex/reports.hpp"
#include "gapdex/rng.hpp"

using namespace gapdex;

namespace {

int g_failures = 0;

void report(int k, bool ok, const std::string& detail) {
    std::printf("[%s] C%d %s\n", ok ? "PASS" : "FAIL", k, detail.c_str());
    if (!ok) {
        ++g_failures;
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// ---- independent truncated-moment oracle (adaptive Simpson quadrature) ----

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_panel(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Panelize before going adaptive: the mass sits near the left endpoint,
// and one panel over the whole range can miss it entirely.
double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double cuts[6] = {a, a + 1.0, a + 3.0, a + 8.0, a + 16.0, b};
    double total = 0.0;
    for (int k = 0; k + 1 < 6; ++k) {
        total += integrate_panel(f, cuts[k], cuts[k + 1], tol);
    }
    return total;
}

// Moments of the standard normal conditioned on exceeding z. The exponent
// is shifted by z^2/2 so the integrand stays order one near t = z deep in
// the tail, and central moments are integrated directly in a second pass:
// the raw-moment formula for the third central moment cancels ~6 digits
// near z = 10, which would swamp the tolerance being enforced.
TruncatedNormalMoments quad_moments(double z) {
    const double tol = 1e-13 * std::max(1.0, std::fabs(z));
    auto weight = [z](double t) { return std::exp(0.5 * (z * z - t * t)); };
    const double hi = z + 40.0;
    const double w0 = integrate(weight, z, hi, tol);
    const double m1 = integrate([&](double t) { return t * weight(t); }, z, hi, tol) / w0;
    const double mu2 =
        integrate([&](double t) { return (t - m1) * (t - m1) * weight(t); }, z, hi, tol) / w0;
    const double mu3 = integrate(
                           [&](double t) { return (t - m1) * (t - m1) * (t - m1) * weight(t); },
                           z, hi, tol) /
                       w0;
    TruncatedNormalMoments out;
    out.threshold = z;
    out.mean = m1;
    out.variance = mu2;
    out.skewness = mu3 / std::pow(mu2, 1.5);
    return out;
}

// ---- CLI runner for the determinism criterion ----

std::string run_cli(const std::string& cli, const std::string& args, int& rc) {
    const std::string cmd = "\"" + cli + "\" " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        rc = -1;
        return {};
    }
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, got);
    }
    const int status = ::pclose(pipe);
    rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

// ---- criteria ----

void c1_decomposition_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::size_t> size_dist(2, 200);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> shift(-50.0, 50.0);
    std::uniform_real_distribution<double> scale(0.1, 30.0);
    double worst_raw = 0.0;
    double worst_std = 0.0;
    for (int round = 0; round < 1000; ++round) {
        const std::size_t n = size_dist(rng);
        const double mu = shift(rng);
        const double sigma = scale(rng);
        std::vector<double> values(n);
        for (double& v : values) {
            v = mu + sigma * normal(rng);
        }
        long double sum = 0.0L;
        for (double v : values) {
            sum += v;
        }
        const long double mean = sum / static_cast<long double>(n);
        long double ss = 0.0L;
        for (double v : values) {
            ss += (v - mean) * (v - mean);
        }
        const double variance = static_cast<double>(ss / static_cast<long double>(n));

        const VarianceDecomposition d = decompose(make_sample(values));
        long double raw_sum = 0.0L;
        long double std_sum = 0.0L;
        for (const DecompositionComponent& c : d.components) {
            raw_sum += c.raw;
            std_sum += c.standardized;
        }
        worst_raw = std::max(worst_raw,
                             std::fabs(static_cast<double>(raw_sum) - variance) / variance);
        worst_std = std::max(worst_std, std::fabs(static_cast<double>(std_sum) - 1.0));
    }
    const double dt = seconds_since(t0);
    const bool ok = worst_raw <= 1e-10 && worst_std <= 1e-10 && dt < 5.0;
    report(1, ok,
           "decomposition identity over 1000 samples: max |sum raw - variance|/variance = " +
               fmt(worst_raw) + ", max |sum standardized - 1| = " + fmt(worst_std) + ", " +
               fmt(dt) + " s");
}

void c2_hand_splits() {
    const Sample a = make_sample({0.0, 1.0, 2.0, 10.0});
    const ClusterSplit sa = cluster_index(decompose(a), a);
    const double expected_a = 13.5 / 15.6875;
    const bool ok_a = sa.j == 3 && std::fabs(sa.statistic - expected_a) <= 1e-12 &&
                      sa.separator_low == 2.0 && sa.separator_high == 10.0;

    const Sample b = make_sample({0.0, 3.0, 4.0, 7.0});
    const ClusterSplit sb = cluster_index(decompose(b), b);
    const bool ok_b = sb.j == 1 && std::fabs(sb.statistic - 0.42) <= 1e-12;

    report(2, ok_a && ok_b,
           "hand splits: {0,1,2,10} j=" + std::to_string(sa.j) + " statistic off by " +
               fmt(std::fabs(sa.statistic - expected_a)) + "; tie sample j=" +
               std::to_string(sb.j) + " statistic off by " + fmt(std::fabs(sb.statistic - 0.42)));
}

void c3_gumbel_convergence() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> grid = parse_grid("-2:8:0.25");
    const std::vector<std::size_t> sizes = {100, 500, 2000, 5000};
    std::vector<double> ks;
    for (std::size_t n : sizes) {
        SimConfig cfg;
        cfg.n = n;
        cfg.reps = 20000;
        cfg.seed = 1;
        cfg.grid = grid;
        ks.push_back(simulate_cluster_statistic(cfg, 1).ks_distance);
    }
    // golden threshold from the first cross-checked run, frozen with
    // tolerance 2/sqrt(reps)
    const double frozen = 0.006685 + 2.0 / std::sqrt(20000.0);
    const bool decreasing = ks[0] > ks[1] && ks[1] > ks[2] && ks[2] > ks[3];
    const double dt = seconds_since(t0);
    const bool ok = decreasing && ks[3] <= frozen && dt < 600.0;
    report(3, ok,
           "KS to Gumbel at n={100,500,2000,5000}: " + fmt(ks[0]) + " > " + fmt(ks[1]) + " > " +
               fmt(ks[2]) + " > " + fmt(ks[3]) + ", final <= " + fmt(frozen) + ", " + fmt(dt) +
               " s");
}

void c4_half_limit() {
    const auto t0 = std::chrono::steady_clock::now();
    SimConfig cfg;
    cfg.n = 2000;
    cfg.reps = 20000;
    cfg.seed = 1;
    cfg.grid = {-1.0, 0.0, 1.0, 2.0};
    const MonteCarloReport r = simulate_half_statistic(cfg, 1);
    double worst = 0.0;
    for (std::size_t k = 0; k < cfg.grid.size(); ++k) {
        worst = std::max(worst, std::fabs(r.empirical_cdf[k] - half_limit_cdf(cfg.grid[k])));
    }
    const double dt = seconds_since(t0);
    const bool ok = worst <= 0.03 && dt < 300.0;
    report(4, ok,
           "half-limit CDF at x in {-1,0,1,2}, n=2000: max |empirical - limit| = " + fmt(worst) +
               " (tolerance 0.03), " + fmt(dt) + " s");
}

void c5_spacing_bound() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::size_t> idx = {501, 900, 990, 999};
    bool all_pass = true;
    double min_slack = 1e300;
    for (double eps : {0.5, 1.0, 2.0}) {
        const LemmaCheckReport r = verify_lemma31(1000, idx, eps, 10000, 1, 1);
        all_pass = all_pass && r.overall_pass;
        for (const LemmaCheckCase& c : r.cases) {
            min_slack = std::min(min_slack,
                                 c.reference + 3.0 * c.standard_error - c.empirical);
        }
    }
    const double dt = seconds_since(t0);
    const bool ok = all_pass && dt < 180.0;
    report(5, ok,
           "upper-spacing exceedance bound, 12 cells (i in {501,900,990,999} x eps in "
           "{0.5,1,2}): min slack = " +
               fmt(min_slack) + ", " + fmt(dt) + " s");
}

void c6_inequality_grids() {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t cases = 0;
    bool all_pass = true;
    for (const char* name : {"inequalities", "truncated"}) {
        RunConfig cfg;
        cfg.check = name;
        std::ostringstream out;
        std::ostringstream diag;
        const int rc = cmd_verify(cfg, out, diag);
        const LemmaCheckReport r = lemmacheck_from_json(out.str());
        all_pass = all_pass && rc == 0 && r.overall_pass;
        cases += r.cases.size();
    }
    const double dt = seconds_since(t0);
    const bool ok = all_pass && dt < 1.0;
    report(6, ok,
           "analytic inequality and monotonicity suites: " + std::to_string(cases) +
               " grid cases, all holding, " + fmt(dt) + " s");
}

void c7_truncated_facts() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst_mean = 0.0;
    double worst_var = 0.0;
    bool var_below_one = true;
    for (double z = -2.0; z <= 8.0 + 1e-9; z += 0.25) {
        const TruncatedNormalMoments got = truncated_moments(z);
        const TruncatedNormalMoments want = quad_moments(z);
        worst_mean = std::max(worst_mean, std::fabs(got.mean - want.mean));
        worst_var = std::max(worst_var, std::fabs(got.variance - want.variance));
        if (z > 0.0 && got.variance >= 1.0) {
            var_below_one = false;
        }
    }
    // The limiting skewness is 2 but |skewness(10) - 2| is genuinely 0.054,
    // so the band is 0.055; the quadrature match and the monotone approach
    // below pin the implementation far tighter than the band alone.
    const double skew10 = truncated_moments(10.0).skewness;
    const double skew12 = truncated_moments(12.0).skewness;
    const double oracle10 = quad_moments(10.0).skewness;
    const bool skew_ok = std::fabs(skew10 - 2.0) < 0.055 &&
                         std::fabs(skew10 - oracle10) <= 1e-7 &&
                         std::fabs(skew12 - 2.0) < std::fabs(skew10 - 2.0);
    const double dt = seconds_since(t0);
    const bool ok = worst_mean <= 1e-8 && worst_var <= 1e-8 && var_below_one && skew_ok &&
                    dt < 5.0;
    report(7, ok,
           "truncated moments vs quadrature on z in [-2,8]: max mean err = " + fmt(worst_mean) +
               ", max variance err = " + fmt(worst_var) + ", variance < 1 for z > 0, "
               "|skewness(10) - 2| = " +
               fmt(std::fabs(skew10 - 2.0)) + ", " + fmt(dt) + " s");
}

void c8_uniform_ratio() {
    const auto t0 = std::chrono::steady_clock::now();
    const LemmaCheckReport good = verify_uniform_ratio(50, 200, 7, 0, 1);
    const LemmaCheckReport bad = verify_uniform_ratio(50, 200, 7, 1, 1);
    const double dt = seconds_since(t0);
    const bool ok = good.overall_pass && !bad.overall_pass && dt < 10.0;
    report(8, ok,
           "uniform ratio powers: pooled KS " + fmt(good.cases[0].empirical) +
               " < 1% critical " + fmt(good.cases[0].reference) +
               "; mis-specified exponent fails (KS " + fmt(bad.cases[0].empirical) + "), " +
               fmt(dt) + " s");
}

void c9_determinism() {
    const auto t0 = std::chrono::steady_clock::now();
    const char* cli = std::getenv("GAPDEX_CLI");
    if (cli == nullptr) {
        report(9, false, "determinism: GAPDEX_CLI not set; cannot invoke the binary");
        return;
    }
    struct Case {
        const char* base;
        bool worker_sweep;
    };
    const Case cases[] = {
        {"simulate --n 400 --reps 2000 --seed 42 --grid=-1:2:1", true},
        {"simulate --half --n 400 --reps 2000 --seed 5 --grid=-1:2:1", true},
        {"verify --check lemma31 --n 300 --reps 500 --seed 3", true},
    };
    bool ok = true;
    std::string why;
    for (const Case& c : cases) {
        int rc1 = 0;
        int rc2 = 0;
        int rc8 = 0;
        const std::string first = run_cli(cli, std::string(c.base) + " --workers 1", rc1);
        const std::string again = run_cli(cli, std::string(c.base) + " --workers 1", rc2);
        const std::string wide = run_cli(cli, std::string(c.base) + " --workers 8", rc8);
        if (first.empty() || rc1 != 0 || rc2 != 0 || rc8 != 0) {
            ok = false;
            why = std::string("command failed: ") + c.base;
            break;
        }
        if (first != again || first != wide) {
            ok = false;
            why = std::string("output differed: ") + c.base;
            break;
        }
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 60.0;
    report(9, ok,
           ok ? "byte-identical output across reruns and 1-vs-8 workers for simulate, "
                "simulate --half, verify (" +
                    fmt(dt) + " s)"
              : "determinism: " + why);
}

void c10_power_sanity() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = 500;
    const int reps = 200;

    std::vector<double> mixture_p;
    for (int r = 0; r < reps; ++r) {
        RandomStream stream = substream(17, static_cast<std::uint64_t>(r));
        std::vector<double> values(n);
        for (double& v : values) {
            const double center = stream.next_uniform() < 0.5 ? -3.0 : 3.0;
            v = center + stream.next_normal();
        }
        std::sort(values.begin(), values.end());
        mixture_p.push_back(cluster_test(n, cluster_statistic(values)).p_value);
    }
    std::sort(mixture_p.begin(), mixture_p.end());
    const double median_p = 0.5 * (mixture_p[99] + mixture_p[100]);

    int null_hits = 0;
    for (int r = 0; r < reps; ++r) {
        RandomStream stream = substream(18, static_cast<std::uint64_t>(r));
        std::vector<double> values = sample_std_normal(stream, n);
        std::sort(values.begin(), values.end());
        if (cluster_test(n, cluster_statistic(values)).p_value < 0.05) {
            ++null_hits;
        }
    }
    const double null_frac = null_hits / static_cast<double>(reps);

    const double dt = seconds_since(t0);
    const bool ok = median_p < 0.01 && null_frac >= 0.01 && null_frac <= 0.15 && dt < 120.0;
    report(10, ok,
           "power sanity at n=500: mixture (separation 6) median p = " + fmt(median_p) +
               " < 0.01; null rejection rate at 0.05 = " + fmt(null_frac) +
               " in [0.01, 0.15], " + fmt(dt) + " s");
}

}  // namespace

int main() {
    c1_decomposition_identity();
    c2_hand_splits();
    c3_gumbel_convergence();
    c4_half_limit();
    c5_spacing_bound();
    c6_inequality_grids();
    c7_truncated_facts();
    c8_uniform_ratio();
    c9_determinism();
    c10_power_sanity();
    if (g_failures == 0) {
        std::printf("all 10 acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    }
    return g_failures;
}
