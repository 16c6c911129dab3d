#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gapdex/errors.hpp"
#include "gapdex/gumbel.hpp"
#include "gapdex/montecarlo.hpp"

using namespace gapdex;

namespace {

const std::vector<double> kWideGrid = [] {
    std::vector<double> g;
    for (double x = -2.0; x <= 8.0 + 0.125; x += 0.25) {
        g.push_back(x);
    }
    return g;
}();

}  // namespace

TEST_CASE("empirical cdf by hand") {
    const std::vector<double> samples = {1.0, 2.0, 3.0};
    const std::vector<double> grid = {0.0, 1.0, 2.5, 3.0, 4.0};
    const std::vector<double> cdf = empirical_cdf(samples, grid);
    REQUIRE(cdf.size() == 5);
    CHECK(cdf[0] == 0.0);
    CHECK(cdf[1] == doctest::Approx(1.0 / 3.0));
    CHECK(cdf[2] == doctest::Approx(2.0 / 3.0));
    CHECK(cdf[3] == 1.0);
    CHECK(cdf[4] == 1.0);
    // unsorted input gives the same function
    const std::vector<double> shuffled = {3.0, 1.0, 2.0};
    CHECK(empirical_cdf(shuffled, grid) == cdf);
}

TEST_CASE("distribution distance by hand") {
    // single point at 0.5 vs U(0,1): both one-sided deviations are 0.5
    CHECK(ks_distance({0.5}, [](double x) { return x; }) == doctest::Approx(0.5));
    // points at quantile midpoints: the distance is exactly 1/(2N)
    const std::size_t n = 40;
    std::vector<double> mid(n);
    for (std::size_t i = 0; i < n; ++i) {
        mid[i] = (i + 0.5) / n;
    }
    CHECK(ks_distance(mid, [](double x) { return x; }) == doctest::Approx(0.5 / n).epsilon(1e-12));
}

TEST_CASE("distance critical value") {
    CHECK(ks_critical_value(10000, 0.01) == doctest::Approx(1.6276 / 100.0).epsilon(1e-3));
    CHECK(ks_critical_value(100, 0.05) == doctest::Approx(1.3581 / 10.0).epsilon(1e-3));
    CHECK_THROWS_AS((void)ks_critical_value(0, 0.01), std::domain_error);
    CHECK_THROWS_AS((void)ks_critical_value(100, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)ks_critical_value(100, 1.0), std::domain_error);
}

TEST_CASE("replication engine is schedule independent") {
    const auto fill = [](std::size_t rep, std::span<double> row) {
        row[0] = double(rep) * 1.5;
        row[1] = double(rep * rep);
    };
    std::vector<double> w1;
    std::vector<double> w2;
    std::vector<double> w7;
    run_replicates(101, 2, 1, w1, fill);
    run_replicates(101, 2, 2, w2, fill);
    run_replicates(101, 2, 7, w7, fill);
    CHECK(w1 == w2);
    CHECK(w1 == w7);
    REQUIRE(w1.size() == 202);
    CHECK(w1[200] == 150.0);

    // a worker exception must surface, not vanish into the pool
    const auto boom = [](std::size_t rep, std::span<double>) {
        if (rep == 17) {
            throw std::runtime_error("boom");
        }
    };
    std::vector<double> out;
    CHECK_THROWS_AS(run_replicates(64, 1, 4, out, boom), std::runtime_error);
}

TEST_CASE("null simulation reproduces its stored distance") {
    SimConfig cfg;
    cfg.n = 1000;
    cfg.reps = 10000;
    cfg.seed = 1;
    cfg.grid = kWideGrid;
    const MonteCarloReport r = simulate_cluster_statistic(cfg, 1);
    CHECK(r.reference == "gumbel");
    CHECK(r.excluded == 0);
    // stored value from the first cross-checked run of this configuration
    CHECK(r.ks_distance == doctest::Approx(0.02549237015999406).epsilon(1e-12));
    // and it is within sampling error of the limit even at n = 1000
    CHECK(r.ks_distance < 0.02549237015999406 + 2.0 / std::sqrt(double(cfg.reps)));

    // quantiles come out ordered and bracket the reference median
    double prev = -1e300;
    for (const auto& [p, value] : r.quantiles) {
        CHECK(value >= prev);
        prev = value;
    }
    // empirical cdf is monotone along the grid
    for (std::size_t k = 1; k < r.empirical_cdf.size(); ++k) {
        CHECK(r.empirical_cdf[k] >= r.empirical_cdf[k - 1]);
    }
}

TEST_CASE("simulation reports are identical for any worker count") {
    SimConfig cfg;
    cfg.n = 300;
    cfg.reps = 1500;
    cfg.seed = 42;
    cfg.grid = {-1.0, 0.0, 1.0, 2.0};
    const MonteCarloReport a = simulate_cluster_statistic(cfg, 1);
    const MonteCarloReport b = simulate_cluster_statistic(cfg, 8);
    CHECK(a.ks_distance == b.ks_distance);
    CHECK(a.empirical_cdf == b.empirical_cdf);
    CHECK(a.quantiles == b.quantiles);
    const MonteCarloReport c = simulate_half_statistic(cfg, 1);
    const MonteCarloReport d = simulate_half_statistic(cfg, 5);
    CHECK(c.ks_distance == d.ks_distance);
    CHECK(c.empirical_cdf == d.empirical_cdf);
}

TEST_CASE("simulation argument checks") {
    SimConfig bad;
    bad.n = 2;
    bad.reps = 10;
    bad.seed = 0;
    bad.grid = {0.0};
    CHECK_THROWS_AS((void)simulate_cluster_statistic(bad), std::invalid_argument);
    bad.n = 100;
    bad.reps = 0;
    CHECK_THROWS_AS((void)simulate_cluster_statistic(bad), std::invalid_argument);
}

TEST_CASE("positive-side variant rejects hopeless sample sizes") {
    // at n = 3 half the replicates have no usable positive spacing, far
    // beyond the 0.1% exclusion budget
    SimConfig cfg;
    cfg.n = 3;
    cfg.reps = 400;
    cfg.seed = 5;
    cfg.grid = {0.0};
    CHECK_THROWS_AS((void)simulate_half_statistic(cfg), data_error);
}

TEST_CASE("tail bound verification enforces its parameter domain") {
    const std::vector<std::size_t> good = {151, 299};
    const LemmaCheckReport r = verify_lemma31(300, good, 1.0, 400, 3);
    CHECK(r.check == "lemma31");
    CHECK(r.cases.size() == 2);
    CHECK(r.overall_pass);

    const std::vector<std::size_t> low = {150};  // 2i = n violates 2i > n
    CHECK_THROWS_AS((void)verify_lemma31(300, low, 1.0, 100, 3), std::domain_error);
    const std::vector<std::size_t> high = {300};  // i = n has no next spacing
    CHECK_THROWS_AS((void)verify_lemma31(300, high, 1.0, 100, 3), std::domain_error);
    CHECK_THROWS_AS((void)verify_lemma31(300, good, -1.0, 100, 3), std::domain_error);
}

TEST_CASE("ratio powers fit uniformity and the misfit control rejects") {
    const LemmaCheckReport ok = verify_uniform_ratio(50, 200, 7, 0);
    REQUIRE(ok.cases.size() == 1);
    CHECK(ok.overall_pass);
    CHECK(ok.cases[0].empirical < ok.cases[0].reference);

    const LemmaCheckReport bad = verify_uniform_ratio(50, 200, 7, 1);
    CHECK_FALSE(bad.overall_pass);
    CHECK(bad.cases[0].empirical >= bad.cases[0].reference);
}

TEST_CASE("scaled spacing summary has the promised shape") {
    // trend cases only start at n = 1000, where the location has settled
    const std::vector<std::size_t> small = {200, 400};
    const LemmaCheckReport r0 = max_spacing_scaling(small, 120, 5);
    CHECK(r0.check == "spacing-scaling");
    CHECK(r0.cases.size() == 4);  // location + exponential fit, per size

    const std::vector<std::size_t> sizes = {1000, 1200};
    const LemmaCheckReport r = max_spacing_scaling(sizes, 150, 5);
    CHECK(r.cases.size() == 5);  // plus the adjacent-pair trend case
    CHECK(r.overall_pass);

    const std::vector<std::size_t> tiny = {50};
    CHECK_THROWS_AS((void)max_spacing_scaling(tiny, 100, 5), std::domain_error);
    const std::vector<std::size_t> unordered = {400, 200};
    CHECK_THROWS_AS((void)max_spacing_scaling(unordered, 100, 5), std::invalid_argument);
}
