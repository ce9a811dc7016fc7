#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "bootlab/estimators.hpp"
#include "bootlab/validation.hpp"
#include "bridge.hpp"

using namespace bootlab;

TEST_CASE("record counts and standard error") {
    EstimateRecord r;
    r.set_counts(400, 100);
    CHECK(r.estimate == 0.25);
    CHECK(r.standardError == doctest::Approx(std::sqrt(0.25 * 0.75 / 400)).epsilon(1e-15));
    CHECK_THROWS_AS(r.set_counts(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(r.set_counts(3, 4), std::invalid_argument);
}

TEST_CASE("density scalings") {
    CHECK(ell_for_theta(4) == 1);
    CHECK(ell_for_theta(5) == 2);
    CHECK(ell_for_theta(6) == 2);
    CHECK(ell_for_theta(3) == 1);
    CHECK(scaled_density(5, 2.0, 400) == doctest::Approx(2.0 * std::pow(400.0, -1.5)).epsilon(1e-14));
    CHECK(scaled_density(6, 2.0, 100) ==
          doctest::Approx(2.0 * std::sqrt(std::log(100.0)) * std::pow(100.0, -1.5)).epsilon(1e-14));
    CHECK(scaled_density(4, 1.5, 1e4) == doctest::Approx(1.5 * std::log(1e4) / 1e8).epsilon(1e-14));
    CHECK(scaled_density(4, 0.0, 50) == 0.0);
    CHECK_THROWS_AS(scaled_density(2, 1.0, 10), std::invalid_argument);
}

TEST_CASE("closed forms") {
    CHECK(oracle_formula(parse_oracle("even-not-2l-is"), 1e4, 2.0, 2) == doctest::Approx(2e-8).epsilon(1e-12));
    CHECK(oracle_formula(parse_oracle("odd-not-2l-minus-1-is"), 0, 2.0, 2) ==
          doctest::Approx(0.018315638888734).epsilon(1e-12));
    CHECK(oracle_formula(parse_oracle("odd-2l-is"), 0, 2.0, 2) == doctest::Approx(0.747645).epsilon(1e-6));
    CHECK(oracle_formula(parse_oracle("even-not-2l-is"), 100, 1.0, 1) == doctest::Approx(std::log(100.0) / 100));
    CHECK_THROWS_AS(parse_oracle("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(oracle_formula(OracleKind::OddIs2l, 0, 2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(oracle_formula(OracleKind::Theta4TwoInert, 100, 2.0, 2), std::invalid_argument);
}

TEST_CASE("event names") {
    const auto e = parse_event("not-plane-is", 3);
    CHECK(e.complement);
    CHECK(e.kind == EventKind::PlaneIS);
    CHECK(e.r == 3);
    CHECK(event_name(e) == "not-plane-is");
    for (const char* n : {"plane-ii", "plane-inert", "origin-plane-full", "origin-point-occupied",
                          "hetero-origin-zero", "zero-cluster"})
        CHECK(event_name(parse_event(n)) == n);
    CHECK_THROWS_AS(parse_event("plane-x"), std::invalid_argument);
}

TEST_CASE("mc_probability basics") {
    McParams m;
    m.n = 2;
    m.p = 1.0;
    const auto full = mc_probability(parse_event("plane-is", 1), m, 100, 3);
    CHECK(full.estimate == 1.0);
    CHECK(full.trials == 100);

    McParams q;
    q.theta = 5;
    q.a = 2;
    q.n = 60;
    const auto a = mc_probability(parse_event("plane-is", 3), q, 300, 7);
    const auto b = mc_probability(parse_event("plane-is", 3), q, 300, 7);
    CHECK(a == b);
    const auto c = mc_probability(parse_event("not-plane-is", 3), q, 300, 7);
    CHECK(c.successes + a.successes == 300);

    McParams big;
    big.theta = 4;
    big.n = 2000;
    big.L = 64;
    big.maxCells = 1000;
    CHECK_THROWS_AS(mc_probability(parse_event("origin-plane-full"), big, 1, 1), ResourceError);
}

TEST_CASE("inertness implies internal inertness in the Monte Carlo events") {
    McParams m;
    m.theta = 4;
    m.a = 3;
    m.n = 12;
    m.L = 3;
    m.boundary = Boundary::Torus;
    const auto inert = mc_probability(parse_event("plane-inert", 3), m, 300, 5);
    const auto ii = mc_probability(parse_event("plane-ii", 3), m, 300, 5);
    CHECK(inert.estimate <= ii.estimate + 3 * ii.standardError + 1e-12);
}

TEST_CASE("two-scale density edges and ordering") {
    DensityParams d;
    d.theta = 4;
    d.a = 0;
    d.n = 20;
    d.L = 6;
    CHECK(two_scale_density(d, 5, 1).estimate == 0.0);

    for (int theta : {3, 4, 5}) {
        DensityParams c;
        c.theta = theta;
        c.a = 2.5;
        c.n = 10;
        c.L = 6;
        c.sampling = LabelSampling::Exact;
        const auto res = coupled_density(c, 40, 11);
        CHECK(res.orderViolations == 0);
        CHECK(res.lower.estimate <= res.direct.estimate);
        CHECK(res.direct.estimate <= res.upper.estimate);
    }

    DensityParams tab = d;
    tab.a = 2;
    tab.sampling = LabelSampling::Tabulated;
    tab.mode = DensityMode::UpperInert;
    CHECK_THROWS_AS(two_scale_density(tab, 1, 1), std::invalid_argument);

    DensityParams huge = d;
    huge.mode = DensityMode::Direct;
    huge.n = 5000;
    huge.L = 64;
    CHECK_THROWS_AS(two_scale_density(huge, 1, 1), ResourceError);
}

TEST_CASE("phi brackets") {
    const auto [w0, z0] = phi_estimate(0.0, 3, 16, 20, 1);
    CHECK(w0.estimate == 0.0);
    CHECK(z0.estimate == 0.0);
    double prev = -1;
    for (double a : {0.5, 1.0, 2.0}) {
        const auto [wall, zero] = phi_estimate(a, 3, 32, 120, 4);
        CHECK(wall.estimate <= zero.estimate);
        CHECK(wall.estimate >= prev);
        prev = wall.estimate;
        // Binomial error at the bound itself, since an estimate of 0 or 1 reports none.
        const double lo = oracle::poisson_tail(a, 3), hi = 1 - std::exp(-4 * a);
        const double seLo = std::sqrt(lo * (1 - lo) / 120), seHi = std::sqrt(hi * (1 - hi) / 120);
        CHECK(wall.estimate >= lo - 3 * std::max(wall.standardError, seLo));
        CHECK(zero.estimate <= hi + 3 * std::max(zero.standardError, seHi));
    }
}

TEST_CASE("ac scan") {
    AcScanParams ps;
    ps.ell = 2;
    ps.epsList = {0.001, 0.0005};
    ps.aGrid = {0.05, 3.5};
    ps.L = 48;
    ps.trials = 60;
    ps.seed = 2;
    const auto res = ac_scan(ps);
    REQUIRE(res.records.size() == 4);
    CHECK(res.records[2].estimate < 0.05);
    CHECK(res.records[3].estimate > 0.5);
    REQUIRE(res.crossing);
    CHECK(*res.crossing > 0.05);
    CHECK(*res.crossing < 3.5);
    CHECK(res.smallestEps == 0.0005);

    auto bad = ps;
    bad.epsList = {0.0005, 0.001};
    CHECK_THROWS_AS(ac_scan(bad), std::invalid_argument);
    auto inadmissible = ps;
    inadmissible.aGrid = {5.0};
    CHECK_THROWS_AS(ac_scan(inadmissible), std::invalid_argument);
}

TEST_CASE("rate fits") {
    const auto f = rate_fit({{10, 1e-1}, {100, 1e-2}, {1000, 1e-3}});
    CHECK(f.exponent == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(f.prefactor == doctest::Approx(1.0).epsilon(1e-9));
    for (double r : f.residuals) CHECK(std::abs(r) < 1e-12);
    CHECK(rate_fit({{5, 0.3}, {50, 0.3}, {500, 0.3}}).exponent == doctest::Approx(0.0));
    const std::vector<std::pair<double, double>> noisy{{50, 0.01}, {100, 0.003}, {200, 0.0008}, {400, 0.0002}};
    CHECK(rate_fit(noisy).exponent == doctest::Approx(oracle::loglog_slope(noisy)).epsilon(1e-12));
    CHECK_THROWS_AS(rate_fit({{1, 1}, {2, 0}, {3, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(rate_fit({{1, 1}, {2, 1}}), std::invalid_argument);
}

TEST_CASE("sandwich check") {
    const BoxGeometry g{4, 4, Boundary::EmptyWall};
    CHECK(sandwich_check(ProductConfig(g, Fiber::HammingSquare, 5, 4)).ok);
    CHECK(sandwich_check(ProductConfig(g, Fiber::Clique, 5, 3)).ok);
    Rng rng(1);
    CHECK(sandwich_check(sample_product(g, Fiber::HammingSquare, 5, 1.0, 4, rng)).ok);
    CHECK(sandwich_check(sample_product(g, Fiber::Clique, 5, 1.0, 3, rng)).ok);

    for (int i = 0; i < 100; ++i) {
        const auto cfg = random_sandwich_instance(Fiber::HammingSquare, 4, 8, 12, rng);
        CHECK(sandwich_check(cfg).ok);
        const auto cq = random_sandwich_instance(Fiber::Clique, 3, 6, 8, rng);
        CHECK(sandwich_check(cq).ok);
    }
}

TEST_CASE("zero-cluster frequency falls with the pollution scale") {
    // q = C p^2 with C fixed; smaller p should make long zero clusters rarer.
    McParams m;
    m.L = 160;
    m.field = FieldSource::Polluted;
    std::vector<double> est;
    for (double p : {0.12, 0.09, 0.06}) {
        m.pollutedP = p;
        m.pollutedQ = 6 * p * p;
        est.push_back(mc_probability(parse_event("zero-cluster", 0, 100), m, 200, 6).estimate);
    }
    CHECK(est[0] >= est[1]);
    CHECK(est[1] >= est[2]);
    CHECK(est[0] > est[2]);
}
