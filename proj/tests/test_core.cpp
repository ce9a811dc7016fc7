#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bootlab/plane.hpp"
#include "bootlab/rng.hpp"
#include "bootlab/validation.hpp"
#include "bridge.hpp"

using namespace bootlab;

namespace {

PlaneConfig from_cells(int n, std::initializer_list<std::pair<int, int>> cells) {
    PlaneConfig p(n);
    for (auto [u, v] : cells) p.set(u, v);
    return p;
}

bool subset(const PlaneConfig& a, const PlaneConfig& b) {
    for (int u = 0; u < a.n(); ++u)
        for (int v = 0; v < a.n(); ++v)
            if (a.occupied(u, v) && !b.occupied(u, v)) return false;
    return true;
}

bool counts_coherent(const PlaneConfig& p) {
    std::uint64_t total = 0;
    for (int u = 0; u < p.n(); ++u) {
        int row = 0, col = 0;
        for (int v = 0; v < p.n(); ++v) {
            row += p.occupied(u, v);
            col += p.occupied(v, u);
        }
        if (row != p.row_count(u) || col != p.col_count(u)) return false;
        total += row;
    }
    return total == p.occupied_count();
}

bool oracle_is(const PlaneConfig& p, int r) {
    const auto fin = oracle::plane_closure(bridge::plane(p), r);
    for (const auto& row : fin)
        for (int c : row)
            if (!c) return false;
    return true;
}

}  // namespace

TEST_CASE("derived seeds are deterministic and distinct across trials") {
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
    CHECK(derive_seed(7, 3) != derive_seed(7, 4));
    CHECK(derive_seed(7, 3) != derive_seed(8, 3));
    Rng a = trial_rng(11, 2), b = trial_rng(11, 2);
    for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("uniform draws stay in range and below() is unbiased enough") {
    Rng rng(5);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        hist[rng.below(7)]++;
    }
    for (int h : hist) CHECK(std::abs(h - 10000) < 500);
}

TEST_CASE("geometric skipping visits an increasing Bernoulli subset") {
    Rng rng(9);
    std::vector<std::uint64_t> seen;
    for_each_bernoulli(1000, 1.0, rng, [&](std::uint64_t i) { seen.push_back(i); });
    CHECK(seen.size() == 1000);
    seen.clear();
    for_each_bernoulli(1000, 0.0, rng, [&](std::uint64_t i) { seen.push_back(i); });
    CHECK(seen.empty());

    // Count over many draws against Binomial(total, p) moments.
    const std::uint64_t total = 5000;
    const double p = 0.013;
    double sum = 0;
    const int reps = 400;
    for (int r = 0; r < reps; ++r) {
        std::uint64_t last = 0, count = 0;
        bool first = true;
        for_each_bernoulli(total, p, rng, [&](std::uint64_t i) {
            REQUIRE(i < total);
            if (!first) REQUIRE(i > last);
            first = false;
            last = i;
            ++count;
        });
        sum += static_cast<double>(count);
    }
    const double mean = sum / reps;
    const double sd = std::sqrt(total * p * (1 - p) / reps);
    CHECK(std::abs(mean - total * p) < 5 * sd);
}

TEST_CASE("poisson draws are monotone in the mean for a shared uniform") {
    Rng rng(3);
    double mean = 0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.uniform();
        CHECK(poisson_from_uniform(0.5, u) <= poisson_from_uniform(1.0, u));
        CHECK(poisson_from_uniform(1.0, u) <= poisson_from_uniform(2.0, u));
        mean += poisson_from_uniform(2.0, u);
    }
    CHECK(std::abs(mean / 20000 - 2.0) < 5 * std::sqrt(2.0 / 20000));
    CHECK(poisson_from_uniform(0.0, 0.999) == 0);
}

TEST_CASE("sample_plane edge densities") {
    Rng rng(1);
    const auto empty = sample_plane(2, 0.0, rng);
    CHECK(empty.occupied_count() == 0);
    for (int u = 0; u < 2; ++u) CHECK(empty.row_count(u) == 0);
    const auto full = sample_plane(2, 1.0, rng);
    CHECK(full.occupied_count() == 4);
    for (int u = 0; u < 2; ++u) {
        CHECK(full.row_count(u) == 2);
        CHECK(full.col_count(u) == 2);
    }
    CHECK_THROWS_AS(sample_plane(0, 0.5, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_plane(3, 1.5, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_plane(3, -0.1, rng), std::invalid_argument);
}

TEST_CASE("sample_plane totals follow the binomial law") {
    const int n = 100, draws = 1000;
    const double p = 0.01, mu = n * n * p, sd = std::sqrt(n * n * p * (1 - p));
    double sum = 0;
    for (int t = 0; t < draws; ++t) {
        Rng rng = trial_rng(42, t);
        const auto cfg = sample_plane(n, p, rng);
        CHECK(std::abs(static_cast<double>(cfg.occupied_count()) - mu) < 5 * sd);
        if (t < 20) CHECK(counts_coherent(cfg));
        sum += static_cast<double>(cfg.occupied_count());
    }
    CHECK(std::abs(sum / draws - mu) < 5 * sd / std::sqrt(draws));
}

TEST_CASE("plane_fixpoint small examples") {
    const auto row = from_cells(5, {{2, 0}, {2, 1}, {2, 2}, {2, 3}, {2, 4}});
    const auto filled = plane_fixpoint(row, 1);
    CHECK(filled.full());
    CHECK(bridge::same(filled, oracle::plane_closure(bridge::plane(row), 1)));

    PlaneConfig empty(6);
    CHECK(plane_fixpoint(empty, 1) == empty);
    CHECK(plane_fixpoint(empty, 3) == empty);

    const auto single = from_cells(5, {{1, 3}});
    CHECK(plane_fixpoint(single, 2) == single);
    CHECK(bridge::same(single, oracle::plane_closure(bridge::plane(single), 2)));
}

TEST_CASE("plane_flags examples") {
    PlaneConfig full(3);
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v) full.set(u, v);
    for (int r = 0; r <= 5; ++r) {
        const auto f = plane_flags(full, r);
        CHECK(f.isIS);
        CHECK(f.isII);
    }
    const auto e = plane_flags(PlaneConfig(4), 1);
    CHECK_FALSE(e.isIS);
    CHECK(e.isII);

    const auto two = from_cells(4, {{1, 0}, {1, 2}});
    const auto f = plane_flags(two, 1);
    CHECK(f.isIS);
    CHECK_FALSE(f.isII);
    CHECK(f.isIS == oracle_is(two, 1));

    // Threshold 0 fills everything at once.
    const auto z = plane_flags(PlaneConfig(3), 0);
    CHECK(z.isIS);
    CHECK_FALSE(z.isII);
}

TEST_CASE("queue engine matches the reference on random planes") {
    Rng rng(2024);
    for (int i = 0; i < 500; ++i) {
        const auto p = random_small_plane(rng);
        const int r = static_cast<int>(rng.below(7));
        const auto ref = oracle::plane_closure(bridge::plane(p), r);
        const auto fin = plane_fixpoint(p, r);
        REQUIRE(bridge::same(fin, ref));
        CHECK(counts_coherent(fin));
        CHECK(plane_fixpoint(fin, r) == fin);
        CHECK(subset(p, fin));

        const auto flags = plane_flags(p, r);
        CHECK(flags.isIS == fin.full());
        CHECK(flags.isII == (plane_step(p, r) == p));

        PlaneEngine engine(p.n());
        const auto cells = p.occupied_cells();
        const auto out = engine.run(cells, r);
        CHECK(out.spanned == flags.isIS);
        CHECK(out.inert == flags.isII);
        if (!out.spanned) CHECK(engine.occupied_count() == fin.occupied_count());
        if (flags.isIS && flags.isII) CHECK((p.full() || r == 0));
    }
}

TEST_CASE("plane dynamics are monotone in the configuration and the threshold") {
    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_small_plane(rng, 10);
        auto q = p;
        const int extra = static_cast<int>(rng.below(4));
        for (int k = 0; k < extra; ++k) q.set(static_cast<int>(rng.below(p.n())), static_cast<int>(rng.below(p.n())));
        const int r = 1 + static_cast<int>(rng.below(5));
        CHECK(subset(plane_fixpoint(p, r), plane_fixpoint(q, r)));
        CHECK(subset(plane_fixpoint(p, r + 1), plane_fixpoint(p, r)));
        if (plane_flags(p, r + 1).isIS) CHECK(plane_flags(p, r).isIS);
        if (plane_flags(p, r).isII) CHECK(plane_flags(p, r + 1).isII);
    }
}

TEST_CASE("sparse inertness agrees with a dense recount") {
    Rng rng(31);
    for (int i = 0; i < 300; ++i) {
        const int n = 2 + static_cast<int>(rng.below(9));
        auto cells = [&](double p) {
            std::vector<std::uint32_t> c;
            for (int k = 0; k < n * n; ++k)
                if (rng.bernoulli(p)) c.push_back(static_cast<std::uint32_t>(k));
            return c;
        };
        const auto self = cells(0.15);
        std::vector<std::vector<std::uint32_t>> nb;
        const int m = static_cast<int>(rng.below(5));
        for (int k = 0; k < m; ++k) nb.push_back(cells(0.3));
        std::vector<const std::vector<std::uint32_t>*> ptrs;
        for (const auto& v : nb) ptrs.push_back(&v);
        const int extra = static_cast<int>(rng.below(3));
        const int r = 1 + static_cast<int>(rng.below(6));

        std::vector<int> occ(n * n, 0), count(n * n, extra);
        for (auto c : self) occ[c] = 1;
        for (const auto& v : nb)
            for (auto c : v) count[c]++;
        bool inert = true;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (occ[u * n + v]) continue;
                int c = count[u * n + v];
                for (int t = 0; t < n; ++t) c += occ[u * n + t] + occ[t * n + v];
                if (c >= r) inert = false;
            }
        CHECK(sparse_plane_inert(n, self, ptrs, extra, r) == inert);
    }
}
