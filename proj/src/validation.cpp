#include "bootlab/validation.hpp"

#include <algorithm>
#include <cmath>

#include "bootlab/estimators.hpp"
#include "bootlab/initializers.hpp"

namespace bootlab {

namespace {

template <std::size_t K>
State draw(Rng& rng, const std::array<double, K>& weights) {
    double total = 0;
    for (double w : weights) total += w;
    double u = rng.uniform() * total;
    for (std::size_t k = 0; k < K; ++k) {
        if (u < weights[k]) return static_cast<State>(k);
        u -= weights[k];
    }
    return static_cast<State>(K - 1);
}

Boundary random_boundary(Rng& rng) {
    const auto k = rng.below(3);
    return k == 0 ? Boundary::Torus : k == 1 ? Boundary::EmptyWall : Boundary::OccupiedWall;
}

}  // namespace

PlaneConfig random_small_plane(Rng& rng, int maxN) {
    const int n = 1 + static_cast<int>(rng.below(maxN));
    const double p = 0.35 * rng.uniform();
    return sample_plane(n, p, rng);
}

HeteroGrid random_rule_grid(Rule rule, int L, Rng& rng) {
    const BoxGeometry geom{L, L, random_boundary(rng)};
    int theta = 0;
    if (rule == Rule::Zeta) theta = 3 + static_cast<int>(rng.below(4));
    HeteroGrid g(geom, rule, theta);
    const double zeros = 0.02 + 0.2 * rng.uniform();
    for (auto& s : g.states) {
        if (rng.uniform() < zeros) {
            s = 0;
            continue;
        }
        switch (rule) {
            case Rule::Xi: s = 1 + draw<5>(rng, {0.3, 0.3, 0.2, 0.1, 0.1}); break;
            case Rule::Chi: s = 1 + draw<3>(rng, {0.3, 0.35, 0.35}); break;
            case Rule::Zeta: {
                const State k = draw<6>(rng, {0.2, 0.2, 0.2, 0.15, 0.1, 0.15});
                s = k == 5 ? kTheta : static_cast<State>(k + 1);
                break;
            }
        }
    }
    if (rng.uniform() < 0.25) {
        g.frozen.assign(g.states.size(), 0);
        for (auto& f : g.frozen) f = rng.uniform() < 0.1;
    }
    return g;
}

ProductConfig random_sandwich_instance(Fiber fiber, int theta, int L, int n, Rng& rng) {
    const BoxGeometry geom{L, L, random_boundary(rng)};
    double p;
    if (fiber == Fiber::HammingSquare) {
        // Mean occupied cells per plane between about 1 and 10.
        p = (0.5 + 9.5 * rng.uniform()) / (static_cast<double>(n) * n);
    } else {
        p = std::min(1.0, (0.3 + 3.0 * rng.uniform()) / n);
    }
    return sample_product(geom, fiber, n, p, theta, rng);
}

HeteroGrid blocking_instance(BlockingVariant variant, Rng& rng) {
    HeteroGrid g({15, 15, Boundary::EmptyWall}, Rule::Xi, 0);
    for (int y = 0; y < 15; ++y)
        for (int x = 0; x < 15; ++x) {
            State& s = g.at({x, y});
            if (x == 0 || y == 0 || x == 14 || y == 14) {
                s = 0;
            } else if (variant == BlockingVariant::Even) {
                s = draw<4>(rng, {0.03, 0.2, 0.5, 0.27});
            } else {
                s = draw<5>(rng, {0.03, 0.2, 0.45, 0.2, 0.12});
            }
        }
    if (variant == BlockingVariant::Even && rng.uniform() < 0.5) {
        const int x = 1 + static_cast<int>(rng.below(13)), y = 1 + static_cast<int>(rng.below(13));
        g.at({x, y}) = 4;
    }
    return g;
}

Rect blocking_region(const HeteroGrid& g) { return {1, 1, g.geometry.width - 2, g.geometry.height - 2}; }

ProtectedInstance protected_instance(Rng& rng) {
    const int W = 8 + static_cast<int>(rng.below(9)), H = 8 + static_cast<int>(rng.below(9));
    ProtectedInstance out{HeteroGrid({W, H, Boundary::EmptyWall}, Rule::Xi, 0), {}};
    Rect r;
    r.a1 = static_cast<int>(rng.below(W - 1));
    r.a2 = r.a1 + 1 + static_cast<int>(rng.below(W - 1 - r.a1));
    r.b1 = static_cast<int>(rng.below(H - 1));
    r.b2 = r.b1 + 1 + static_cast<int>(rng.below(H - 1 - r.b1));
    out.rect = r;
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            State& s = out.grid.at({x, y});
            const bool inside = r.contains({x, y});
            const bool corner = (x == r.a1 || x == r.a2) && (y == r.b1 || y == r.b2);
            const bool edge = inside && (x == r.a1 || x == r.a2 || y == r.b1 || y == r.b2);
            if (!inside)
                s = draw<6>(rng, {0.3, 0.2, 0.2, 0.1, 0.1, 0.1});
            else if (corner)
                s = 3 + draw<3>(rng, {0.7, 0.2, 0.1});
            else if (edge)
                s = 2 + draw<4>(rng, {0.6, 0.25, 0.1, 0.05});
            else
                s = 1 + draw<5>(rng, {0.45, 0.35, 0.1, 0.05, 0.05});
        }
    return out;
}

GreenRedInstance green_red_instance(Rng& rng) {
    const int L = 31;
    const BoxGeometry geom{L, L, Boundary::EmptyWall};
    const double a = 0.6 + 1.4 * rng.uniform();
    const double epsChoices[3] = {0.0, 0.003, 0.03};
    const double eps = epsChoices[rng.below(3)];
    GreenRedInstance out{init_limit_grid({a, eps, 2, 5}, LimitVariant::XiAeps, geom, rng), {}};
    const int rad = 2 + static_cast<int>(rng.below(14));
    const Site o = geom.origin();
    out.box = {o.x - rad, o.y - rad, o.x + rad, o.y + rad};
    return out;
}

std::vector<std::uint8_t> rect_mask(const BoxGeometry& g, const Rect& r) {
    std::vector<std::uint8_t> m(g.sites(), 0);
    for (int y = std::max(0, r.b1); y <= std::min(g.height - 1, r.b2); ++y)
        for (int x = std::max(0, r.a1); x <= std::min(g.width - 1, r.a2); ++x) m[g.index({x, y})] = 1;
    return m;
}

HeteroGrid iterate_steps(const HeteroGrid& g) {
    HeteroGrid cur = g;
    while (true) {
        HeteroGrid next = hetero_step(cur);
        if (next.states == cur.states) return cur;
        cur = std::move(next);
    }
}

PlaneConfig iterate_plane_steps(const PlaneConfig& p, int r) {
    PlaneConfig cur = p;
    while (true) {
        PlaneConfig next = plane_step(cur, r);
        if (next == cur) return cur;
        cur = std::move(next);
    }
}

std::vector<CheckResult> run_validation(bool quick, std::uint64_t seed) {
    std::vector<CheckResult> out;
    const std::uint64_t scale = quick ? 1 : 5;
    auto stream = [&](std::uint64_t check, std::uint64_t i) { return trial_rng(derive_seed(seed, check), i); };

    {
        CheckResult c{"plane engine equals synchronous stepping", true, 0, 0, ""};
        for (std::uint64_t i = 0; i < 100 * scale && c.passed; ++i) {
            Rng rng = stream(1, i);
            const auto p = random_small_plane(rng);
            const int r = static_cast<int>(rng.below(7));
            ++c.cases;
            const auto flags = plane_flags(p, r);
            const auto fix = plane_fixpoint(p, r);
            const auto ref = iterate_plane_steps(p, r);
            if (!(fix == ref) || flags.isIS != ref.full() || flags.isII != (plane_step(p, r) == p)) {
                c.passed = false;
                c.detail = "mismatch on instance " + std::to_string(i);
            }
        }
        out.push_back(c);
    }
    for (Rule rule : {Rule::Xi, Rule::Chi, Rule::Zeta}) {
        CheckResult c{"queue fixpoint equals synchronous stepping (" + to_string(rule) + ")", true, 0, 0, ""};
        for (std::uint64_t i = 0; i < 100 * scale && c.passed; ++i) {
            Rng rng = stream(2 + static_cast<int>(rule), i);
            const auto g = random_rule_grid(rule, 2 + static_cast<int>(rng.below(19)), rng);
            ++c.cases;
            FixpointTrace trace;
            if (!(hetero_fixpoint(g, &trace) == iterate_steps(g)) || trace.triggerDecreased) {
                c.passed = false;
                c.detail = "mismatch on instance " + std::to_string(i);
            }
        }
        out.push_back(c);
    }
    for (Fiber fiber : {Fiber::HammingSquare, Fiber::Clique}) {
        CheckResult c{"sandwich inclusions (" + to_string(fiber) + ")", true, 0, 0, ""};
        const bool ham = fiber == Fiber::HammingSquare;
        for (std::uint64_t i = 0; i < 40 * scale && c.passed; ++i) {
            Rng rng = stream(10 + ham, i);
            const auto cfg = ham ? random_sandwich_instance(fiber, 4, 6, 8, rng)
                                 : random_sandwich_instance(fiber, 3, 6, 8, rng);
            ++c.cases;
            const auto rep = sandwich_check(cfg);
            if (!rep.ok) {
                c.passed = false;
                c.detail = "instance " + std::to_string(i) + ": " + rep.detail;
            }
        }
        out.push_back(c);
    }
    for (BlockingVariant v : {BlockingVariant::Even, BlockingVariant::Four}) {
        CheckResult c{std::string("blocking witness when the origin survives (") +
                      (v == BlockingVariant::Even ? "EVEN" : "FOUR") + ")", true, 0, 0, ""};
        for (std::uint64_t i = 0; i < 60 * scale && c.passed; ++i) {
            Rng rng = stream(20 + static_cast<int>(v), i);
            const auto g = blocking_instance(v, rng);
            ++c.cases;
            if (hetero_fixpoint(g).at(g.geometry.origin()) == 0) continue;
            ++c.relevant;
            if (!detect_blocking(g, blocking_region(g), v)) {
                c.passed = false;
                c.detail = "no witness on instance " + std::to_string(i);
            }
        }
        out.push_back(c);
    }
    {
        CheckResult c{"protected rectangles never change", true, 0, 0, ""};
        for (std::uint64_t i = 0; i < 40 * scale && c.passed; ++i) {
            Rng rng = stream(30, i);
            const auto inst = protected_instance(rng);
            ++c.cases;
            const auto mask = rect_mask(inst.grid.geometry, inst.rect);
            const auto fin = restricted_fixpoint(inst.grid, mask, 0);
            bool same = is_protected_rect(inst.grid, inst.rect);
            for (std::size_t s = 0; s < mask.size() && same; ++s)
                if (mask[s] && fin.states[s] != inst.grid.states[s]) same = false;
            if (!same) {
                c.passed = false;
                c.detail = "instance " + std::to_string(i);
            }
        }
        out.push_back(c);
    }
    {
        CheckResult green{"green connection forces the origin to 0", true, 0, 0, ""};
        CheckResult red{"red circuit without zeros keeps the origin nonzero", true, 0, 0, ""};
        for (std::uint64_t i = 0; i < 60 * scale; ++i) {
            Rng rng = stream(40, i);
            const auto inst = green_red_instance(rng);
            const auto masks = green_red_masks(inst.grid);
            const bool originZero = hetero_fixpoint(inst.grid).at(inst.grid.geometry.origin()) == 0;
            ++green.cases;
            ++red.cases;
            if (circuit_or_connection(masks, CircuitMode::GreenConnection, inst.box)) {
                ++green.relevant;
                if (!originZero && green.passed) {
                    green.passed = false;
                    green.detail = "instance " + std::to_string(i);
                }
            }
            const auto boxMask = rect_mask(inst.grid.geometry, inst.box);
            bool zeroInBox = false;
            for (std::size_t s = 0; s < boxMask.size(); ++s) zeroInBox = zeroInBox || (boxMask[s] && masks.zero[s]);
            if (!zeroInBox && circuit_or_connection(masks, CircuitMode::RedTCircuit, inst.box)) {
                ++red.relevant;
                if (originZero && red.passed) {
                    red.passed = false;
                    red.detail = "instance " + std::to_string(i);
                }
            }
        }
        out.push_back(green);
        out.push_back(red);
    }
    return out;
}

}  // namespace bootlab
