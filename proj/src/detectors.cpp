#include "bootlab/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace bootlab {

namespace {

Rect clip(const Rect& r, const BoxGeometry& g) {
    return {std::max(r.a1, 0), std::max(r.b1, 0), std::min(r.a2, g.width - 1), std::min(r.b2, g.height - 1)};
}

// Inclusive-rectangle counts of sites satisfying a predicate.
class RectCounter {
public:
    template <class Pred>
    RectCounter(const HeteroGrid& g, Pred pred) : w_(g.geometry.width), h_(g.geometry.height) {
        sum_.assign(static_cast<std::size_t>(w_ + 1) * (h_ + 1), 0);
        for (int y = 0; y < h_; ++y)
            for (int x = 0; x < w_; ++x)
                at(x + 1, y + 1) = at(x, y + 1) + at(x + 1, y) - at(x, y) + (pred(g.at({x, y})) ? 1 : 0);
    }
    int count(int a1, int b1, int a2, int b2) const {
        return at(a2 + 1, b2 + 1) - at(a1, b2 + 1) - at(a2 + 1, b1) + at(a1, b1);
    }

private:
    int& at(int x, int y) { return sum_[static_cast<std::size_t>(y) * (w_ + 1) + x]; }
    int at(int x, int y) const { return sum_[static_cast<std::size_t>(y) * (w_ + 1) + x]; }
    int w_, h_;
    std::vector<int> sum_;
};

}  // namespace

std::optional<Rect> detect_blocking(const HeteroGrid& g0, const Rect& region, BlockingVariant variant) {
    return detect_blocking(g0, region, variant, g0.geometry.origin());
}

std::optional<Rect> detect_blocking(const HeteroGrid& g0, const Rect& regionIn, BlockingVariant variant,
                                    Site origin) {
    const Rect region = clip(regionIn, g0.geometry);
    if (!region.contains(origin)) throw std::invalid_argument("the origin must lie inside the search region");
    const RectCounter threes(g0, [](State s) { return s == 3; });
    const RectCounter fours(g0, [](State s) { return s == 4; });
    const RectCounter obstacles(g0, [](State s) { return s == 3 || s == 4; });

    auto even_side = [&](int a1, int b1, int a2, int b2) {
        return fours.count(a1, b1, a2, b2) >= 1 || threes.count(a1, b1, a2, b2) >= 2;
    };
    auto ok = [&](int a1, int b1, int a2, int b2) {
        if (variant == BlockingVariant::Even) {
            if (a1 >= a2 || b1 >= b2) return false;
            return even_side(a1, b1, a1, b2) && even_side(a2, b1, a2, b2) && even_side(a1, b1, a2, b1) &&
                   even_side(a1, b2, a2, b2);
        }
        const int w = a2 - a1, h = b2 - b1;
        if (w >= 3 && h >= 3)
            return obstacles.count(a1, b1, a1 + 1, b2) >= 2 && obstacles.count(a2 - 1, b1, a2, b2) >= 2 &&
                   obstacles.count(a1, b1, a2, b1 + 1) >= 2 && obstacles.count(a1, b2 - 1, a2, b2) >= 2;
        const int inside = obstacles.count(a1, b1, a2, b2);
        if (w <= 2 && h <= 2) return inside >= 2;
        return inside >= 4;
    };

    std::optional<Rect> best;
    for (int a1 = region.a1; a1 <= origin.x; ++a1)
        for (int b1 = region.b1; b1 <= origin.y; ++b1)
            for (int a2 = origin.x; a2 <= region.a2; ++a2)
                for (int b2 = origin.y; b2 <= region.b2; ++b2) {
                    const Rect r{a1, b1, a2, b2};
                    if (best && r.area() > best->area()) break;
                    if (!ok(a1, b1, a2, b2)) continue;
                    if (!best || std::make_tuple(r.area(), a1, b1, a2, b2) <
                                     std::make_tuple(best->area(), best->a1, best->b1, best->a2, best->b2))
                        best = r;
                }
    return best;
}

bool is_protected_rect(const HeteroGrid& g0, const Rect& r) {
    if (!r.nondegenerate()) throw std::invalid_argument("protected rectangles must be nondegenerate");
    if (!g0.geometry.contains({r.a1, r.b1}) || !g0.geometry.contains({r.a2, r.b2}))
        throw std::invalid_argument("rectangle leaves the window");
    auto lifted = [&](int x, int y) {
        const State s = g0.at({x, y});
        return s == kTheta ? State{3} : std::min<State>(s, 3);
    };
    for (int x : {r.a1, r.a2})
        for (int y : {r.b1, r.b2})
            if (lifted(x, y) != 3) return false;
    for (int y = r.b1; y <= r.b2; ++y)
        for (int x = r.a1; x <= r.a2; ++x) {
            const State s = lifted(x, y);
            if (s == 0) return false;
            const bool onBoundary = x == r.a1 || x == r.a2 || y == r.b1 || y == r.b2;
            if (onBoundary && s == 1) return false;
        }
    return true;
}

SiteMasks green_red_masks(const HeteroGrid& g0) {
    const auto& g = g0.geometry;
    SiteMasks m;
    m.geometry = g;
    m.green.assign(g.sites(), 0);
    m.red.assign(g.sites(), 0);
    m.zero.assign(g.sites(), 0);
    // Neighbor state, or nothing when it falls off a walled window.
    auto nb = [&](int x, int y, int dx, int dy) -> std::optional<State> {
        int nx = x + dx, ny = y + dy;
        if (g.boundary == Boundary::Torus) {
            nx = (nx + g.width) % g.width;
            ny = (ny + g.height) % g.height;
        } else if (!g.contains({nx, ny})) {
            return std::nullopt;
        }
        return g0.at({nx, ny});
    };
    auto all = [&](int x, int y, std::initializer_list<std::pair<int, int>> cells, auto pred) {
        for (auto [dx, dy] : cells) {
            auto s = nb(x, y, dx, dy);
            if (!s || !pred(*s)) return false;
        }
        return true;
    };
    auto low = [](State s) { return s <= 1; };
    auto high = [](State s) { return s >= 3; };
    // Rows of the pattern read north to south; '*' cells are NE and SW.
    const std::initializer_list<std::pair<int, int>> main = {{-1, 1}, {0, 1}, {-1, 0}, {1, 0}, {0, -1}, {1, -1}};
    const std::initializer_list<std::pair<int, int>> mirror = {{0, 1}, {1, 1}, {-1, 0}, {1, 0}, {-1, -1}, {0, -1}};
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) {
            const std::size_t i = g.index({x, y});
            const State s = g0.at({x, y});
            m.zero[i] = s == 0;
            if (s <= 1) m.green[i] = 1;
            if (s == 2 && (all(x, y, main, low) || all(x, y, mirror, low))) m.green[i] = 1;
            if (high(s)) m.red[i] = 1;
            if (s == 2 && all(x, y, main, high)) m.red[i] = 1;
        }
    return m;
}

bool circuit_or_connection(const SiteMasks& masks, CircuitMode mode, const Rect& box) {
    return circuit_or_connection(masks, mode, box, masks.geometry.origin());
}

bool circuit_or_connection(const SiteMasks& masks, CircuitMode mode, const Rect& boxIn, Site origin) {
    const auto& g = masks.geometry;
    const Rect box = clip(boxIn, g);
    if (!box.contains(origin)) throw std::invalid_argument("the origin must lie inside the box");
    std::vector<std::uint8_t> seen(g.sites(), 0);
    std::vector<Site> stack{origin};
    seen[g.index(origin)] = 1;

    if (mode == CircuitMode::GreenConnection) {
        if (!masks.green[g.index(origin)]) return false;
        constexpr int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
        while (!stack.empty()) {
            const Site p = stack.back();
            stack.pop_back();
            if (masks.zero[g.index(p)]) return true;
            for (int d = 0; d < 4; ++d) {
                const Site q{p.x + dx[d], p.y + dy[d]};
                if (!box.contains(q)) continue;
                const std::size_t j = g.index(q);
                if (seen[j] || !masks.green[j]) continue;
                seen[j] = 1;
                stack.push_back(q);
            }
        }
        return false;
    }

    // A red circuit encloses the origin exactly when the non-red cluster of the
    // origin under triangular adjacency stays off the box boundary.
    constexpr int dx[6] = {1, -1, 0, 0, 1, -1}, dy[6] = {0, 0, 1, -1, 1, -1};
    while (!stack.empty()) {
        const Site p = stack.back();
        stack.pop_back();
        if (p.x == box.a1 || p.x == box.a2 || p.y == box.b1 || p.y == box.b2) return false;
        for (int d = 0; d < 6; ++d) {
            const Site q{p.x + dx[d], p.y + dy[d]};
            const std::size_t j = g.index(q);
            if (seen[j] || masks.red[j]) continue;
            seen[j] = 1;
            stack.push_back(q);
        }
    }
    return true;
}

BoxTiling good_boxes(const ClassificationGrid& c, int N) {
    if (N < 1) throw std::invalid_argument("box size must be at least 1");
    BoxTiling t;
    t.boxSize = N;
    t.boxesX = c.geometry.width / N;
    t.boxesY = c.geometry.height / N;
    t.excludedColumns = c.geometry.width - t.boxesX * N;
    t.excludedRows = c.geometry.height - t.boxesY * N;
    t.labels.assign(static_cast<std::size_t>(t.boxesX) * t.boxesY, BoxLabel::Neither);
    for (int by = 0; by < t.boxesY; ++by)
        for (int bx = 0; bx < t.boxesX; ++bx) {
            bool allLow = true, anyZero = false, allTwo = true;
            std::vector<std::uint8_t> rowLow(N, 0), colLow(N, 0);
            for (int j = 0; j < N; ++j)
                for (int i = 0; i < N; ++i) {
                    const State s = c.labels[c.geometry.index({bx * N + i, by * N + j})];
                    allLow = allLow && s <= 1;
                    allTwo = allTwo && s <= 2;
                    anyZero = anyZero || s == 0;
                    if (s <= 1) rowLow[j] = colLow[i] = 1;
                }
            BoxLabel lab = BoxLabel::Neither;
            if (allLow && anyZero)
                lab = BoxLabel::VeryGood;
            else if (allTwo && std::all_of(rowLow.begin(), rowLow.end(), [](auto v) { return v; }) &&
                     std::all_of(colLow.begin(), colLow.end(), [](auto v) { return v; }))
                lab = BoxLabel::Good;
            t.labels[static_cast<std::size_t>(by) * t.boxesX + bx] = lab;
        }
    return t;
}

int box_scale(double n, int ell) {
    if (n <= 1 || ell < 1) throw std::invalid_argument("box scale needs n > 1 and ell >= 1");
    const double ln = std::log(n);
    const double v = ell == 1 ? n * std::pow(ln, -0.75) : std::pow(n, 1.0 / ell) * std::pow(ln, -1.0 / (2.0 * ell));
    return std::max(1, static_cast<int>(std::floor(v)));
}

}  // namespace bootlab
