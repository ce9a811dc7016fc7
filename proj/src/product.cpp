#include "bootlab/product.hpp"

#include <algorithm>
#include <stdexcept>

namespace bootlab {

std::string to_string(Fiber f) { return f == Fiber::HammingSquare ? "HAMMING_SQUARE" : "CLIQUE"; }

Fiber parse_fiber(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return c == '-' ? '_' : std::toupper(c); });
    if (t == "HAMMING_SQUARE" || t == "HAMMING") return Fiber::HammingSquare;
    if (t == "CLIQUE") return Fiber::Clique;
    throw std::invalid_argument("unknown fiber '" + std::string(text) + "'");
}

std::uint64_t product_cells(const BoxGeometry& geometry, Fiber fiber, int n) {
    const std::uint64_t f = fiber == Fiber::HammingSquare ? static_cast<std::uint64_t>(n) * n : n;
    return geometry.sites() * f;
}

ProductConfig::ProductConfig(BoxGeometry geometry, Fiber fiber, int n, int theta)
    : geom_(geometry), fiber_(fiber), n_(n), theta_(theta) {
    geom_.validate();
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (theta < 1) throw std::invalid_argument("theta must be at least 1");
    fiberSize_ = fiber == Fiber::HammingSquare ? static_cast<std::size_t>(n) * n : static_cast<std::size_t>(n);
    occ_.assign(geom_.sites() * fiberSize_, 0);
    planeCount_.assign(geom_.sites(), 0);
}

bool ProductConfig::set(std::size_t site, std::size_t cell) {
    auto& c = occ_[site * fiberSize_ + cell];
    if (c) return false;
    c = 1;
    ++planeCount_[site];
    return true;
}

std::uint64_t ProductConfig::total_occupied() const {
    std::uint64_t t = 0;
    for (auto c : planeCount_) t += c;
    return t;
}

PlaneConfig ProductConfig::plane(std::size_t site) const {
    if (fiber_ != Fiber::HammingSquare) throw std::logic_error("plane() needs a Hamming fiber");
    PlaneConfig p(n_);
    for (std::size_t c = 0; c < fiberSize_; ++c)
        if (occupied(site, c)) p.set(static_cast<int>(c / n_), static_cast<int>(c % n_));
    return p;
}

CliqueConfig ProductConfig::clique(std::size_t site) const {
    if (fiber_ != Fiber::Clique) throw std::logic_error("clique() needs a clique fiber");
    CliqueConfig q(n_);
    for (std::size_t c = 0; c < fiberSize_; ++c)
        if (occupied(site, c)) q.set(static_cast<int>(c));
    return q;
}

std::vector<std::uint32_t> ProductConfig::plane_cells(std::size_t site) const {
    std::vector<std::uint32_t> out;
    for (std::size_t c = 0; c < fiberSize_; ++c)
        if (occupied(site, c)) out.push_back(static_cast<std::uint32_t>(c));
    return out;
}

ProductConfig sample_product(const BoxGeometry& geometry, Fiber fiber, int n, double p, int theta, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("density p must lie in [0,1]");
    ProductConfig cfg(geometry, fiber, n, theta);
    const std::size_t f = cfg.fiber_size();
    for_each_bernoulli(static_cast<std::uint64_t>(cfg.sites()) * f, p, rng,
                       [&](std::uint64_t i) { cfg.set(i / f, i % f); });
    return cfg;
}

namespace {

// Fiber-neighbor occupancy of a vacant cell.
struct FiberCounts {
    const ProductConfig* cfg;
    std::vector<int> line;  // Hamming: rows then columns per site; clique: one count per site
    int n;
    bool hamming;

    explicit FiberCounts(const ProductConfig& c)
        : cfg(&c), n(c.n()), hamming(c.fiber() == Fiber::HammingSquare) {
        const std::size_t per = hamming ? 2 * static_cast<std::size_t>(n) : 1;
        line.assign(c.sites() * per, 0);
        for (std::size_t s = 0; s < c.sites(); ++s)
            for (std::size_t cell = 0; cell < c.fiber_size(); ++cell)
                if (c.occupied(s, cell)) add(s, cell);
    }
    std::size_t base(std::size_t s) const { return hamming ? s * 2 * n : s; }
    void add(std::size_t s, std::size_t cell) {
        if (hamming) {
            ++line[base(s) + cell / n];
            ++line[base(s) + n + cell % n];
        } else {
            ++line[s];
        }
    }
    int of(std::size_t s, std::size_t cell) const {
        if (hamming) return line[base(s) + cell / n] + line[base(s) + n + cell % n];
        return line[s];
    }
};

}  // namespace

ProductConfig product_fixpoint(const ProductConfig& cfg) {
    ProductConfig out = cfg;
    const auto& g = cfg.geometry();
    const auto adj = build_adjacency(g);
    const std::size_t F = cfg.fiber_size();
    const std::size_t V = cfg.sites() * F;
    const int theta = cfg.theta();
    const int n = cfg.n();
    const bool hamming = cfg.fiber() == Fiber::HammingSquare;
    const bool wallHelps = g.boundary == Boundary::OccupiedWall;

    FiberCounts fiber(cfg);
    std::vector<std::uint8_t> latt(V, 0);
    for (std::size_t s = 0; s < cfg.sites(); ++s) {
        const std::uint8_t extra = wallHelps ? adj.offWindow[s] : 0;
        for (std::size_t c = 0; c < F; ++c) {
            int k = extra;
            for (int t : adj.nbr[s])
                if (t != kNoNeighbor && cfg.occupied(static_cast<std::size_t>(t), c)) ++k;
            latt[s * F + c] = static_cast<std::uint8_t>(k);
        }
    }

    std::vector<std::uint64_t> queue;
    auto try_occupy = [&](std::size_t s, std::size_t c) {
        if (!out.occupied(s, c) && fiber.of(s, c) + latt[s * F + c] >= theta) {
            out.set(s, c);
            queue.push_back(s * F + c);
        }
    };
    for (std::size_t s = 0; s < cfg.sites(); ++s)
        for (std::size_t c = 0; c < F; ++c) try_occupy(s, c);

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t s = queue[head] / F, c = queue[head] % F;
        fiber.add(s, c);
        if (hamming) {
            const std::size_t u = c / n, v = c % n;
            for (int w = 0; w < n; ++w) try_occupy(s, u * n + w);
            for (int w = 0; w < n; ++w) try_occupy(s, w * n + v);
        } else {
            for (std::size_t w = 0; w < F; ++w) try_occupy(s, w);
        }
        for (int t : adj.nbr[s]) {
            if (t == kNoNeighbor) continue;
            ++latt[static_cast<std::size_t>(t) * F + c];
            try_occupy(static_cast<std::size_t>(t), c);
        }
    }
    return out;
}

bool is_inert(const ProductConfig& cfg, std::size_t site, int r) {
    const auto& g = cfg.geometry();
    if (site >= cfg.sites()) throw std::out_of_range("site outside the window");
    const auto adj = build_adjacency(g);
    const std::size_t F = cfg.fiber_size();
    const int n = cfg.n();
    const bool hamming = cfg.fiber() == Fiber::HammingSquare;
    const int extra = g.boundary == Boundary::OccupiedWall ? adj.offWindow[site] : 0;

    std::vector<int> rows(hamming ? n : 1, 0), cols(hamming ? n : 1, 0);
    for (std::size_t c = 0; c < F; ++c) {
        if (!cfg.occupied(site, c)) continue;
        if (hamming) {
            ++rows[c / n];
            ++cols[c % n];
        } else {
            ++rows[0];
        }
    }
    for (std::size_t c = 0; c < F; ++c) {
        if (cfg.occupied(site, c)) continue;
        int k = extra + (hamming ? rows[c / n] + cols[c % n] : rows[0]);
        for (int t : adj.nbr[site])
            if (t != kNoNeighbor && cfg.occupied(static_cast<std::size_t>(t), c)) ++k;
        if (k >= r) return false;
    }
    return true;
}

OccupationSummary summarize(const ProductConfig& cfg) {
    OccupationSummary s;
    s.perPlaneOccupied.resize(cfg.sites());
    s.fullyOccupiedMask.resize(cfg.sites());
    for (std::size_t i = 0; i < cfg.sites(); ++i) {
        s.perPlaneOccupied[i] = cfg.plane_count(i);
        s.fullyOccupiedMask[i] = cfg.plane_full(i);
    }
    s.originPointOccupied = cfg.occupied(cfg.geometry().index(cfg.geometry().origin()), 0);
    return s;
}

}  // namespace bootlab
