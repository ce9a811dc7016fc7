#include "bootlab/initializers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bootlab {

std::string to_string(ClassMode m) { return m == ClassMode::LowerIS ? "LOWER_IS" : "UPPER_INERT"; }

ClassMode parse_class_mode(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return c == '-' ? '_' : std::toupper(c); });
    if (t == "LOWER_IS" || t == "LOWER") return ClassMode::LowerIS;
    if (t == "UPPER_INERT" || t == "UPPER") return ClassMode::UpperInert;
    throw std::invalid_argument("unknown classification mode '" + std::string(text) + "'");
}

HeteroGrid ClassificationGrid::to_grid() const {
    HeteroGrid g(geometry, Rule::Xi, 0);
    g.states = labels;
    return g;
}

State lower_label(PlaneEngine& engine, std::span<const std::uint32_t> cells, int theta) {
    for (int k = 0; k <= 4; ++k) {
        const int r = theta - k;
        if (r <= 0 || engine.run(cells, r).spanned) return static_cast<State>(k);
    }
    return 5;
}

State upper_label(int n, std::span<const std::uint32_t> cells,
                  std::span<const std::vector<std::uint32_t>* const> neighbors, int extra, int theta) {
    // A plane that starts full is its own final state; label it 0.
    if (cells.size() == static_cast<std::size_t>(n) * n) return 0;
    for (int k = 0; k <= 4; ++k)
        if (!sparse_plane_inert(n, cells, neighbors, extra, theta - k)) return static_cast<State>(k);
    return 5;
}

namespace {

ClassificationGrid classify_sub(const ProductConfig& cfg, ClassMode mode, int margin, Boundary outBoundary) {
    if (cfg.fiber() != Fiber::HammingSquare) throw std::invalid_argument("plane classification needs a Hamming fiber");
    const auto& g = cfg.geometry();
    ClassificationGrid out;
    out.geometry = {g.width - 2 * margin, g.height - 2 * margin, outBoundary};
    out.geometry.validate();
    out.mode = mode;
    out.labels.assign(out.geometry.sites(), 0);
    const int theta = cfg.theta();

    std::vector<std::vector<std::uint32_t>> cells(cfg.sites());
    for (std::size_t s = 0; s < cfg.sites(); ++s) cells[s] = cfg.plane_cells(s);

    if (mode == ClassMode::LowerIS) {
        PlaneEngine engine(cfg.n());
        for (int y = 0; y < out.geometry.height; ++y)
            for (int x = 0; x < out.geometry.width; ++x)
                out.labels[out.geometry.index({x, y})] =
                    lower_label(engine, cells[g.index({x + margin, y + margin})], theta);
        return out;
    }
    const auto adj = build_adjacency(g);
    const bool wallHelps = g.boundary == Boundary::OccupiedWall;
    for (int y = 0; y < out.geometry.height; ++y) {
        for (int x = 0; x < out.geometry.width; ++x) {
            const std::size_t s = g.index({x + margin, y + margin});
            std::array<const std::vector<std::uint32_t>*, 4> nb{};
            for (int d = 0; d < 4; ++d) nb[d] = adj.nbr[s][d] == kNoNeighbor ? nullptr : &cells[adj.nbr[s][d]];
            out.labels[out.geometry.index({x, y})] =
                upper_label(cfg.n(), cells[s], nb, wallHelps ? adj.offWindow[s] : 0, theta);
        }
    }
    return out;
}

}  // namespace

ClassificationGrid classify_grid(const ProductConfig& cfg, ClassMode mode) {
    return classify_sub(cfg, mode, 0, cfg.geometry().boundary);
}

ClassificationGrid classify_interior(const ProductConfig& withHalo, ClassMode mode, Boundary interiorBoundary) {
    if (withHalo.geometry().width < 3 || withHalo.geometry().height < 3)
        throw std::invalid_argument("a halo window needs at least 3x3 sites");
    return classify_sub(withHalo, mode, 1, interiorBoundary);
}

State nz(std::int64_t m, int theta) {
    if (m < 0) throw std::invalid_argument("nz needs a nonnegative count");
    if (m == 0) return kTheta;
    if (m >= theta) return 0;
    const std::int64_t k = theta - m;
    return k <= 4 ? static_cast<State>(k) : State{5};
}

std::string to_string(LimitVariant v) {
    switch (v) {
        case LimitVariant::XiAeps: return "XI_AEPS";
        case LimitVariant::ChiAeps: return "CHI_AEPS";
        case LimitVariant::ZetaPoisson: return "ZETA_POISSON";
    }
    return "?";
}

LimitVariant parse_limit_variant(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return c == '-' ? '_' : std::toupper(c); });
    if (t == "XI_AEPS") return LimitVariant::XiAeps;
    if (t == "CHI_AEPS") return LimitVariant::ChiAeps;
    if (t == "ZETA_POISSON") return LimitVariant::ZetaPoisson;
    throw std::invalid_argument("unknown initialization '" + std::string(text) + "'");
}

namespace {
double alpha(const LimitParams& p) { return std::pow(p.a, p.ell) / std::tgamma(p.ell + 1.0); }
}  // namespace

double eps_bound(const LimitParams& params, LimitVariant variant) {
    switch (variant) {
        case LimitVariant::XiAeps: {
            const double al = alpha(params);
            return std::exp(-al) - std::exp(-2 * al);
        }
        case LimitVariant::ChiAeps: return params.a * std::exp(-params.a);
        case LimitVariant::ZetaPoisson: return 1.0;
    }
    return 0.0;
}

void check_limit_params(const LimitParams& params, LimitVariant variant) {
    if (variant == LimitVariant::ZetaPoisson) {
        if (!(params.a >= 0.0) || !std::isfinite(params.a)) throw std::invalid_argument("a must be nonnegative");
        if (params.theta < 3) throw std::invalid_argument("the zeta field needs theta >= 3");
        return;
    }
    if (!(params.a > 0.0) || !std::isfinite(params.a)) throw std::invalid_argument("a must be positive");
    if (params.ell < 1) throw std::invalid_argument("ell must be at least 1");
    const double bound = eps_bound(params, variant);
    if (!(params.eps >= 0.0) || !(params.eps < bound))
        throw std::invalid_argument("eps=" + std::to_string(params.eps) + " is outside the admissible range [0, " +
                                    std::to_string(bound) + ")");
}

std::array<double, 4> limit_marginals(const LimitParams& params, LimitVariant variant) {
    check_limit_params(params, variant);
    std::array<double, 4> p{};
    p[0] = params.eps;
    if (variant == LimitVariant::XiAeps) {
        const double al = alpha(params);
        const double e1 = std::exp(-al);
        p[1] = (1 - e1) * (1 - e1);
        p[3] = e1 * e1;
    } else if (variant == LimitVariant::ChiAeps) {
        const double e = std::exp(-params.a);
        p[1] = 1 - (params.a + 1) * e;
        p[3] = e;
    } else {
        throw std::invalid_argument("the zeta field has no four-state marginal");
    }
    p[2] = std::max(0.0, 1.0 - p[0] - p[1] - p[3]);
    return p;
}

HeteroGrid init_limit_grid(const LimitParams& params, LimitVariant variant, const BoxGeometry& geom, Rng& rng) {
    check_limit_params(params, variant);
    if (variant == LimitVariant::ZetaPoisson) {
        HeteroGrid g(geom, Rule::Zeta, params.theta);
        for (auto& s : g.states) s = nz(poisson_from_uniform(params.a, rng.uniform()), params.theta);
        return g;
    }
    const auto p = limit_marginals(params, variant);
    const double t1 = p[0], t2 = p[0] + p[1], t3 = 1.0 - p[3];
    HeteroGrid g(geom, variant == LimitVariant::ChiAeps ? Rule::Chi : Rule::Xi, params.theta);
    // Larger a moves mass from 3 to 1, so a shared uniform couples grids monotonically.
    for (auto& s : g.states) {
        const double u = rng.uniform();
        s = u < t1 ? 0 : u < t2 ? 1 : u < t3 ? 2 : 3;
    }
    return g;
}

HeteroGrid polluted_grid(const BoxGeometry& geom, double p, double q, Rng& rng) {
    if (!(p >= 0 && q >= 0 && p + q <= 1)) throw std::invalid_argument("need p, q >= 0 with p + q <= 1");
    HeteroGrid g(geom, Rule::Xi, 0);
    for (auto& s : g.states) {
        const double u = rng.uniform();
        s = u < p ? 0 : u < p + q ? 3 : 2;
    }
    return g;
}

std::vector<std::uint8_t> clash_sites(const ProductConfig& cfg) {
    if (cfg.fiber() != Fiber::Clique) throw std::invalid_argument("clash sites need a clique fiber");
    const auto adj = build_adjacency(cfg.geometry());
    const int theta = cfg.theta();
    const std::size_t S = cfg.sites();
    std::vector<std::uint8_t> clash(S, 0);
    for (std::size_t x = 0; x < S; ++x) {
        if (cfg.plane_count(x) >= static_cast<std::uint64_t>(theta)) continue;
        std::vector<std::size_t> sparse{x};
        for (int y : adj.nbr[x])
            if (y != kNoNeighbor && cfg.plane_count(y) < static_cast<std::uint64_t>(theta))
                sparse.push_back(static_cast<std::size_t>(y));
        for (std::size_t u = 0; u < cfg.fiber_size() && !clash[x]; ++u) {
            int hits = 0;
            for (auto y : sparse) hits += cfg.occupied(y, u);
            if (hits >= 2) clash[x] = 1;
        }
    }
    return clash;
}

HeteroGrid init_clique_comparison(const ProductConfig& cfg, Flavor flavor) {
    const auto clash = clash_sites(cfg);
    HeteroGrid g(cfg.geometry(), Rule::Zeta, cfg.theta());
    for (std::size_t x = 0; x < cfg.sites(); ++x) {
        if (clash[x])
            g.states[x] = flavor == Flavor::Favoring ? State{0} : kTheta;
        else
            g.states[x] = nz(static_cast<std::int64_t>(cfg.plane_count(x)), cfg.theta());
    }
    return g;
}

}  // namespace bootlab
