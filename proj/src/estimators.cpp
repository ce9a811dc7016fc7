#include "bootlab/estimators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bootlab {

void EstimateRecord::set_counts(std::uint64_t trialCount, std::uint64_t successCount) {
    if (trialCount == 0) throw std::invalid_argument("a record needs at least one trial");
    if (successCount > trialCount) throw std::invalid_argument("successes exceed trials");
    trials = trialCount;
    successes = successCount;
    estimate = static_cast<double>(successes) / static_cast<double>(trials);
    standardError = std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(trials));
}

void check_cells(std::uint64_t cells, std::uint64_t cap) {
    if (cells > cap)
        throw ResourceError("a trial would materialize " + std::to_string(cells) + " cells, above the cap of " +
                            std::to_string(cap));
}

int ell_for_theta(int theta) {
    if (theta < 3) throw std::invalid_argument("the scaling needs theta >= 3");
    return theta % 2 == 0 ? (theta - 2) / 2 : (theta - 1) / 2;
}

double scaled_density(int theta, double a, double n) {
    const int ell = ell_for_theta(theta);
    if (!(a >= 0.0) || n < 2) throw std::invalid_argument("the scaling needs a >= 0 and n >= 2");
    const double base = a / std::pow(n, 1.0 + 1.0 / ell);
    const double p = theta % 2 == 0 ? base * std::pow(std::log(n), 1.0 / ell) : base;
    if (p > 1.0) throw std::invalid_argument("scaled density exceeds 1");
    return p;
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return c == '_' ? '-' : std::tolower(c); });
    return s;
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

EventSpec parse_event(std::string_view nameIn, int r, int diameter) {
    std::string name = lower(std::string(nameIn));
    EventSpec e;
    e.r = r;
    e.diameter = diameter;
    if (name.rfind("not-", 0) == 0) {
        e.complement = true;
        name = name.substr(4);
    }
    if (name == "plane-is")
        e.kind = EventKind::PlaneIS;
    else if (name == "plane-ii")
        e.kind = EventKind::PlaneII;
    else if (name == "plane-inert")
        e.kind = EventKind::PlaneInert;
    else if (name == "origin-plane-full")
        e.kind = EventKind::OriginPlaneFull;
    else if (name == "origin-point-occupied")
        e.kind = EventKind::OriginPointOccupied;
    else if (name == "hetero-origin-zero")
        e.kind = EventKind::HeteroOriginZero;
    else if (name == "zero-cluster")
        e.kind = EventKind::ZeroClusterDiameter;
    else
        throw std::invalid_argument("unknown event '" + std::string(nameIn) + "'");
    return e;
}

std::string event_name(const EventSpec& e) {
    std::string base;
    switch (e.kind) {
        case EventKind::PlaneIS: base = "plane-is"; break;
        case EventKind::PlaneII: base = "plane-ii"; break;
        case EventKind::PlaneInert: base = "plane-inert"; break;
        case EventKind::OriginPlaneFull: base = "origin-plane-full"; break;
        case EventKind::OriginPointOccupied: base = "origin-point-occupied"; break;
        case EventKind::HeteroOriginZero: base = "hetero-origin-zero"; break;
        case EventKind::ZeroClusterDiameter: base = "zero-cluster"; break;
    }
    return e.complement ? "not-" + base : base;
}

namespace {

double density_for(const McParams& m) {
    if (m.p) {
        if (!(*m.p >= 0.0 && *m.p <= 1.0)) throw std::invalid_argument("density p must lie in [0,1]");
        return *m.p;
    }
    if (m.fiber == Fiber::Clique) {
        const double p = m.a / m.n;
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("a/n must lie in [0,1]");
        return p;
    }
    return scaled_density(m.theta, m.a, m.n);
}

std::vector<std::vector<std::uint32_t>> sample_window_cells(std::size_t sites, int n, double p, Rng& rng) {
    std::vector<std::vector<std::uint32_t>> cells(sites);
    for (auto& c : cells) c = sample_plane_cells(n, p, rng);
    return cells;
}

ProductConfig product_from_cells(const BoxGeometry& g, int n, int theta,
                                 const std::vector<std::vector<std::uint32_t>>& cells, int margin,
                                 int sampledWidth) {
    ProductConfig cfg(g, Fiber::HammingSquare, n, theta);
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) {
            const auto& src = cells[static_cast<std::size_t>(y + margin) * sampledWidth + (x + margin)];
            for (auto c : src) cfg.set(g.index({x, y}), c);
        }
    return cfg;
}

bool origin_in_big_cluster(const HeteroGrid& final, int d) {
    const auto cl = zero_clusters(final);
    const int id = cl.label[final.geometry.index(final.geometry.origin())];
    return id >= 0 && cl.clusters[id].diameter > d;
}

}  // namespace

EstimateRecord mc_probability(const EventSpec& event, const McParams& m, std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    EstimateRecord rec;
    rec.experiment = event_name(event);
    rec.seed = seed;
    rec.theta = m.theta;
    rec.a = m.a;
    const BoxGeometry geom{m.L, m.L, m.boundary};
    std::uint64_t hits = 0;

    switch (event.kind) {
        case EventKind::PlaneIS:
        case EventKind::PlaneII:
        case EventKind::PlaneInert: {
            const double p = density_for(m);
            check_cells(static_cast<std::uint64_t>(m.n) * m.n, m.maxCells);
            rec.n = m.n;
            rec.ell = m.ell ? m.ell : ell_for_theta(m.theta);
            rec.mode = "r=" + std::to_string(event.r) + (m.p ? ";p=" + format_double(*m.p) : "");
            PlaneEngine engine(m.n);
            for (std::uint64_t t = 0; t < trials; ++t) {
                Rng rng = trial_rng(seed, t);
                const auto cells = sample_plane_cells(m.n, p, rng);
                bool ev;
                if (event.kind == EventKind::PlaneInert) {
                    std::vector<std::vector<std::uint32_t>> nb(4);
                    for (auto& c : nb) c = sample_plane_cells(m.n, p, rng);
                    std::array<const std::vector<std::uint32_t>*, 4> ptr{&nb[0], &nb[1], &nb[2], &nb[3]};
                    std::vector<std::uint32_t> sorted = cells;
                    ev = sparse_plane_inert(m.n, sorted, ptr, 0, event.r);
                } else {
                    const auto res = engine.run(cells, event.r);
                    ev = event.kind == EventKind::PlaneIS ? res.spanned : res.inert;
                }
                hits += ev != event.complement;
            }
            break;
        }
        case EventKind::OriginPlaneFull:
        case EventKind::OriginPointOccupied: {
            const double p = density_for(m);
            check_cells(product_cells(geom, m.fiber, m.n), m.maxCells);
            rec.n = m.n;
            rec.L = m.L;
            rec.boundary = to_string(m.boundary);
            rec.mode = to_string(m.fiber) + (m.p ? ";p=" + format_double(*m.p) : "");
            for (std::uint64_t t = 0; t < trials; ++t) {
                Rng rng = trial_rng(seed, t);
                const auto fin = product_fixpoint(sample_product(geom, m.fiber, m.n, p, m.theta, rng));
                const std::size_t o = geom.index(geom.origin());
                const bool ev =
                    event.kind == EventKind::OriginPlaneFull ? fin.plane_full(o) : fin.occupied(o, 0);
                hits += ev != event.complement;
            }
            break;
        }
        case EventKind::HeteroOriginZero: {
            LimitParams lp{m.a, m.eps, m.ell ? m.ell : 1, m.theta};
            check_limit_params(lp, m.variant);
            check_cells(geom.sites(), m.maxCells);
            rec.L = m.L;
            rec.ell = lp.ell;
            rec.boundary = to_string(m.boundary);
            rec.rule = m.variant == LimitVariant::ChiAeps ? "CHI" : m.variant == LimitVariant::XiAeps ? "XI" : "ZETA";
            rec.mode = to_string(m.variant) + ";eps=" + format_double(m.eps);
            for (std::uint64_t t = 0; t < trials; ++t) {
                Rng rng = trial_rng(seed, t);
                const auto fin = hetero_fixpoint(init_limit_grid(lp, m.variant, geom, rng));
                hits += (fin.at(geom.origin()) == 0) != event.complement;
            }
            break;
        }
        case EventKind::ZeroClusterDiameter: {
            rec.L = m.L;
            rec.boundary = to_string(m.boundary);
            rec.rule = "XI";
            if (m.field == FieldSource::Polluted) {
                check_cells(geom.sites(), m.maxCells);
                rec.mode = "d=" + std::to_string(event.diameter) + ";polluted;p=" + format_double(m.pollutedP) +
                           ";q=" + format_double(m.pollutedQ);
                rec.theta.reset();
                rec.a.reset();
                for (std::uint64_t t = 0; t < trials; ++t) {
                    Rng rng = trial_rng(seed, t);
                    const auto fin = hetero_fixpoint(polluted_grid(geom, m.pollutedP, m.pollutedQ, rng));
                    hits += origin_in_big_cluster(fin, event.diameter) != event.complement;
                }
            } else {
                const double p = density_for(m);
                const BoxGeometry halo{m.L + 2, m.L + 2, Boundary::EmptyWall};
                check_cells(product_cells(halo, Fiber::HammingSquare, m.n), m.maxCells);
                rec.n = m.n;
                rec.mode = "d=" + std::to_string(event.diameter) + ";upper-remapped";
                StateMap map = identity_map();
                map[1] = 0;
                map[4] = 3;
                map[5] = 3;
                for (std::uint64_t t = 0; t < trials; ++t) {
                    Rng rng = trial_rng(seed, t);
                    const auto cfg = sample_product(halo, Fiber::HammingSquare, m.n, p, m.theta, rng);
                    const auto grid = classify_interior(cfg, ClassMode::UpperInert, m.boundary).to_grid();
                    const auto fin = hetero_fixpoint(remap_states(grid, map));
                    hits += origin_in_big_cluster(fin, event.diameter) != event.complement;
                }
            }
            break;
        }
    }
    rec.set_counts(trials, hits);
    return rec;
}

OracleKind parse_oracle(std::string_view nameIn) {
    const std::string name = lower(std::string(nameIn));
    if (name == "even-not-2l-minus-1-is") return OracleKind::EvenNotIsMinus1;
    if (name == "even-not-2l-is") return OracleKind::EvenNotIs2l;
    if (name == "even-2l-plus-1-is") return OracleKind::EvenIsPlus1;
    if (name == "even-2l-plus-2-is") return OracleKind::EvenIsPlus2;
    if (name == "odd-not-2l-minus-1-is") return OracleKind::OddNotIsMinus1;
    if (name == "odd-2l-is") return OracleKind::OddIs2l;
    if (name == "odd-not-2l-plus-1-ii") return OracleKind::OddNotIIPlus1;
    if (name == "odd-2l-plus-1-is") return OracleKind::OddIsPlus1;
    if (name == "theta4-2-inert") return OracleKind::Theta4TwoInert;
    throw std::invalid_argument("unknown closed form '" + std::string(nameIn) + "'");
}

double oracle_formula(OracleKind kind, double n, double a, int ell) {
    if (ell < 1) throw std::invalid_argument("ell must be at least 1");
    if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
    const bool needsN = kind != OracleKind::OddNotIsMinus1 && kind != OracleKind::OddIs2l;
    if (needsN && !(n > 1.0)) throw std::invalid_argument("n must exceed 1");
    const double fact = std::tgamma(ell + 1.0);
    const double al = std::pow(a, ell) / fact;
    const double bl = std::pow(a, ell + 1) / (fact * (ell + 1));
    const double ln = needsN ? std::log(n) : 0.0;
    auto need_ell2 = [&] {
        if (ell < 2) throw std::invalid_argument("this closed form holds for ell >= 2 only");
    };
    switch (kind) {
        case OracleKind::EvenNotIsMinus1: return ell == 1 ? std::pow(n, -a) : std::pow(n, -2 * al);
        case OracleKind::EvenNotIs2l: return ell == 1 ? a * ln / std::pow(n, a) : 2 * std::pow(n, -al);
        case OracleKind::EvenIsPlus1: return 2 * bl * std::pow(ln, 1 + 1.0 / ell) / std::pow(n, 1.0 / ell);
        case OracleKind::EvenIsPlus2: return bl * bl * std::pow(ln, 2 + 2.0 / ell) / std::pow(n, 2.0 / ell);
        case OracleKind::OddNotIsMinus1: need_ell2(); return std::exp(-2 * al);
        case OracleKind::OddIs2l: need_ell2(); return std::pow(1 - std::exp(-al), 2);
        case OracleKind::OddNotIIPlus1: return 2 * bl * (1 - std::exp(-al)) / std::pow(n, 1.0 / ell);
        case OracleKind::OddIsPlus1: return 2 * bl * std::pow(1 - std::exp(-al), 2) / std::pow(n, 1.0 / ell);
        case OracleKind::Theta4TwoInert:
            if (ell != 1) throw std::invalid_argument("the theta = 4 inertness bound has ell = 1");
            return a * ln / std::pow(n, a);
    }
    return 0.0;
}

std::string to_string(DensityMode m) {
    switch (m) {
        case DensityMode::LowerIS: return "LOWER_IS";
        case DensityMode::UpperInert: return "UPPER_INERT";
        case DensityMode::Direct: return "DIRECT";
    }
    return "?";
}

DensityMode parse_density_mode(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return c == '-' ? '_' : std::toupper(c); });
    if (t == "LOWER_IS" || t == "LOWER") return DensityMode::LowerIS;
    if (t == "UPPER_INERT" || t == "UPPER") return DensityMode::UpperInert;
    if (t == "DIRECT") return DensityMode::Direct;
    throw std::invalid_argument("unknown density mode '" + std::string(text) + "'");
}

namespace {

struct DensitySetup {
    BoxGeometry interior;
    BoxGeometry sampled;
    int margin = 0;
    double p = 0.0;
};

DensitySetup density_setup(const DensityParams& d) {
    if (d.L < 1) throw std::invalid_argument("L must be at least 1");
    DensitySetup s;
    s.interior = {d.L, d.L, d.boundary};
    s.interior.validate();
    s.margin = d.boundary == Boundary::Torus ? 0 : 1;
    s.sampled = {d.L + 2 * s.margin, d.L + 2 * s.margin, d.boundary == Boundary::Torus ? Boundary::Torus
                                                                                         : Boundary::EmptyWall};
    s.p = d.a == 0.0 ? 0.0 : scaled_density(d.theta, d.a, d.n);
    return s;
}

// Labels of the interior sites from sampled cells. With a zero wall the
// planes beyond the interior are full, so they replace the halo.
HeteroGrid classified_grid(const DensityParams& d, const DensitySetup& s,
                           const std::vector<std::vector<std::uint32_t>>& cells, ClassMode mode,
                           PlaneEngine& engine) {
    HeteroGrid g(s.interior, Rule::Xi, 0);
    const auto adjSampled = build_adjacency(s.sampled);
    const auto adjInterior = build_adjacency(s.interior);
    for (int y = 0; y < d.L; ++y)
        for (int x = 0; x < d.L; ++x) {
            const std::size_t si = s.sampled.index({x + s.margin, y + s.margin});
            const std::size_t ii = s.interior.index({x, y});
            if (mode == ClassMode::LowerIS) {
                g.states[ii] = lower_label(engine, cells[si], d.theta);
                continue;
            }
            std::array<const std::vector<std::uint32_t>*, 4> nb{};
            int extra = 0;
            if (d.boundary == Boundary::OccupiedWall) {
                for (int k = 0; k < 4; ++k) {
                    const int j = adjInterior.nbr[ii][k];
                    if (j != kNoNeighbor) {
                        const Site q = s.interior.site(static_cast<std::size_t>(j));
                        nb[k] = &cells[s.sampled.index({q.x + s.margin, q.y + s.margin})];
                    }
                }
                extra = adjInterior.offWindow[ii];
            } else {
                for (int k = 0; k < 4; ++k) {
                    const int j = adjSampled.nbr[si][k];
                    if (j != kNoNeighbor) nb[k] = &cells[static_cast<std::size_t>(j)];
                }
            }
            std::vector<std::uint32_t> sorted = cells[si];
            g.states[ii] = upper_label(d.n, sorted, nb, extra, d.theta);
        }
    return g;
}

EstimateRecord density_record(const DensityParams& d, std::uint64_t seed, const std::string& mode) {
    EstimateRecord rec;
    rec.experiment = "two-scale-density";
    rec.theta = d.theta;
    rec.ell = ell_for_theta(d.theta);
    rec.a = d.a;
    rec.n = d.n;
    rec.L = d.L;
    rec.rule = d.mode == DensityMode::Direct ? "" : "XI";
    rec.mode = mode;
    rec.boundary = to_string(d.boundary);
    rec.seed = seed;
    return rec;
}

}  // namespace

EstimateRecord two_scale_density(const DensityParams& d, std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    const DensitySetup s = density_setup(d);
    PlaneEngine engine(d.n);
    check_cells(static_cast<std::uint64_t>(d.n) * d.n + s.sampled.sites(), d.maxCells);
    const std::size_t origin = s.interior.index(s.interior.origin());
    std::uint64_t hits = 0;

    if (d.mode == DensityMode::Direct) {
        check_cells(product_cells(s.interior, Fiber::HammingSquare, d.n), d.maxCells);
        for (std::uint64_t t = 0; t < trials; ++t) {
            Rng rng = trial_rng(seed, t);
            const auto cells = sample_window_cells(s.sampled.sites(), d.n, s.p, rng);
            const auto fin =
                product_fixpoint(product_from_cells(s.interior, d.n, d.theta, cells, s.margin, s.sampled.width));
            hits += fin.plane_full(origin);
        }
        auto rec = density_record(d, seed, "DIRECT");
        rec.set_counts(trials, hits);
        return rec;
    }

    const ClassMode cm = d.mode == DensityMode::LowerIS ? ClassMode::LowerIS : ClassMode::UpperInert;
    bool tabulate = d.sampling == LabelSampling::Tabulated;
    if (d.sampling == LabelSampling::Auto)
        tabulate = cm == ClassMode::LowerIS && trials * s.interior.sites() > 4 * d.planeTrials;
    if (tabulate && cm != ClassMode::LowerIS)
        throw std::invalid_argument("inertness labels depend on neighbors and cannot be tabulated");

    std::string mode = to_string(d.mode);
    if (tabulate) {
        if (d.planeTrials < 1) throw std::invalid_argument("planeTrials must be at least 1");
        // Lower labels are i.i.d. across sites, so their law can be tabulated
        // once and the grid drawn from it.
        std::array<std::uint64_t, 6> counts{};
        const std::uint64_t tableSeed = derive_seed(seed, 0x7ab1e);
        for (std::uint64_t i = 0; i < d.planeTrials; ++i) {
            Rng rng = trial_rng(tableSeed, i);
            ++counts[lower_label(engine, sample_plane_cells(d.n, s.p, rng), d.theta)];
        }
        std::array<double, 6> cdf{};
        double acc = 0;
        for (int k = 0; k < 6; ++k) {
            acc += static_cast<double>(counts[k]) / static_cast<double>(d.planeTrials);
            cdf[k] = acc;
        }
        cdf[5] = 1.0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            Rng rng = trial_rng(seed, t);
            HeteroGrid g(s.interior, Rule::Xi, 0);
            for (auto& st : g.states) {
                const double u = rng.uniform();
                State k = 0;
                while (u >= cdf[k]) ++k;
                st = k;
            }
            hits += hetero_fixpoint(g).states[origin] == 0;
        }
        mode += ";tabulated=" + std::to_string(d.planeTrials);
    } else {
        for (std::uint64_t t = 0; t < trials; ++t) {
            Rng rng = trial_rng(seed, t);
            const auto cells = sample_window_cells(s.sampled.sites(), d.n, s.p, rng);
            hits += hetero_fixpoint(classified_grid(d, s, cells, cm, engine)).states[origin] == 0;
        }
    }
    auto rec = density_record(d, seed, mode);
    rec.set_counts(trials, hits);
    return rec;
}

CoupledDensity coupled_density(const DensityParams& d, std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    const DensitySetup s = density_setup(d);
    check_cells(product_cells(s.interior, Fiber::HammingSquare, d.n), d.maxCells);
    PlaneEngine engine(d.n);
    const std::size_t origin = s.interior.index(s.interior.origin());
    std::uint64_t lo = 0, mid = 0, hi = 0, bad = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = trial_rng(seed, t);
        const auto cells = sample_window_cells(s.sampled.sites(), d.n, s.p, rng);
        const bool l = hetero_fixpoint(classified_grid(d, s, cells, ClassMode::LowerIS, engine)).states[origin] == 0;
        const bool u =
            hetero_fixpoint(classified_grid(d, s, cells, ClassMode::UpperInert, engine)).states[origin] == 0;
        const bool m = product_fixpoint(product_from_cells(s.interior, d.n, d.theta, cells, s.margin, s.sampled.width))
                           .plane_full(origin);
        lo += l;
        mid += m;
        hi += u;
        bad += (l && !m) || (m && !u);
    }
    CoupledDensity out;
    DensityParams dl = d, dm = d, du = d;
    dl.mode = DensityMode::LowerIS;
    dm.mode = DensityMode::Direct;
    du.mode = DensityMode::UpperInert;
    out.lower = density_record(dl, seed, "LOWER_IS");
    out.direct = density_record(dm, seed, "DIRECT");
    out.upper = density_record(du, seed, "UPPER_INERT");
    out.lower.set_counts(trials, lo);
    out.direct.set_counts(trials, mid);
    out.upper.set_counts(trials, hi);
    out.orderViolations = bad;
    return out;
}

std::pair<EstimateRecord, EstimateRecord> phi_estimate(double a, int theta, int L, std::uint64_t trials,
                                                       std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    const LimitParams lp{a, 0.0, 1, theta};
    check_limit_params(lp, LimitVariant::ZetaPoisson);
    const BoxGeometry wall{L, L, Boundary::EmptyWall}, zero{L, L, Boundary::OccupiedWall};
    wall.validate();
    const std::size_t origin = wall.index(wall.origin());
    std::uint64_t hitWall = 0, hitZero = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = trial_rng(seed, t);
        HeteroGrid g = init_limit_grid(lp, LimitVariant::ZetaPoisson, wall, rng);
        hitWall += hetero_fixpoint(g).states[origin] == 0;
        g.geometry = zero;
        hitZero += hetero_fixpoint(g).states[origin] == 0;
    }
    auto make = [&](Boundary b, std::uint64_t hits) {
        EstimateRecord rec;
        rec.experiment = "phi";
        rec.theta = theta;
        rec.a = a;
        rec.L = L;
        rec.rule = "ZETA";
        rec.mode = "ZETA_POISSON";
        rec.boundary = to_string(b);
        rec.seed = seed;
        rec.set_counts(trials, hits);
        return rec;
    };
    return {make(Boundary::EmptyWall, hitWall), make(Boundary::OccupiedWall, hitZero)};
}

AcScanResult ac_scan(const AcScanParams& ps) {
    if (ps.epsList.empty() || ps.aGrid.empty()) throw std::invalid_argument("ac-scan needs eps values and an a grid");
    if (ps.trials < 1) throw std::invalid_argument("trials must be at least 1");
    for (std::size_t i = 1; i < ps.epsList.size(); ++i)
        if (!(ps.epsList[i] < ps.epsList[i - 1])) throw std::invalid_argument("eps values must be decreasing");
    for (std::size_t i = 1; i < ps.aGrid.size(); ++i)
        if (!(ps.aGrid[i] > ps.aGrid[i - 1])) throw std::invalid_argument("the a grid must be increasing");
    const int theta = 2 * ps.ell + 1;
    for (double eps : ps.epsList)
        for (double a : ps.aGrid) check_limit_params({a, eps, ps.ell, theta}, ps.variant);

    const BoxGeometry geom{ps.L, ps.L, ps.boundary};
    geom.validate();
    const std::size_t origin = geom.index(geom.origin());
    AcScanResult out;
    out.threshold = ps.threshold;
    out.smallestEps = ps.epsList.back();
    std::vector<double> last;
    for (double eps : ps.epsList) {
        last.clear();
        for (double a : ps.aGrid) {
            const LimitParams lp{a, eps, ps.ell, theta};
            std::uint64_t hits = 0;
            for (std::uint64_t t = 0; t < ps.trials; ++t) {
                Rng rng = trial_rng(ps.seed, t);
                hits += hetero_fixpoint(init_limit_grid(lp, ps.variant, geom, rng)).states[origin] == 0;
            }
            EstimateRecord rec;
            rec.experiment = "ac-scan";
            rec.theta = theta;
            rec.ell = ps.ell;
            rec.a = a;
            rec.L = ps.L;
            rec.rule = ps.variant == LimitVariant::ChiAeps ? "CHI" : "XI";
            rec.mode = to_string(ps.variant) + ";eps=" + format_double(eps) +
                       ";threshold=" + format_double(ps.threshold);
            rec.boundary = to_string(ps.boundary);
            rec.seed = ps.seed;
            rec.set_counts(ps.trials, hits);
            last.push_back(rec.estimate);
            out.records.push_back(std::move(rec));
        }
    }
    for (std::size_t i = 0; i < last.size(); ++i) {
        if (last[i] < ps.threshold) continue;
        if (i == 0) {
            out.crossing = ps.aGrid[0];
        } else {
            const double f = (ps.threshold - last[i - 1]) / (last[i] - last[i - 1]);
            out.crossing = ps.aGrid[i - 1] + f * (ps.aGrid[i] - ps.aGrid[i - 1]);
        }
        break;
    }
    return out;
}

RateFit rate_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("a rate fit needs at least 3 points");
    RateFit fit;
    fit.points = points;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(points.size());
    for (auto [n, e] : points) {
        if (!(n > 0)) throw std::invalid_argument("rate fit needs positive n");
        if (!(e > 0)) throw std::invalid_argument("rate fit needs positive estimates");
        const double x = std::log(n), y = std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = k * sxx - sx * sx;
    if (den == 0) throw std::invalid_argument("rate fit needs at least two distinct n");
    fit.exponent = (k * sxy - sx * sy) / den;
    const double intercept = (sy - fit.exponent * sx) / k;
    fit.prefactor = std::exp(intercept);
    for (auto [n, e] : points) fit.residuals.push_back(std::log(e) - (intercept + fit.exponent * std::log(n)));
    return fit;
}

SandwichReport sandwich_check(const ProductConfig& cfg) {
    SandwichReport rep;
    const auto& g = cfg.geometry();
    const auto direct = product_fixpoint(cfg);
    HeteroGrid lo, hi;
    if (cfg.fiber() == Fiber::HammingSquare) {
        lo = hetero_fixpoint(classify_grid(cfg, ClassMode::LowerIS).to_grid());
        hi = hetero_fixpoint(classify_grid(cfg, ClassMode::UpperInert).to_grid());
    } else {
        lo = hetero_fixpoint(init_clique_comparison(cfg, Flavor::Restricting));
        hi = hetero_fixpoint(init_clique_comparison(cfg, Flavor::Favoring));
    }
    for (std::size_t s = 0; s < cfg.sites() && rep.ok; ++s) {
        if (lo.states[s] == 0 && !direct.plane_full(s)) {
            rep.ok = false;
            rep.firstViolation = g.site(s);
            rep.detail = "lower grid reaches 0 but the plane is not filled";
            break;
        }
        if (hi.states[s] == 0) continue;
        for (std::size_t c = 0; c < cfg.fiber_size(); ++c)
            if (direct.occupied(s, c) && !cfg.occupied(s, c)) {
                rep.ok = false;
                rep.firstViolation = g.site(s);
                rep.detail = "vertex " + std::to_string(c) + " is occupied outside the upper zero set";
                break;
            }
    }
    return rep;
}

}  // namespace bootlab
