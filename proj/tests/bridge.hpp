#pragma once

// Converters between library values and the reference representations.

#include "bootlab/hetero.hpp"
#include "bootlab/plane.hpp"
#include "bootlab/product.hpp"
#include "oracles.hpp"

namespace bridge {

inline oracle::Wall wall(bootlab::Boundary b) {
    switch (b) {
        case bootlab::Boundary::Torus: return oracle::Wall::Torus;
        case bootlab::Boundary::EmptyWall: return oracle::Wall::Empty;
        case bootlab::Boundary::OccupiedWall: return oracle::Wall::Occupied;
    }
    return oracle::Wall::Empty;
}

inline oracle::Grid2 plane(const bootlab::PlaneConfig& p) {
    oracle::Grid2 g(p.n(), std::vector<int>(p.n(), 0));
    for (int u = 0; u < p.n(); ++u)
        for (int v = 0; v < p.n(); ++v) g[u][v] = p.occupied(u, v);
    return g;
}

inline bool same(const bootlab::PlaneConfig& p, const oracle::Grid2& g) { return plane(p) == g; }

inline oracle::Product product(const bootlab::ProductConfig& c) {
    const auto& geo = c.geometry();
    oracle::Product p{geo.width, geo.height, c.n(), c.fiber() == bootlab::Fiber::HammingSquare, wall(geo.boundary), {}};
    p.planes.assign(geo.width, std::vector<std::vector<int>>(geo.height, std::vector<int>(c.fiber_size(), 0)));
    for (int x = 0; x < geo.width; ++x)
        for (int y = 0; y < geo.height; ++y)
            for (std::size_t k = 0; k < c.fiber_size(); ++k) p.planes[x][y][k] = c.occupied(geo.index({x, y}), k);
    return p;
}

inline bool same(const bootlab::ProductConfig& c, const oracle::Product& p) {
    return product(c).planes == p.planes;
}

inline oracle::Kind kind(bootlab::Rule r) {
    switch (r) {
        case bootlab::Rule::Xi: return oracle::Kind::Xi;
        case bootlab::Rule::Chi: return oracle::Kind::Chi;
        case bootlab::Rule::Zeta: return oracle::Kind::Zeta;
    }
    return oracle::Kind::Xi;
}

inline oracle::Grid2 states(const bootlab::HeteroGrid& g) {
    const auto& geo = g.geometry;
    oracle::Grid2 s(geo.width, std::vector<int>(geo.height, 0));
    for (int x = 0; x < geo.width; ++x)
        for (int y = 0; y < geo.height; ++y) s[x][y] = g.at({x, y});
    return s;
}

inline oracle::Grid2 frozen(const bootlab::HeteroGrid& g) {
    if (g.frozen.empty()) return {};
    const auto& geo = g.geometry;
    oracle::Grid2 f(geo.width, std::vector<int>(geo.height, 0));
    for (int x = 0; x < geo.width; ++x)
        for (int y = 0; y < geo.height; ++y) f[x][y] = g.frozen[geo.index({x, y})];
    return f;
}

// Reference fixpoint of a library grid.
inline oracle::Grid2 hetero_closure(const bootlab::HeteroGrid& g) {
    return oracle::hetero_closure(states(g), kind(g.rule), g.theta, wall(g.geometry.boundary), frozen(g));
}

}  // namespace bridge
