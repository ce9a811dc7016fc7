#pragma once

// Reference implementations for the tests. They recount everything from
// scratch each synchronous round and share no code with the library engines.

#include <cmath>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

enum class Wall { Torus, Empty, Occupied };

// Distinct lattice neighbours of (x, y) inside a w x h window, plus the number
// of the four directions that leave the window.
inline std::pair<std::vector<std::pair<int, int>>, int> lattice_neighbours(int x, int y, int w, int h, Wall wall) {
    std::set<std::pair<int, int>> seen;
    int outside = 0;
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
        int nx = x + dx[d], ny = y + dy[d];
        if (wall == Wall::Torus) {
            nx = (nx + w) % w;
            ny = (ny + h) % h;
        } else if (nx < 0 || ny < 0 || nx >= w || ny >= h) {
            ++outside;
            continue;
        }
        seen.insert({nx, ny});
    }
    return {std::vector<std::pair<int, int>>(seen.begin(), seen.end()), outside};
}

using Grid2 = std::vector<std::vector<int>>;  // [x][y]

// Threshold-r bootstrap on Kn x Kn restricted to one plane.
inline Grid2 plane_closure(Grid2 occ, int r) {
    const int n = static_cast<int>(occ.size());
    while (true) {
        Grid2 next = occ;
        bool changed = false;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (occ[u][v]) continue;
                int c = 0;
                for (int t = 0; t < n; ++t) {
                    if (t != v) c += occ[u][t];
                    if (t != u) c += occ[t][v];
                }
                if (c >= r) {
                    next[u][v] = 1;
                    changed = true;
                }
            }
        if (!changed) return occ;
        occ = next;
    }
}

// Product graph window: planes[x][y] is the fiber occupancy, flat u*n+v for
// the Hamming square and u for the clique.
struct Product {
    int w, h, n;
    bool hamming;
    Wall wall;
    std::vector<std::vector<std::vector<int>>> planes;
};

inline int fiber_count(const Product& p, int x, int y, int cell) {
    const auto& f = p.planes[x][y];
    int c = 0;
    if (p.hamming) {
        const int u = cell / p.n, v = cell % p.n;
        for (int t = 0; t < p.n; ++t) {
            if (t != v) c += f[u * p.n + t];
            if (t != u) c += f[t * p.n + v];
        }
    } else {
        for (int t = 0; t < p.n; ++t)
            if (t != cell) c += f[t];
    }
    auto [nb, outside] = lattice_neighbours(x, y, p.w, p.h, p.wall);
    for (auto [nx, ny] : nb) c += p.planes[nx][ny][cell];
    if (p.wall == Wall::Occupied) c += outside;
    return c;
}

inline Product product_closure(Product p, int theta) {
    const int cells = p.hamming ? p.n * p.n : p.n;
    while (true) {
        Product next = p;
        bool changed = false;
        for (int x = 0; x < p.w; ++x)
            for (int y = 0; y < p.h; ++y)
                for (int c = 0; c < cells; ++c)
                    if (!p.planes[x][y][c] && fiber_count(p, x, y, c) >= theta) {
                        next.planes[x][y][c] = 1;
                        changed = true;
                    }
        if (!changed) return p;
        p = next;
    }
}

enum class Kind { Xi, Chi, Zeta };
inline constexpr int kSymbol = 6;

// Heterogeneous automaton; states[x][y] in 0..5 or kSymbol, frozen may be empty.
inline Grid2 hetero_closure(Grid2 s, Kind kind, int theta, Wall wall, const Grid2& frozen = {}) {
    const int w = static_cast<int>(s.size()), h = static_cast<int>(s[0].size());
    auto value = [&](int st) { return st == kSymbol ? theta : st; };
    auto helps = [&](int st) {
        if (kind == Kind::Chi) return st == 1 || st == 2;
        if (kind == Kind::Zeta) return st != kSymbol && st > 0 && st < theta;
        return false;
    };
    while (true) {
        Grid2 next = s;
        bool changed = false;
        for (int x = 0; x < w; ++x)
            for (int y = 0; y < h; ++y) {
                const int st = s[x][y];
                if (st == 0 || (!frozen.empty() && frozen[x][y])) continue;
                auto [nb, outside] = lattice_neighbours(x, y, w, h, wall);
                int z = wall == Wall::Occupied ? outside : 0;
                bool helper = false;
                for (auto [nx, ny] : nb) {
                    z += s[nx][ny] == 0;
                    helper = helper || helps(s[nx][ny]);
                }
                bool flip = false;
                if (kind == Kind::Xi) flip = z >= st;
                if (kind == Kind::Chi) flip = z >= st || (st == 3 && z == 2 && helper);
                if (kind == Kind::Zeta) flip = z + (helper ? 1 : 0) >= value(st);
                if (flip) {
                    next[x][y] = 0;
                    changed = true;
                }
            }
        if (!changed) return s;
        s = next;
    }
}

// Label ladders of the classification initializers, by direct recount.
inline int lower_label(const Product& p, int x, int y, int theta) {
    for (int k = 0; k <= 4; ++k) {
        const int r = theta - k;
        if (r <= 0) return k;
        Grid2 g(p.n, std::vector<int>(p.n, 0));
        for (int c = 0; c < p.n * p.n; ++c) g[c / p.n][c % p.n] = p.planes[x][y][c];
        bool full = true;
        for (const auto& row : plane_closure(g, r))
            for (int v : row) full = full && v;
        if (full) return k;
    }
    return 5;
}

inline int upper_label(const Product& p, int x, int y, int theta) {
    const int cells = p.n * p.n;
    bool full = true;
    for (int c = 0; c < cells; ++c) full = full && p.planes[x][y][c];
    if (full) return 0;
    for (int k = 0; k <= 4; ++k) {
        bool inert = true;
        for (int c = 0; c < cells; ++c)
            if (!p.planes[x][y][c] && fiber_count(p, x, y, c) >= theta - k) inert = false;
        if (!inert) return k;
    }
    return 5;
}

inline int nz(int m, int theta) {
    if (m == 0) return kSymbol;
    if (m >= theta) return 0;
    for (int k = 1; k <= 4; ++k)
        if (m == theta - k) return k;
    return 5;
}

// Literal clash condition on a clique-fiber window.
inline bool clash(const Product& p, int x, int y, int theta) {
    auto count = [&](int a, int b) {
        int c = 0;
        for (int v : p.planes[a][b]) c += v;
        return c;
    };
    if (count(x, y) >= theta) return false;
    std::vector<std::pair<int, int>> hood{{x, y}};
    for (auto q : lattice_neighbours(x, y, p.w, p.h, p.wall).first)
        if (q != std::make_pair(x, y)) hood.push_back(q);
    for (int u = 0; u < p.n; ++u)
        for (std::size_t i = 0; i < hood.size(); ++i)
            for (std::size_t j = i + 1; j < hood.size(); ++j) {
                auto [ax, ay] = hood[i];
                auto [bx, by] = hood[j];
                if (p.planes[ax][ay][u] && p.planes[bx][by][u] && count(ax, ay) < theta && count(bx, by) < theta)
                    return true;
            }
    return false;
}

// Checks both coupling inclusions from scratch: planes whose lower state
// reaches 0 end full, and every vertex occupied late lies in a plane whose
// upper state reaches 0.
inline bool sandwich_holds(const Product& p, int theta) {
    Grid2 lower(p.w, std::vector<int>(p.h)), upper(p.w, std::vector<int>(p.h));
    for (int x = 0; x < p.w; ++x)
        for (int y = 0; y < p.h; ++y) {
            if (p.hamming) {
                lower[x][y] = lower_label(p, x, y, theta);
                upper[x][y] = upper_label(p, x, y, theta);
            } else {
                int m = 0;
                for (int v : p.planes[x][y]) m += v;
                const bool c = clash(p, x, y, theta);
                lower[x][y] = c ? kSymbol : nz(m, theta);
                upper[x][y] = c ? 0 : nz(m, theta);
            }
        }
    const Kind kind = p.hamming ? Kind::Xi : Kind::Zeta;
    const Grid2 lo = hetero_closure(lower, kind, theta, p.wall);
    const Grid2 hi = hetero_closure(upper, kind, theta, p.wall);
    const Product fin = product_closure(p, theta);
    for (int x = 0; x < p.w; ++x)
        for (int y = 0; y < p.h; ++y)
            for (std::size_t c = 0; c < fin.planes[x][y].size(); ++c) {
                if (lo[x][y] == 0 && !fin.planes[x][y][c]) return false;
                if (hi[x][y] != 0 && fin.planes[x][y][c] && !p.planes[x][y][c]) return false;
            }
    return true;
}

inline double poisson_tail(double a, int k) {
    double term = std::exp(-a), below = 0;
    for (int j = 0; j < k; ++j) {
        below += term;
        term *= a / (j + 1);
    }
    return 1.0 - below;
}

// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = static_cast<double>(pts.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace oracle
