#include "bootlab/lattice.hpp"

#include <algorithm>

namespace bootlab {

std::string to_string(Boundary b) {
    switch (b) {
        case Boundary::Torus: return "TORUS";
        case Boundary::EmptyWall: return "EMPTY_WALL";
        case Boundary::OccupiedWall: return "OCCUPIED_WALL";
    }
    return "?";
}

Boundary parse_boundary(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return c == '-' ? '_' : std::toupper(c); });
    if (t == "TORUS") return Boundary::Torus;
    if (t == "EMPTY_WALL" || t == "WALL") return Boundary::EmptyWall;
    if (t == "OCCUPIED_WALL" || t == "ZERO_WALL") return Boundary::OccupiedWall;
    throw std::invalid_argument("unknown boundary '" + std::string(text) + "'");
}

void BoxGeometry::validate() const {
    if (width < 1 || height < 1) throw std::invalid_argument("window dimensions must be positive");
    if (boundary == Boundary::Torus && (width < 2 || height < 2))
        throw std::invalid_argument("torus windows need width and height of at least 2");
}

LatticeAdjacency build_adjacency(const BoxGeometry& g) {
    g.validate();
    LatticeAdjacency adj;
    adj.nbr.assign(g.sites(), {kNoNeighbor, kNoNeighbor, kNoNeighbor, kNoNeighbor});
    adj.offWindow.assign(g.sites(), 0);
    constexpr int dx[4] = {1, -1, 0, 0};
    constexpr int dy[4] = {0, 0, 1, -1};
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            const std::size_t i = g.index({x, y});
            int filled = 0;
            for (int d = 0; d < 4; ++d) {
                int nx = x + dx[d], ny = y + dy[d];
                if (g.boundary == Boundary::Torus) {
                    nx = (nx + g.width) % g.width;
                    ny = (ny + g.height) % g.height;
                } else if (!g.contains({nx, ny})) {
                    ++adj.offWindow[i];
                    continue;
                }
                const int j = static_cast<int>(g.index({nx, ny}));
                // On a 2-wide torus both horizontal steps reach the same site.
                bool dup = false;
                for (int k = 0; k < filled; ++k) dup = dup || adj.nbr[i][k] == j;
                if (!dup) adj.nbr[i][filled++] = j;
            }
        }
    }
    return adj;
}

}  // namespace bootlab
