#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bootlab {

enum class Boundary { Torus, EmptyWall, OccupiedWall };

std::string to_string(Boundary b);
Boundary parse_boundary(std::string_view text);

struct Site {
    int x = 0;
    int y = 0;
    friend bool operator==(const Site&, const Site&) = default;
};

struct BoxGeometry {
    int width = 1;
    int height = 1;
    Boundary boundary = Boundary::EmptyWall;

    // Throws std::invalid_argument for empty boxes and tori smaller than 2x2.
    void validate() const;

    std::size_t sites() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
    bool contains(Site s) const { return s.x >= 0 && s.y >= 0 && s.x < width && s.y < height; }
    std::size_t index(Site s) const { return static_cast<std::size_t>(s.y) * width + s.x; }
    Site site(std::size_t idx) const { return {static_cast<int>(idx % width), static_cast<int>(idx / width)}; }
    Site origin() const { return {width / 2, height / 2}; }
};

inline constexpr int kNoNeighbor = -1;

// Lattice adjacency of a window as a simple graph: each site lists its distinct
// in-window neighbors first, padded with kNoNeighbor, and counts how many of its
// four lattice directions leave the window.
struct LatticeAdjacency {
    std::vector<std::array<int, 4>> nbr;
    std::vector<std::uint8_t> offWindow;
};

LatticeAdjacency build_adjacency(const BoxGeometry& g);

}  // namespace bootlab
