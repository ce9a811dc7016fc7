#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bootlab/lattice.hpp"
#include "bootlab/plane.hpp"
#include "bootlab/rng.hpp"

namespace bootlab {

enum class Fiber { HammingSquare, Clique };

std::string to_string(Fiber f);
Fiber parse_fiber(std::string_view text);

// Finite window of Z^2 x Kn^2 or Z^2 x Kn. Fiber cells of all planes are
// stored contiguously, site-major; a Hamming cell is u*n + v.
class ProductConfig {
public:
    ProductConfig() = default;
    ProductConfig(BoxGeometry geometry, Fiber fiber, int n, int theta);

    const BoxGeometry& geometry() const { return geom_; }
    Fiber fiber() const { return fiber_; }
    int n() const { return n_; }
    int theta() const { return theta_; }
    std::size_t fiber_size() const { return fiberSize_; }
    std::size_t sites() const { return geom_.sites(); }

    bool occupied(std::size_t site, std::size_t cell) const { return occ_[site * fiberSize_ + cell] != 0; }
    bool set(std::size_t site, std::size_t cell);
    std::uint64_t plane_count(std::size_t site) const { return planeCount_[site]; }
    bool plane_full(std::size_t site) const { return planeCount_[site] == fiberSize_; }
    std::uint64_t total_occupied() const;

    PlaneConfig plane(std::size_t site) const;
    CliqueConfig clique(std::size_t site) const;
    std::vector<std::uint32_t> plane_cells(std::size_t site) const;

    friend bool operator==(const ProductConfig& a, const ProductConfig& b) {
        return a.fiber_ == b.fiber_ && a.n_ == b.n_ && a.theta_ == b.theta_ && a.geom_.width == b.geom_.width &&
               a.geom_.height == b.geom_.height && a.geom_.boundary == b.geom_.boundary && a.occ_ == b.occ_;
    }

private:
    BoxGeometry geom_;
    Fiber fiber_ = Fiber::HammingSquare;
    int n_ = 0;
    int theta_ = 1;
    std::size_t fiberSize_ = 0;
    std::vector<std::uint8_t> occ_;
    std::vector<std::uint64_t> planeCount_;
};

struct OccupationSummary {
    std::vector<std::uint64_t> perPlaneOccupied;
    std::vector<std::uint8_t> fullyOccupiedMask;
    bool originPointOccupied = false;
};

std::uint64_t product_cells(const BoxGeometry& geometry, Fiber fiber, int n);

ProductConfig sample_product(const BoxGeometry& geometry, Fiber fiber, int n, double p, int theta, Rng& rng);

ProductConfig product_fixpoint(const ProductConfig& cfg);

// One synchronous step of the unrestricted threshold-r dynamics leaves plane
// `site` untouched.
bool is_inert(const ProductConfig& cfg, std::size_t site, int r);

OccupationSummary summarize(const ProductConfig& cfg);

}  // namespace bootlab
