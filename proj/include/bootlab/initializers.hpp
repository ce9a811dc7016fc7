#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bootlab/hetero.hpp"
#include "bootlab/plane.hpp"
#include "bootlab/product.hpp"
#include "bootlab/rng.hpp"

namespace bootlab {

enum class ClassMode { LowerIS, UpperInert };

std::string to_string(ClassMode m);
ClassMode parse_class_mode(std::string_view text);

struct ClassificationGrid {
    BoxGeometry geometry;
    std::vector<State> labels;
    ClassMode mode = ClassMode::LowerIS;

    // The labels as an XI grid on the same window.
    HeteroGrid to_grid() const;
};

// Label of one plane from its own cells: smallest k with (theta-k)-IS, else 5.
// Rungs with threshold <= 0 hold vacuously.
State lower_label(PlaneEngine& engine, std::span<const std::uint32_t> cells, int theta);

// Label of one plane from its cells and its lattice neighbors' cells (null for
// absent neighbors); `extra` counts occupied planes beyond a wall.
State upper_label(int n, std::span<const std::uint32_t> cells,
                  std::span<const std::vector<std::uint32_t>* const> neighbors, int extra, int theta);

ClassificationGrid classify_grid(const ProductConfig& cfg, ClassMode mode);

// Classifies the interior of a window that carries a one-plane halo ring. The
// halo only feeds inertness; the result has the interior size and the given
// boundary.
ClassificationGrid classify_interior(const ProductConfig& withHalo, ClassMode mode, Boundary interiorBoundary);

State nz(std::int64_t m, int theta);

struct LimitParams {
    double a = 1.0;
    double eps = 0.0;
    int ell = 1;
    int theta = 3;
};

enum class LimitVariant { XiAeps, ChiAeps, ZetaPoisson };

std::string to_string(LimitVariant v);
LimitVariant parse_limit_variant(std::string_view text);

// Marginal law of one site for the (a,eps) initializations, states 0..3.
std::array<double, 4> limit_marginals(const LimitParams& params, LimitVariant variant);

// Supremum of admissible eps (exclusive).
double eps_bound(const LimitParams& params, LimitVariant variant);

void check_limit_params(const LimitParams& params, LimitVariant variant);

HeteroGrid init_limit_grid(const LimitParams& params, LimitVariant variant, const BoxGeometry& geom, Rng& rng);

// XI grid with state 0 w.p. p, 3 w.p. q and 2 otherwise.
HeteroGrid polluted_grid(const BoxGeometry& geom, double p, double q, Rng& rng);

std::vector<std::uint8_t> clash_sites(const ProductConfig& cfg);

enum class Flavor { Favoring, Restricting };

HeteroGrid init_clique_comparison(const ProductConfig& cfg, Flavor flavor);

}  // namespace bootlab
