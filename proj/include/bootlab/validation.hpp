#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bootlab/detectors.hpp"
#include "bootlab/hetero.hpp"
#include "bootlab/plane.hpp"
#include "bootlab/product.hpp"

namespace bootlab {

// Random instance families shared by the validate command and the tests.
PlaneConfig random_small_plane(Rng& rng, int maxN = 12);
HeteroGrid random_rule_grid(Rule rule, int L, Rng& rng);
ProductConfig random_sandwich_instance(Fiber fiber, int theta, int L, int n, Rng& rng);

// 15x15 wall window whose outer ring is all 0 and whose interior satisfies the
// hypotheses of the blocking lemmas for the variant.
HeteroGrid blocking_instance(BlockingVariant variant, Rng& rng);
Rect blocking_region(const HeteroGrid& g);

struct ProtectedInstance {
    HeteroGrid grid;
    Rect rect;
};
ProtectedInstance protected_instance(Rng& rng);

struct GreenRedInstance {
    HeteroGrid grid;
    Rect box;
};
GreenRedInstance green_red_instance(Rng& rng);

std::vector<std::uint8_t> rect_mask(const BoxGeometry& g, const Rect& r);

// Synchronous iteration of hetero_step until nothing changes.
HeteroGrid iterate_steps(const HeteroGrid& g);
PlaneConfig iterate_plane_steps(const PlaneConfig& p, int r);

struct CheckResult {
    std::string name;
    bool passed = true;
    std::uint64_t cases = 0;     // instances examined
    std::uint64_t relevant = 0;  // instances where the premise held
    std::string detail;
};

std::vector<CheckResult> run_validation(bool quick, std::uint64_t seed);

}  // namespace bootlab
