#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bootlab/lattice.hpp"

namespace bootlab {

using State = std::uint8_t;
// The threshold symbol of the zeta rule; numerically it reads as theta.
inline constexpr State kTheta = 6;

enum class Rule { Xi, Chi, Zeta };

std::string to_string(Rule r);
Rule parse_rule(std::string_view text);

char state_char(State s);
State parse_state_char(char c);

struct HeteroGrid {
    BoxGeometry geometry;
    Rule rule = Rule::Xi;
    int theta = 0;
    std::vector<State> states;
    std::vector<std::uint8_t> frozen;  // empty, or one flag per site

    HeteroGrid() = default;
    HeteroGrid(BoxGeometry g, Rule r, int theta, State fill = 0);

    State at(Site s) const { return states[geometry.index(s)]; }
    State& at(Site s) { return states[geometry.index(s)]; }
    bool is_frozen(std::size_t i) const { return !frozen.empty() && frozen[i]; }

    // Throws std::invalid_argument on a rule/state mismatch.
    void validate() const;

    friend bool operator==(const HeteroGrid& a, const HeteroGrid& b) {
        return a.rule == b.rule && a.theta == b.theta && a.geometry.width == b.geometry.width &&
               a.geometry.height == b.geometry.height && a.geometry.boundary == b.geometry.boundary &&
               a.states == b.states && a.frozen == b.frozen;
    }
};

struct Rect {
    int a1 = 0, b1 = 0, a2 = 0, b2 = 0;

    bool nondegenerate() const { return a1 < a2 && b1 < b2; }
    bool contains(Site s) const { return s.x >= a1 && s.x <= a2 && s.y >= b1 && s.y <= b2; }
    long long area() const { return static_cast<long long>(a2 - a1 + 1) * (b2 - b1 + 1); }
    friend bool operator==(const Rect&, const Rect&) = default;
};

struct ClusterStats {
    struct Cluster {
        std::size_t size = 0;
        int diameter = 0;
        Rect box;
    };
    std::vector<Cluster> clusters;
    int maxDiameter = 0;
    // Cluster id per site, -1 for nonzero sites.
    std::vector<int> label;
};

// Numeric threshold of a state under the grid's rule (theta for the symbol).
int numeric_state(State s, int theta);

HeteroGrid hetero_step(const HeteroGrid& g);

struct FixpointTrace {
    std::size_t flips = 0;
    // Set when Z+W was ever observed to decrease at some site.
    bool triggerDecreased = false;
};

HeteroGrid hetero_fixpoint(const HeteroGrid& g, FixpointTrace* trace = nullptr);

// Dynamics started from g with every site outside A (mask, one flag per site)
// set to k. The outside sites then evolve under the same rule.
HeteroGrid restricted_fixpoint(const HeteroGrid& g, const std::vector<std::uint8_t>& inside, State k);

ClusterStats zero_clusters(const HeteroGrid& g);

// mapping[s] is the image of state s; std::nullopt entries must not occur.
using StateMap = std::array<std::optional<State>, 7>;
StateMap identity_map();
HeteroGrid remap_states(const HeteroGrid& g, const StateMap& mapping);
HeteroGrid remap_states(const HeteroGrid& g, const StateMap& mapping, Rule newRule);

// Plain-text snapshot: one line per row, north (largest y) first, one char per
// state ('T' for the threshold symbol).
std::string to_text(const HeteroGrid& g);
HeteroGrid from_text(std::string_view text, Rule rule, int theta, Boundary boundary = Boundary::EmptyWall);

}  // namespace bootlab
