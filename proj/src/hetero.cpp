#include "bootlab/hetero.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bootlab {

std::string to_string(Rule r) {
    switch (r) {
        case Rule::Xi: return "XI";
        case Rule::Chi: return "CHI";
        case Rule::Zeta: return "ZETA";
    }
    return "?";
}

Rule parse_rule(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); });
    if (t == "XI") return Rule::Xi;
    if (t == "CHI") return Rule::Chi;
    if (t == "ZETA") return Rule::Zeta;
    throw std::invalid_argument("unknown rule '" + std::string(text) + "'");
}

char state_char(State s) { return s == kTheta ? 'T' : static_cast<char>('0' + s); }

State parse_state_char(char c) {
    if (c == 'T') return kTheta;
    if (c >= '0' && c <= '5') return static_cast<State>(c - '0');
    throw std::invalid_argument(std::string("bad state character '") + c + "'");
}

HeteroGrid::HeteroGrid(BoxGeometry g, Rule r, int th, State fill) : geometry(g), rule(r), theta(th) {
    geometry.validate();
    states.assign(geometry.sites(), fill);
}

namespace {

State top_state(Rule r) {
    switch (r) {
        case Rule::Xi: return 5;
        case Rule::Chi: return 3;
        case Rule::Zeta: return kTheta;
    }
    return 0;
}

bool state_allowed(Rule r, State s) { return s <= top_state(r); }

bool helper(Rule r, State s, int theta) {
    switch (r) {
        case Rule::Xi: return false;
        case Rule::Chi: return s > 0 && s < 3;
        case Rule::Zeta: return s > 0 && s != kTheta && s < theta;
    }
    return false;
}

bool flips(Rule r, State s, int z, bool w, int theta) {
    if (s == 0) return false;
    switch (r) {
        case Rule::Xi: return z >= s;
        case Rule::Chi: return z >= s || (s == 3 && z == 2 && w);
        case Rule::Zeta: return z + (w ? 1 : 0) >= numeric_state(s, theta);
    }
    return false;
}

}  // namespace

int numeric_state(State s, int theta) { return s == kTheta ? theta : s; }

void HeteroGrid::validate() const {
    geometry.validate();
    if (states.size() != geometry.sites()) throw std::invalid_argument("state array does not match the window");
    if (!frozen.empty() && frozen.size() != geometry.sites())
        throw std::invalid_argument("frozen mask does not match the window");
    if (rule == Rule::Zeta && theta < 1) throw std::invalid_argument("zeta grids need theta >= 1");
    for (State s : states)
        if (!state_allowed(rule, s))
            throw std::invalid_argument("state " + std::string(1, state_char(s)) + " is not valid under rule " +
                                        to_string(rule));
}

HeteroGrid hetero_step(const HeteroGrid& g) {
    g.validate();
    const auto adj = build_adjacency(g.geometry);
    const bool wallZero = g.geometry.boundary == Boundary::OccupiedWall;
    HeteroGrid out = g;
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        if (g.states[i] == 0 || g.is_frozen(i)) continue;
        int z = wallZero ? adj.offWindow[i] : 0;
        bool w = false;
        for (int j : adj.nbr[i]) {
            if (j == kNoNeighbor) continue;
            z += g.states[j] == 0;
            w = w || helper(g.rule, g.states[j], g.theta);
        }
        if (flips(g.rule, g.states[i], z, w, g.theta)) out.states[i] = 0;
    }
    return out;
}

HeteroGrid hetero_fixpoint(const HeteroGrid& g, FixpointTrace* trace) {
    g.validate();
    const auto adj = build_adjacency(g.geometry);
    const bool wallZero = g.geometry.boundary == Boundary::OccupiedWall;
    HeteroGrid out = g;
    auto& st = out.states;
    const std::size_t N = st.size();
    std::vector<std::uint8_t> z(N, 0), h(N, 0);
    for (std::size_t i = 0; i < N; ++i) {
        z[i] = wallZero ? adj.offWindow[i] : 0;
        for (int j : adj.nbr[i]) {
            if (j == kNoNeighbor) continue;
            z[i] += st[j] == 0;
            h[i] += helper(g.rule, st[j], g.theta);
        }
    }
    auto ready = [&](std::size_t i) {
        return st[i] != 0 && !out.is_frozen(i) && flips(g.rule, st[i], z[i], h[i] > 0, g.theta);
    };
    std::vector<std::uint32_t> queue;
    for (std::size_t i = 0; i < N; ++i)
        if (ready(i)) queue.push_back(static_cast<std::uint32_t>(i));

    std::size_t flipsDone = 0;
    bool decreased = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t i = queue[head];
        if (st[i] == 0) continue;
        const bool wasHelper = helper(g.rule, st[i], g.theta);
        st[i] = 0;
        ++flipsDone;
        for (int j : adj.nbr[i]) {
            if (j == kNoNeighbor) continue;
            const int before = z[j] + (h[j] > 0);
            ++z[j];
            if (wasHelper) --h[j];
            if (z[j] + (h[j] > 0) < before) decreased = true;
            if (ready(static_cast<std::size_t>(j))) queue.push_back(static_cast<std::uint32_t>(j));
        }
    }
    if (trace) {
        trace->flips = flipsDone;
        trace->triggerDecreased = decreased;
    }
    return out;
}

HeteroGrid restricted_fixpoint(const HeteroGrid& g, const std::vector<std::uint8_t>& inside, State k) {
    if (inside.size() != g.geometry.sites()) throw std::invalid_argument("site set does not match the window");
    HeteroGrid h = g;
    for (std::size_t i = 0; i < inside.size(); ++i)
        if (!inside[i]) h.states[i] = k;
    return hetero_fixpoint(h);
}

ClusterStats zero_clusters(const HeteroGrid& g) {
    const auto adj = build_adjacency(g.geometry);
    ClusterStats out;
    out.label.assign(g.states.size(), -1);
    std::vector<std::uint32_t> stack;
    for (std::size_t s = 0; s < g.states.size(); ++s) {
        if (g.states[s] != 0 || out.label[s] >= 0) continue;
        const int id = static_cast<int>(out.clusters.size());
        ClusterStats::Cluster c;
        const Site p0 = g.geometry.site(s);
        c.box = {p0.x, p0.y, p0.x, p0.y};
        out.label[s] = id;
        stack.assign(1, static_cast<std::uint32_t>(s));
        while (!stack.empty()) {
            const auto i = stack.back();
            stack.pop_back();
            ++c.size;
            const Site p = g.geometry.site(i);
            c.box.a1 = std::min(c.box.a1, p.x);
            c.box.a2 = std::max(c.box.a2, p.x);
            c.box.b1 = std::min(c.box.b1, p.y);
            c.box.b2 = std::max(c.box.b2, p.y);
            for (int j : adj.nbr[i]) {
                if (j == kNoNeighbor || g.states[j] != 0 || out.label[j] >= 0) continue;
                out.label[j] = id;
                stack.push_back(static_cast<std::uint32_t>(j));
            }
        }
        c.diameter = std::max(c.box.a2 - c.box.a1, c.box.b2 - c.box.b1);
        out.maxDiameter = std::max(out.maxDiameter, c.diameter);
        out.clusters.push_back(c);
    }
    return out;
}

StateMap identity_map() {
    StateMap m;
    for (State s = 0; s <= kTheta; ++s) m[s] = s;
    return m;
}

HeteroGrid remap_states(const HeteroGrid& g, const StateMap& mapping) { return remap_states(g, mapping, g.rule); }

HeteroGrid remap_states(const HeteroGrid& g, const StateMap& mapping, Rule newRule) {
    HeteroGrid out = g;
    out.rule = newRule;
    for (auto& s : out.states) {
        if (s > kTheta || !mapping[s]) throw std::invalid_argument("state map is not defined on an occurring state");
        s = *mapping[s];
    }
    out.validate();
    return out;
}

std::string to_text(const HeteroGrid& g) {
    std::string out;
    out.reserve(g.states.size() + g.geometry.height);
    for (int y = g.geometry.height - 1; y >= 0; --y) {
        for (int x = 0; x < g.geometry.width; ++x) out.push_back(state_char(g.at({x, y})));
        out.push_back('\n');
    }
    return out;
}

HeteroGrid from_text(std::string_view text, Rule rule, int theta, Boundary boundary) {
    std::vector<std::string> lines;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw std::invalid_argument("empty grid snapshot");
    const int w = static_cast<int>(lines.front().size());
    for (const auto& l : lines)
        if (static_cast<int>(l.size()) != w) throw std::invalid_argument("ragged grid snapshot");
    const int h = static_cast<int>(lines.size());
    HeteroGrid g({w, h, boundary}, rule, theta);
    for (int row = 0; row < h; ++row)
        for (int x = 0; x < w; ++x) g.at({x, h - 1 - row}) = parse_state_char(lines[row][x]);
    g.validate();
    return g;
}

}  // namespace bootlab
