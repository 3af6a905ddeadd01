#include "chaseterm/positions.hpp"

#include <algorithm>
#include <deque>

namespace chaseterm {

namespace {

bool subset(const PositionSet& a, const PositionSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Adds the edges one TGD contributes. `allowed` decides, per universal head
// variable, whether its body occurrences propagate.
template <class Allowed>
void add_tgd_edges(const Constraint& c, PositionGraph& g, Allowed&& allowed) {
    PositionSet existential_positions;
    for (const auto& y : c.existential) existential_positions.merge(positions_of(y, c.head));
    for (const auto& x : c.frontier()) {
        const PositionSet from = positions_of(x, c.body);
        if (!allowed(from)) continue;
        const PositionSet to = positions_of(x, c.head);
        for (const auto& p1 : from) {
            for (const auto& p2 : to) g.edges.insert({p1, p2, false});
            for (const auto& p2 : existential_positions) g.edges.insert({p1, p2, true});
        }
    }
}

} // namespace

PositionSet affected_positions(std::span<const Constraint> sigma) {
    PositionSet aff;
    for (const auto& c : sigma) {
        if (!c.is_tgd()) continue;
        for (const auto& y : c.existential) aff.merge(positions_of(y, c.head));
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& c : sigma) {
            if (!c.is_tgd()) continue;
            for (const auto& x : c.frontier()) {
                if (!subset(positions_of(x, c.body), aff)) continue;
                for (const auto& p : positions_of(x, c.head)) changed |= aff.insert(p).second;
            }
        }
    }
    return aff;
}

PositionSet aff_cl(const Constraint& tgd, const PositionSet& sources) {
    if (!tgd.is_tgd()) throw Error("aff-cl is defined for TGDs only");
    // Variables seen at each head position.
    std::map<Position, std::set<std::string>> at;
    for (const auto& a : tgd.head)
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (a.args[i].is_variable()) at[{a.relation, i + 1}].insert(a.args[i].name);
    PositionSet out;
    for (const auto& [pos, vars] : at) {
        bool ok = true;
        for (const auto& v : vars) {
            if (tgd.is_existential(v)) {
                ok = true;
                break;
            }
            if (!subset(positions_of(v, tgd.body), sources)) ok = false;
        }
        if (ok) out.insert(pos);
    }
    return out;
}

PositionGraph propagation_graph(std::span<const Constraint> sigma) {
    PositionGraph g;
    g.nodes = affected_positions(sigma);
    for (const auto& c : sigma) {
        if (!c.is_tgd()) continue;
        add_tgd_edges(c, g, [&](const PositionSet& from) { return subset(from, g.nodes); });
    }
    return g;
}

PositionGraph dependency_graph(std::span<const Constraint> sigma) {
    PositionGraph g;
    for (const auto& c : sigma) {
        for (const auto& a : c.body)
            for (std::size_t i = 0; i < a.args.size(); ++i) g.nodes.insert({a.relation, i + 1});
        for (const auto& a : c.head)
            for (std::size_t i = 0; i < a.args.size(); ++i) g.nodes.insert({a.relation, i + 1});
        if (c.is_tgd()) add_tgd_edges(c, g, [](const PositionSet&) { return true; });
    }
    return g;
}

std::vector<PositionEdge> find_special_cycle(const PositionGraph& g) {
    std::map<Position, std::vector<const PositionEdge*>> out;
    for (const auto& e : g.edges) out[e.from].push_back(&e);

    for (const auto& start : g.edges) {
        if (!start.special) continue;
        if (start.to == start.from) return {start};
        // Shortest path back from the special edge's head to its tail.
        std::map<Position, const PositionEdge*> via;
        std::deque<Position> queue{start.to};
        via[start.to] = nullptr;
        while (!queue.empty()) {
            Position p = queue.front();
            queue.pop_front();
            if (p == start.from) break;
            for (const auto* e : out[p]) {
                if (via.contains(e->to)) continue;
                via[e->to] = e;
                queue.push_back(e->to);
            }
        }
        if (!via.contains(start.from)) continue;
        std::vector<PositionEdge> path;
        for (Position p = start.from; via[p] != nullptr; p = via[p]->from) path.push_back(*via[p]);
        std::reverse(path.begin(), path.end());
        path.insert(path.begin(), start);
        return path;
    }
    return {};
}

bool is_special_cycle(const PositionGraph& g, std::span<const PositionEdge> cycle) {
    if (cycle.empty()) return false;
    bool special = false;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (!g.edges.contains(cycle[i])) return false;
        if (!(cycle[i].to == cycle[(i + 1) % cycle.size()].from)) return false;
        special |= cycle[i].special;
    }
    return special;
}

namespace {

CycleVerdict verdict_of(const PositionGraph& g) {
    CycleVerdict v;
    v.cycle = find_special_cycle(g);
    v.holds = v.cycle.empty();
    return v;
}

} // namespace

CycleVerdict check_safe(std::span<const Constraint> sigma) { return verdict_of(propagation_graph(sigma)); }

CycleVerdict check_weakly_acyclic(std::span<const Constraint> sigma) { return verdict_of(dependency_graph(sigma)); }

} // namespace chaseterm
