#pragma once

#include "chaseterm/model.hpp"

namespace chaseterm {

struct PositionEdge {
    Position from;
    Position to;
    bool special = false;

    friend bool operator==(const PositionEdge&, const PositionEdge&) = default;
    friend auto operator<=>(const PositionEdge&, const PositionEdge&) = default;
};

// Position-level graph used for the propagation graph and the weak-acyclicity
// dependency graph. At most one regular and one special edge per ordered pair.
struct PositionGraph {
    PositionSet nodes;
    std::set<PositionEdge> edges;

    bool has_edge(const Position& from, const Position& to, bool special) const {
        return edges.contains({from, to, special});
    }
};

// Positions that may hold chase-created nulls. EGDs contribute nothing.
PositionSet affected_positions(std::span<const Constraint> sigma);

// Head positions of `tgd` into which nulls can flow when the body's nulls sit
// only in `sources`; existential positions always qualify.
PositionSet aff_cl(const Constraint& tgd, const PositionSet& sources);

PositionGraph propagation_graph(std::span<const Constraint> sigma);
PositionGraph dependency_graph(std::span<const Constraint> sigma);

// A cycle that starts with a special edge, as an edge list; empty if none.
std::vector<PositionEdge> find_special_cycle(const PositionGraph& g);

// Checks that `cycle` is a closed walk of edges of `g` containing a special edge.
bool is_special_cycle(const PositionGraph& g, std::span<const PositionEdge> cycle);

struct CycleVerdict {
    bool holds = true;
    std::vector<PositionEdge> cycle; // witness when !holds
};

CycleVerdict check_safe(std::span<const Constraint> sigma);
CycleVerdict check_weakly_acyclic(std::span<const Constraint> sigma);

inline bool is_safe(std::span<const Constraint> sigma) { return check_safe(sigma).holds; }
inline bool is_weakly_acyclic(std::span<const Constraint> sigma) { return check_weakly_acyclic(sigma).holds; }

} // namespace chaseterm
