#pragma once

#include "chaseterm/chase.hpp"

#include <tuple>

namespace chaseterm {

struct MonitorNode {
    Term null;
    PositionSet created_at;
};

struct MonitorEdge {
    std::size_t source = 0; // node index
    std::size_t target = 0;
    std::size_t constraint_id = 0;
    PositionSet body_positions;
};

// Edges that may chain into a cycle pattern share this key:
// (source created-at, constraint, body positions, target created-at).
using MonitorClass = std::tuple<PositionSet, std::size_t, PositionSet, PositionSet>;

struct MonitorChain {
    std::vector<std::size_t> edges; // indices into MonitorGraph::edges(), in path order
};

// Provenance graph over chase-created nulls. Nodes are appended when a TGD
// step invents nulls; each pre-existing node whose null occurs in the
// instantiated body gets an edge to every new node. The longest same-class
// edge chain ending at each node is maintained incrementally.
class MonitorGraph {
public:
    const std::vector<MonitorNode>& nodes() const { return nodes_; }
    const std::vector<MonitorEdge>& edges() const { return edges_; }
    MonitorClass edge_class(const MonitorEdge& e) const;

    // Threads one chase step; `body` is the instantiated body of the fired constraint.
    void update(const ChaseStepRecord& step, const std::set<Atom>& body);

    // Node currently standing for `null`, if it was chase-created and not retired.
    std::optional<std::size_t> node_of(const Term& null) const;

    // Length of the longest chain of edges with one class key.
    std::size_t longest_chain() const { return longest_; }
    bool is_k_cyclic(std::size_t k) const { return k >= 1 && longest_ >= k; }
    // A chain of k same-class edges, if one exists.
    std::optional<MonitorChain> k_cyclic_chain(std::size_t k) const;

private:
    std::vector<MonitorNode> nodes_;
    std::vector<MonitorEdge> edges_;
    std::map<Term, std::size_t> active_;
    // Per node: longest same-class chain ending here, and its last edge.
    std::vector<std::map<MonitorClass, std::pair<std::size_t, std::size_t>>> depth_;
    std::vector<std::size_t> chain_len_; // per edge
    std::vector<std::optional<std::size_t>> chain_prev_; // per edge
    std::size_t longest_ = 0;
    std::optional<std::size_t> longest_end_;
};

// chase() with a k-cyclicity monitor attached.
ChaseResult monitored_chase(const Instance& inst, std::span<const Constraint> sigma, std::size_t k,
                            ChasePolicy policy = {});

} // namespace chaseterm
