#include "chaseterm/monitor.hpp"

#include <algorithm>

namespace chaseterm {

MonitorClass MonitorGraph::edge_class(const MonitorEdge& e) const {
    return {nodes_[e.source].created_at, e.constraint_id, e.body_positions, nodes_[e.target].created_at};
}

std::optional<std::size_t> MonitorGraph::node_of(const Term& null) const {
    auto it = active_.find(null);
    if (it == active_.end()) return std::nullopt;
    return it->second;
}

void MonitorGraph::update(const ChaseStepRecord& step, const std::set<Atom>& body) {
    if (step.merged) {
        // The survivor inherits the node of the removed null; merging into
        // a constant (or into a monitored null) retires it.
        const auto& [survivor, removed] = *step.merged;
        auto it = active_.find(removed);
        if (it == active_.end()) return;
        const std::size_t node = it->second;
        active_.erase(it);
        if (survivor.is_null() && !active_.contains(survivor)) active_.emplace(survivor, node);
        return;
    }
    if (step.fresh_nulls.empty()) return;

    // Sources: monitored nulls of the instantiated body, with their positions.
    std::map<std::size_t, PositionSet> sources;
    for (const auto& f : body)
        for (std::size_t i = 0; i < f.args.size(); ++i)
            if (auto n = node_of(f.args[i])) sources[*n].insert({f.relation, i + 1});

    std::vector<std::size_t> fresh;
    for (const auto& fn : step.fresh_nulls) {
        fresh.push_back(nodes_.size());
        nodes_.push_back({fn.null, fn.positions});
        depth_.emplace_back();
        active_[fn.null] = fresh.back();
    }

    for (const auto& [src, positions] : sources) {
        for (std::size_t tgt : fresh) {
            const std::size_t e = edges_.size();
            edges_.push_back({src, tgt, step.constraint_id, positions});
            const MonitorClass key = edge_class(edges_.back());
            std::size_t len = 1;
            std::optional<std::size_t> prev;
            if (auto it = depth_[src].find(key); it != depth_[src].end()) {
                len = it->second.first + 1;
                prev = it->second.second;
            }
            chain_len_.push_back(len);
            chain_prev_.push_back(prev);
            auto& slot = depth_[tgt][key];
            if (len > slot.first) slot = {len, e};
            if (len > longest_) {
                longest_ = len;
                longest_end_ = e;
            }
        }
    }
}

std::optional<MonitorChain> MonitorGraph::k_cyclic_chain(std::size_t k) const {
    if (!is_k_cyclic(k) || !longest_end_) return std::nullopt;
    MonitorChain chain;
    std::optional<std::size_t> e = longest_end_;
    while (e && chain.edges.size() < k) {
        chain.edges.push_back(*e);
        e = chain_prev_[*e];
    }
    std::reverse(chain.edges.begin(), chain.edges.end());
    return chain;
}

ChaseResult monitored_chase(const Instance& inst, std::span<const Constraint> sigma, std::size_t k, ChasePolicy policy) {
    if (k == 0) throw Error("monitor k must be at least 1");
    policy.monitor_k = k;
    return chase(inst, sigma, policy);
}

} // namespace chaseterm
