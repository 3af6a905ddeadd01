#include "chaseterm/restriction.hpp"

#include <algorithm>
#include <functional>

namespace chaseterm {

ConstraintGraph empty_graph(std::span<const Constraint> sigma) {
    ConstraintGraph g;
    for (const auto& c : sigma) {
        g.nodes.push_back(c.id);
        g.labels[c.id] = c.label;
    }
    std::sort(g.nodes.begin(), g.nodes.end());
    return g;
}

IdSet ids_of(std::span<const Constraint> sigma) {
    IdSet ids;
    for (const auto& c : sigma) ids.push_back(c.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

ConstraintSet subset_of(std::span<const Constraint> sigma, const IdSet& ids) {
    ConstraintSet out;
    for (const auto& c : sigma)
        if (std::binary_search(ids.begin(), ids.end(), c.id)) out.push_back(c);
    std::sort(out.begin(), out.end(), [](const Constraint& a, const Constraint& b) { return a.id < b.id; });
    return out;
}

namespace {

// Positions an edge (alpha, beta) pushes into f(beta).
PositionSet pushed(const Constraint& alpha, const PositionSet& f_alpha, const Constraint& beta) {
    const PositionSet src = alpha.is_tgd() ? aff_cl(alpha, f_alpha) : f_alpha;
    const PositionSet dst = body_positions(beta);
    PositionSet out;
    std::set_intersection(src.begin(), src.end(), dst.begin(), dst.end(), std::inserter(out, out.end()));
    return out;
}

const Constraint& by_id(std::span<const Constraint> sigma, std::size_t id) {
    for (const auto& c : sigma)
        if (c.id == id) return c;
    throw Error("unknown constraint id " + std::to_string(id));
}

} // namespace

RestrictionSystem minimal_restriction_system(std::span<const Constraint> sigma, FiringOracle& oracle) {
    RestrictionSystem rs;
    rs.graph = empty_graph(sigma);
    for (const auto& c : sigma) rs.f[c.id];

    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& alpha : sigma)
            for (const auto& beta : sigma) {
                if (rs.graph.has_edge(alpha.id, beta.id)) continue;
                if (oracle.precedes(alpha, beta, rs.f[alpha.id])) {
                    rs.graph.edges.insert({alpha.id, beta.id});
                    changed = true;
                }
            }
        for (bool grown = true; grown;) {
            grown = false;
            for (const auto& [a, b] : rs.graph.edges)
                for (const auto& p : pushed(by_id(sigma, a), rs.f[a], by_id(sigma, b)))
                    if (rs.f[b].insert(p).second) grown = changed = true;
        }
    }
    return rs;
}

RestrictionSystem minimal_restriction_system(std::span<const Constraint> sigma) {
    FiringOracle oracle;
    return minimal_restriction_system(sigma, oracle);
}

bool is_restriction_system(std::span<const Constraint> sigma, const RestrictionSystem& rs, FiringOracle& oracle) {
    auto f = [&](std::size_t id) {
        auto it = rs.f.find(id);
        return it == rs.f.end() ? PositionSet{} : it->second;
    };
    for (const auto& [a, b] : rs.graph.edges) {
        const PositionSet need = pushed(by_id(sigma, a), f(a), by_id(sigma, b));
        const PositionSet have = f(b);
        if (!std::includes(have.begin(), have.end(), need.begin(), need.end())) return false;
    }
    for (const auto& alpha : sigma)
        for (const auto& beta : sigma)
            if (!rs.graph.has_edge(alpha.id, beta.id) && oracle.precedes(alpha, beta, f(alpha.id))) return false;
    return true;
}

std::vector<IdSet> nontrivial_sccs(const ConstraintGraph& g) {
    std::map<std::size_t, std::vector<std::size_t>> succ;
    for (const auto& [a, b] : g.edges) succ[a].push_back(b);

    // Tarjan.
    std::map<std::size_t, std::size_t> index, low;
    std::vector<std::size_t> stack;
    std::set<std::size_t> on_stack;
    std::size_t counter = 0;
    std::vector<IdSet> out;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack.insert(v);
        for (auto w : succ[v]) {
            if (!index.contains(w)) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack.contains(w)) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] != index[v]) return;
        IdSet comp;
        std::size_t w;
        do {
            w = stack.back();
            stack.pop_back();
            on_stack.erase(w);
            comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        if (comp.size() > 1 || g.has_edge(comp[0], comp[0])) out.push_back(std::move(comp));
    };
    for (auto v : g.nodes)
        if (!index.contains(v)) visit(v);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IdSet> part(std::span<const Constraint> sigma, FiringOracle& oracle) {
    const auto components = nontrivial_sccs(minimal_restriction_system(sigma, oracle).graph);
    if (components.size() == 1) {
        if (components.front() != ids_of(sigma)) return part(subset_of(sigma, components.front()), oracle);
        return {ids_of(sigma)};
    }
    std::set<IdSet> d;
    for (const auto& c : components)
        for (auto& s : part(subset_of(sigma, c), oracle)) d.insert(std::move(s));
    return {d.begin(), d.end()};
}

std::vector<IdSet> part(std::span<const Constraint> sigma) {
    FiringOracle oracle;
    return part(sigma, oracle);
}

ConstraintGraph chase_graph(std::span<const Constraint> sigma, FiringOracle& oracle) {
    ConstraintGraph g = empty_graph(sigma);
    for (const auto& alpha : sigma)
        for (const auto& beta : sigma)
            if (oracle.precedes(alpha, beta)) g.edges.insert({alpha.id, beta.id});
    return g;
}

ConstraintGraph chase_graph(std::span<const Constraint> sigma) {
    FiringOracle oracle;
    return chase_graph(sigma, oracle);
}

namespace {

template <class Check>
LadderVerdict all_components(std::span<const Constraint> sigma, const std::vector<IdSet>& components, Check&& check) {
    for (const auto& c : components) {
        auto v = check(subset_of(sigma, c));
        if (!v.holds) return {false, ComponentWitness{c, std::move(v.cycle)}};
    }
    return {};
}

} // namespace

LadderVerdict check_safely_restricted(std::span<const Constraint> sigma, FiringOracle& oracle) {
    return all_components(sigma, nontrivial_sccs(minimal_restriction_system(sigma, oracle).graph),
                          [](const ConstraintSet& s) { return check_safe(s); });
}

LadderVerdict check_inductively_restricted(std::span<const Constraint> sigma, FiringOracle& oracle) {
    return all_components(sigma, part(sigma, oracle), [](const ConstraintSet& s) { return check_safe(s); });
}

LadderVerdict check_stratified(std::span<const Constraint> sigma, FiringOracle& oracle) {
    return all_components(sigma, nontrivial_sccs(chase_graph(sigma, oracle)),
                          [](const ConstraintSet& s) { return check_weakly_acyclic(s); });
}

bool is_safely_restricted(std::span<const Constraint> sigma) {
    FiringOracle oracle;
    return check_safely_restricted(sigma, oracle).holds;
}

bool is_inductively_restricted(std::span<const Constraint> sigma) {
    FiringOracle oracle;
    return check_inductively_restricted(sigma, oracle).holds;
}

bool is_stratified(std::span<const Constraint> sigma) {
    FiringOracle oracle;
    return check_stratified(sigma, oracle).holds;
}

AnalysisReport analyze(std::span<const Constraint> sigma, const AnalysisRequest& request, FiringOracle& oracle) {
    AnalysisReport r;
    r.affected = affected_positions(sigma);
    r.dependency = dependency_graph(sigma);
    r.propagation = propagation_graph(sigma);

    if (request.weakly_acyclic) {
        r.weak_acyclicity_cycle = find_special_cycle(r.dependency);
        r.weakly_acyclic = r.weak_acyclicity_cycle.empty();
    }
    if (request.safe) {
        r.safety_cycle = find_special_cycle(r.propagation);
        r.safe = r.safety_cycle.empty();
    }
    if (request.stratified) {
        r.chase = chase_graph(sigma, oracle);
        auto v = all_components(sigma, nontrivial_sccs(*r.chase),
                                [](const ConstraintSet& s) { return check_weakly_acyclic(s); });
        r.stratified = v.holds;
        r.stratification_witness = std::move(v.witness);
    }
    if (request.safely_restricted || request.inductively_restricted) r.restriction = minimal_restriction_system(sigma, oracle);
    if (request.safely_restricted) {
        auto v = all_components(sigma, nontrivial_sccs(r.restriction->graph),
                                [](const ConstraintSet& s) { return check_safe(s); });
        r.safely_restricted = v.holds;
        r.safe_restriction_witness = std::move(v.witness);
    }
    if (request.inductively_restricted) {
        r.part = part(sigma, oracle);
        auto v = all_components(sigma, *r.part, [](const ConstraintSet& s) { return check_safe(s); });
        r.inductively_restricted = v.holds;
        r.inductive_restriction_witness = std::move(v.witness);
    }
    return r;
}

AnalysisReport analyze(std::span<const Constraint> sigma, const AnalysisRequest& request) {
    FiringOracle oracle;
    return analyze(sigma, request, oracle);
}

} // namespace chaseterm
