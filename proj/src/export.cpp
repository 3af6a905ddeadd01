#include "chaseterm/export.hpp"

#include <algorithm>

namespace chaseterm {

using nlohmann::json;

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string label_of(const ConstraintGraph& g, std::size_t id) {
    auto it = g.labels.find(id);
    return it == g.labels.end() ? default_label(id) : it->second;
}

std::string edge_line(const PositionEdge& e) {
    std::string out = "  " + quote(to_string(e.from)) + " -> " + quote(to_string(e.to));
    return out + (e.special ? " [style=dashed]; /* special=true */\n" : ";\n");
}

std::string constraint_edges(const ConstraintGraph& g) {
    std::string out;
    for (const auto& [a, b] : g.edges) out += "  " + quote(label_of(g, a)) + " -> " + quote(label_of(g, b)) + ";\n";
    return out;
}

} // namespace

std::string to_dot(const PositionGraph& g) {
    std::string out = "digraph g {\n";
    for (const auto& p : g.nodes) out += "  " + quote(to_string(p)) + ";\n";
    for (const auto& e : g.edges) out += edge_line(e);
    return out + "}\n";
}

std::string to_dot(const ConstraintGraph& g) {
    std::string out = "digraph g {\n";
    for (auto id : g.nodes) out += "  " + quote(label_of(g, id)) + ";\n";
    return out + constraint_edges(g) + "}\n";
}

std::string to_dot(const RestrictionSystem& rs) {
    std::string out = "digraph g {\n";
    for (auto id : rs.graph.nodes) {
        const std::string name = label_of(rs.graph, id);
        auto it = rs.f.find(id);
        const std::string f = to_string(it == rs.f.end() ? PositionSet{} : it->second);
        out += "  " + quote(name) + " [label=" + quote(name + " " + f) + "];\n";
    }
    return out + constraint_edges(rs.graph) + "}\n";
}

std::string to_dot(const MonitorGraph& g) {
    std::string out = "digraph g {\n";
    for (const auto& n : g.nodes())
        out += "  " + quote(to_string(n.null)) + " [label=" + quote(to_string(n.null) + " " + to_string(n.created_at)) +
               "];\n";
    for (const auto& e : g.edges())
        out += "  " + quote(to_string(g.nodes()[e.source].null)) + " -> " + quote(to_string(g.nodes()[e.target].null)) +
               " [label=" + quote(default_label(e.constraint_id) + " " + to_string(e.body_positions)) + "];\n";
    return out + "}\n";
}

namespace {

std::optional<std::string> check_cycle(const PositionGraph& g, const std::vector<PositionEdge>& cycle,
                                       const std::string& what) {
    if (!is_special_cycle(g, cycle)) return what + ": witness is not a special cycle";
    return std::nullopt;
}

// Every ordered pair of the component that the graph links must carry a
// verified firing witness, and the component must be strongly connected.
std::optional<std::string> check_component(std::span<const Constraint> sigma, const IdSet& comp,
                                           const ConstraintGraph& g, const RestrictionSystem* rs,
                                           FiringOracle& oracle, const std::string& what) {
    const auto members = subset_of(sigma, comp);
    for (const auto& a : members)
        for (const auto& b : members) {
            if (!g.has_edge(a.id, b.id)) continue;
            const PositionSet p = rs ? rs->f.at(a.id) : PositionSet{};
            const FiringMode mode = rs ? FiringMode::PrecedesP : FiringMode::Precedes;
            auto w = oracle.can_cause(a, b, p, mode);
            if (!w || !verify_firing_witness(a, b, p, mode, *w, oracle.options()))
                return what + ": edge " + a.label + " -> " + b.label + " has no valid firing witness";
        }
    ConstraintGraph sub = empty_graph(members);
    for (const auto& [a, b] : g.edges)
        if (std::binary_search(comp.begin(), comp.end(), a) && std::binary_search(comp.begin(), comp.end(), b))
            sub.edges.insert({a, b});
    const auto sccs = nontrivial_sccs(sub);
    if (sccs.size() != 1 || sccs.front() != comp) return what + ": witness component is not strongly connected";
    return std::nullopt;
}

} // namespace

std::optional<std::string> validate_report(std::span<const Constraint> sigma, const AnalysisReport& r,
                                           FiringOracle& oracle) {
    if (r.weakly_acyclic == false)
        if (auto e = check_cycle(r.dependency, r.weak_acyclicity_cycle, "weak acyclicity")) return e;
    if (r.safe == false)
        if (auto e = check_cycle(r.propagation, r.safety_cycle, "safety")) return e;
    if (r.stratified == false) {
        if (!r.stratification_witness || !r.chase) return "stratification: missing witness";
        const auto& w = *r.stratification_witness;
        if (auto e = check_component(sigma, w.component, *r.chase, nullptr, oracle, "stratification")) return e;
        if (auto e = check_cycle(dependency_graph(subset_of(sigma, w.component)), w.cycle, "stratification")) return e;
    }
    if (r.safely_restricted == false) {
        if (!r.safe_restriction_witness || !r.restriction) return "safe restriction: missing witness";
        const auto& w = *r.safe_restriction_witness;
        if (auto e = check_component(sigma, w.component, r.restriction->graph, &*r.restriction, oracle,
                                     "safe restriction"))
            return e;
        if (auto e = check_cycle(propagation_graph(subset_of(sigma, w.component)), w.cycle, "safe restriction"))
            return e;
    }
    if (r.inductively_restricted == false) {
        if (!r.inductive_restriction_witness || !r.part) return "inductive restriction: missing witness";
        const auto& w = *r.inductive_restriction_witness;
        if (std::find(r.part->begin(), r.part->end(), w.component) == r.part->end())
            return "inductive restriction: witness is not an element of part";
        if (auto e = check_cycle(propagation_graph(subset_of(sigma, w.component)), w.cycle, "inductive restriction"))
            return e;
    }
    return std::nullopt;
}

namespace {

std::string label_in(std::span<const Constraint> sigma, std::size_t id) {
    for (const auto& c : sigma)
        if (c.id == id) return c.label;
    return default_label(id);
}

json labels(std::span<const Constraint> sigma, const IdSet& ids) {
    json out = json::array();
    for (auto id : ids) out.push_back(label_in(sigma, id));
    return out;
}

json positions(const PositionSet& ps) {
    json out = json::array();
    for (const auto& p : ps) out.push_back(to_string(p));
    return out;
}

json facts(const Instance& inst) {
    json out = json::array();
    for (const auto& f : inst) out.push_back(to_string(f));
    return out;
}

json edge_json(const PositionEdge& e) {
    return {{"from", to_string(e.from)}, {"to", to_string(e.to)}, {"special", e.special}};
}

json cycle_json(const std::vector<PositionEdge>& cycle) {
    json out = json::array();
    for (const auto& e : cycle) out.push_back(edge_json(e));
    return out;
}

json graph_json(const PositionGraph& g) {
    json adj = json::object();
    for (const auto& p : g.nodes) adj[to_string(p)] = json::array();
    for (const auto& e : g.edges) adj[to_string(e.from)].push_back(edge_json(e));
    return {{"nodes", positions(g.nodes)}, {"adjacency", adj}};
}

json graph_json(const ConstraintGraph& g) {
    json nodes = json::array();
    json adj = json::object();
    for (auto id : g.nodes) {
        nodes.push_back(label_of(g, id));
        adj[label_of(g, id)] = json::array();
    }
    for (const auto& [a, b] : g.edges) adj[label_of(g, a)].push_back(label_of(g, b));
    return {{"nodes", nodes}, {"adjacency", adj}};
}

json component_json(std::span<const Constraint> sigma, const std::optional<ComponentWitness>& w) {
    if (!w) return nullptr;
    return {{"component", labels(sigma, w->component)}, {"cycle", cycle_json(w->cycle)}};
}

json opt(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

json assignment_json(const Assignment& a) {
    json out = json::object();
    for (const auto& [v, t] : a) out[v] = to_string(t);
    return out;
}

} // namespace

json to_json(std::span<const Constraint> sigma, const AnalysisReport& r) {
    json out;
    json cs = json::array();
    for (const auto& c : sigma) cs.push_back({{"label", c.label}, {"text", to_string(c)}});
    out["constraints"] = cs;
    out["verdicts"] = {{"weakly_acyclic", opt(r.weakly_acyclic)},
                       {"safe", opt(r.safe)},
                       {"stratified", opt(r.stratified)},
                       {"safely_restricted", opt(r.safely_restricted)},
                       {"inductively_restricted", opt(r.inductively_restricted)}};
    out["affected_positions"] = positions(r.affected);
    out["dependency_graph"] = graph_json(r.dependency);
    out["propagation_graph"] = graph_json(r.propagation);
    out["restriction_system"] = nullptr;
    if (r.restriction) {
        json f = json::object();
        for (const auto& [id, ps] : r.restriction->f) f[label_in(sigma, id)] = positions(ps);
        out["restriction_system"] = {{"graph", graph_json(r.restriction->graph)}, {"f", f}};
    }
    out["chase_graph"] = r.chase ? graph_json(*r.chase) : json(nullptr);
    out["part"] = nullptr;
    if (r.part) {
        json p = json::array();
        for (const auto& s : *r.part) p.push_back(labels(sigma, s));
        out["part"] = p;
    }
    out["witnesses"] = {
        {"weakly_acyclic", r.weakly_acyclic == false ? cycle_json(r.weak_acyclicity_cycle) : json(nullptr)},
        {"safe", r.safe == false ? cycle_json(r.safety_cycle) : json(nullptr)},
        {"stratified", component_json(sigma, r.stratification_witness)},
        {"safely_restricted", component_json(sigma, r.safe_restriction_witness)},
        {"inductively_restricted", component_json(sigma, r.inductive_restriction_witness)}};
    return out;
}

json to_json(std::span<const Constraint> sigma, const ChaseResult& r) {
    json out;
    out["outcome"] = to_string(r.outcome);
    out["instance"] = facts(r.instance);
    json steps = json::array();
    for (const auto& s : r.steps) {
        json step = {{"index", s.step_index},
                     {"constraint", label_in(sigma, s.constraint_id)},
                     {"assignment", assignment_json(s.assignment)}};
        json added = json::array();
        for (const auto& f : s.added_facts) added.push_back(to_string(f));
        step["added"] = added;
        if (s.merged) step["merged"] = {{"survivor", to_string(s.merged->first)}, {"removed", to_string(s.merged->second)}};
        json fresh = json::array();
        for (const auto& n : s.fresh_nulls) fresh.push_back({{"null", to_string(n.null)}, {"positions", positions(n.positions)}});
        step["fresh_nulls"] = fresh;
        steps.push_back(step);
    }
    out["steps"] = steps;
    out["step_count"] = r.steps.size();
    if (r.outcome == ChaseOutcome::Failed && r.failure)
        out["failure"] = {{"step", r.failed_step}, {"left", to_string(r.failure->left)}, {"right", to_string(r.failure->right)}};
    if (r.abort_reason) out["abort_reason"] = to_string(*r.abort_reason);
    if (r.monitor) {
        out["k"] = r.k;
        out["longest_chain"] = r.monitor->longest_chain();
        if (r.cyclic_chain) {
            json chain = json::array();
            for (auto i : r.cyclic_chain->edges) {
                const auto& e = r.monitor->edges()[i];
                chain.push_back({{"source", to_string(r.monitor->nodes()[e.source].null)},
                                 {"target", to_string(r.monitor->nodes()[e.target].null)},
                                 {"constraint", label_in(sigma, e.constraint_id)},
                                 {"body_positions", positions(e.body_positions)}});
            }
            out["cyclic_chain"] = chain;
        }
    }
    return out;
}

json to_json(std::span<const Constraint> sigma, const Irrelevance& irr) {
    return {{"irrelevant", labels(sigma, irr.irrelevant)},
            {"relevant", labels(sigma, irr.relevant)},
            {"instance_constraint", to_string(irr.instance_constraint)},
            {"chase_graph", graph_json(irr.chase)}};
}

json to_json(std::span<const Constraint> sigma, const TerminationGuarantee& g) {
    json p = json::array();
    for (const auto& s : g.part) p.push_back(labels(sigma, s));
    return {{"level", to_string(g.level)},
            {"relevant", labels(sigma, g.relevant)},
            {"part", p},
            {"irrelevance", g.irrelevance ? to_json(sigma, *g.irrelevance) : json(nullptr)}};
}

} // namespace chaseterm
