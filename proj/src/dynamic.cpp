#include "chaseterm/dynamic.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace chaseterm {

Constraint constraint_from_instance(const Instance& inst, std::size_t id) {
    if (inst.empty()) throw Error("cannot build alpha_I from empty instance");
    std::map<Term, std::string> var_of;
    std::set<std::string> taken;
    for (const auto& n : inst.nulls()) {
        std::string name = std::isupper(static_cast<unsigned char>(n.name[0])) ? n.name : "N_" + n.name;
        for (std::string base = name; !taken.insert(name).second;) name = base + "_" + std::to_string(taken.size());
        var_of.emplace(n, name);
    }
    std::vector<Atom> head;
    for (const auto& f : inst) {
        Atom a = f;
        for (auto& t : a.args)
            if (t.is_null()) t = Term::variable(var_of.at(t));
        head.push_back(std::move(a));
    }
    return Constraint::tgd(id, {}, std::move(head), kInstanceConstraintLabel);
}

Irrelevance irrelevant_constraints(const Instance& inst, std::span<const Constraint> sigma, FiringOracle& oracle) {
    std::size_t next_id = 0;
    for (const auto& c : sigma) next_id = std::max(next_id, c.id + 1);

    Irrelevance r{{}, {}, constraint_from_instance(inst, next_id), {}};
    ConstraintSet extended(sigma.begin(), sigma.end());
    extended.push_back(r.instance_constraint);
    r.chase = chase_graph(extended, oracle);

    // A body-less TGD violated by the instance fires without being caused by
    // anything; one the instance satisfies stays satisfied, since later steps
    // only add facts or map them homomorphically.
    std::set<std::size_t> seen{next_id};
    std::deque<std::size_t> queue{next_id};
    for (const auto& c : sigma)
        if (c.is_tgd() && c.body.empty() && !satisfies(inst, c) && seen.insert(c.id).second) queue.push_back(c.id);
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (const auto& [a, b] : r.chase.edges)
            if (a == v && seen.insert(b).second) queue.push_back(b);
    }
    for (auto id : ids_of(sigma)) (seen.contains(id) ? r.relevant : r.irrelevant).push_back(id);
    return r;
}

Irrelevance irrelevant_constraints(const Instance& inst, std::span<const Constraint> sigma) {
    FiringOracle oracle;
    return irrelevant_constraints(inst, sigma, oracle);
}

std::string to_string(GuaranteeLevel level) {
    switch (level) {
    case GuaranteeLevel::AllInstances: return "AllInstances";
    case GuaranteeLevel::ThisInstance: return "ThisInstance";
    case GuaranteeLevel::None: return "None";
    }
    return "?";
}

namespace {

bool all_safe(std::span<const Constraint> sigma, const std::vector<IdSet>& parts) {
    return std::all_of(parts.begin(), parts.end(),
                       [&](const IdSet& p) { return check_safe(subset_of(sigma, p)).holds; });
}

} // namespace

TerminationGuarantee data_dependent_guarantee(const Instance& inst, std::span<const Constraint> sigma,
                                              FiringOracle& oracle) {
    TerminationGuarantee g;
    g.part = part(sigma, oracle);
    if (all_safe(sigma, g.part)) {
        g.level = GuaranteeLevel::AllInstances;
        g.relevant = ids_of(sigma);
        return g;
    }
    // Over the empty instance only body-less TGDs can fire first; with none
    // of them nothing ever fires.
    if (inst.empty()) {
        const bool any = std::any_of(sigma.begin(), sigma.end(), [](const Constraint& c) { return c.body.empty(); });
        if (!any) {
            g.level = GuaranteeLevel::ThisInstance;
            g.part.clear();
        }
        return g;
    }
    g.irrelevance = irrelevant_constraints(inst, sigma, oracle);
    g.relevant = g.irrelevance->relevant;
    const auto relevant = subset_of(sigma, g.relevant);
    g.part = part(relevant, oracle);
    if (all_safe(relevant, g.part)) g.level = GuaranteeLevel::ThisInstance;
    return g;
}

TerminationGuarantee data_dependent_guarantee(const Instance& inst, std::span<const Constraint> sigma) {
    FiringOracle oracle;
    return data_dependent_guarantee(inst, sigma, oracle);
}

Fixture appendix_g(std::size_t k) {
    if (k < 2) throw Error("the appendix-g family needs k >= 2");
    const std::string r = "R_" + std::to_string(k);
    auto x = [](std::size_t i) { return Term::variable("X" + std::to_string(i)); };

    Atom body_r{r, {}};
    for (std::size_t i = 1; i <= k; ++i) body_r.args.push_back(x(i));
    Atom head{r, {Term::variable("Y")}};
    for (std::size_t i = 1; i < k; ++i) head.args.push_back(x(i));

    Fixture f;
    f.constraints.push_back(Constraint::tgd(0, {Atom{"S", {x(k)}}, body_r}, {head}));
    Atom fact{r, {}};
    for (std::size_t i = 1; i <= k; ++i) {
        const Term c = Term::constant("c" + std::to_string(i));
        f.instance.insert(Atom{"S", {c}});
        fact.args.push_back(c);
    }
    f.instance.insert(fact);
    return f;
}

} // namespace chaseterm
