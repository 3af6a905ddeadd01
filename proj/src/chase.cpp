#include "chaseterm/chase.hpp"
#include "chaseterm/monitor.hpp"

#include <random>

namespace chaseterm {

std::string to_string(ChaseOutcome o) {
    switch (o) {
    case ChaseOutcome::Terminated: return "terminated";
    case ChaseOutcome::Failed: return "failed";
    case ChaseOutcome::Aborted: return "aborted";
    }
    return "?";
}

std::string to_string(AbortReason r) { return r == AbortReason::StepLimit ? "step-limit" : "k-cyclic"; }

std::variant<ChaseStepRecord, StepFailure> apply_step(Instance& inst, const Constraint& c, const Assignment& a,
                                                       std::size_t step_index) {
    if (satisfies(inst, c, a)) throw Error("chase step on a satisfied assignment of " + c.label);

    ChaseStepRecord rec;
    rec.step_index = step_index;
    rec.constraint_id = c.id;
    for (const auto& v : c.universal) rec.assignment.emplace(v, a.at(v));

    if (c.is_egd()) {
        const Term& u = a.at(c.equated.first);
        const Term& v = a.at(c.equated.second);
        if (u.is_constant() && v.is_constant()) return StepFailure{u, v};
        // Constants before nulls, older nulls before newer ones.
        const Term survivor = v < u ? v : u;
        const Term removed = v < u ? u : v;
        inst.replace(removed, survivor);
        rec.merged = {survivor, removed};
        rec.next_null_after = inst.next_null();
        return rec;
    }

    Assignment ext = rec.assignment;
    std::vector<Term> fresh;
    for (const auto& v : c.existential) {
        fresh.push_back(inst.fresh_null());
        ext.emplace(v, fresh.back());
    }
    for (const auto& f : instantiate(c.head, ext))
        if (inst.insert(f)) rec.added_facts.push_back(f);
    for (const auto& n : fresh) {
        FreshNull fn{n, {}};
        for (const auto& f : rec.added_facts)
            for (std::size_t i = 0; i < f.args.size(); ++i)
                if (f.args[i] == n) fn.positions.insert({f.relation, i + 1});
        rec.fresh_nulls.push_back(std::move(fn));
    }
    rec.next_null_after = inst.next_null();
    return rec;
}

std::variant<AppliedStep, StepFailure> chase_step(const Instance& inst, const Constraint& c, const Assignment& a) {
    Instance next = inst;
    auto r = apply_step(next, c, a);
    if (auto* f = std::get_if<StepFailure>(&r)) return *f;
    return AppliedStep{std::move(next), std::get<ChaseStepRecord>(std::move(r))};
}

Instance replay(const Instance& initial, std::span<const ChaseStepRecord> steps) {
    Instance inst = initial;
    for (const auto& s : steps) {
        if (s.merged) {
            inst.replace(s.merged->second, s.merged->first);
        } else {
            for (const auto& f : s.added_facts) inst.insert(f);
        }
        inst.set_next_null(std::max(inst.next_null(), s.next_null_after));
    }
    return inst;
}

namespace {

struct Pick {
    std::size_t index;
    Assignment assignment;
};

class Selector {
public:
    Selector(std::span<const Constraint> sigma, const ChasePolicy& policy) : sigma_(sigma), policy_(policy) {
        rng_.seed(policy.seed);
    }

    std::optional<Pick> next(const Instance& inst) {
        if (sigma_.empty()) return std::nullopt;
        if (policy_.order == ChasePolicy::Order::Deterministic) {
            for (std::size_t j = 0; j < sigma_.size(); ++j) {
                const std::size_t idx = (cursor_ + j) % sigma_.size();
                auto v = find_violations(inst, sigma_[idx]);
                if (v.empty()) continue;
                cursor_ = idx + 1;
                return Pick{idx, std::move(v.front())};
            }
            return std::nullopt;
        }
        std::vector<Pick> all;
        for (std::size_t idx = 0; idx < sigma_.size(); ++idx)
            for (auto& a : find_violations(inst, sigma_[idx])) all.push_back({idx, std::move(a)});
        if (all.empty()) return std::nullopt;
        std::uniform_int_distribution<std::size_t> dist(0, all.size() - 1);
        return std::move(all[dist(rng_)]);
    }

private:
    std::span<const Constraint> sigma_;
    const ChasePolicy& policy_;
    std::size_t cursor_ = 0;
    std::mt19937_64 rng_;
};

} // namespace

ChaseResult chase(const Instance& inst, std::span<const Constraint> sigma, const ChasePolicy& policy) {
    ChaseResult r;
    r.instance = inst;
    std::shared_ptr<MonitorGraph> monitor;
    if (policy.monitor_k) {
        if (*policy.monitor_k == 0) throw Error("monitor k must be at least 1");
        monitor = std::make_shared<MonitorGraph>();
        r.monitor = monitor;
        r.k = *policy.monitor_k;
    }

    Selector selector(sigma, policy);
    while (true) {
        auto pick = selector.next(r.instance);
        if (!pick) {
            r.outcome = ChaseOutcome::Terminated;
            break;
        }
        if (policy.max_steps && r.steps.size() >= *policy.max_steps) {
            r.outcome = ChaseOutcome::Aborted;
            r.abort_reason = AbortReason::StepLimit;
            break;
        }
        const Constraint& c = sigma[pick->index];
        std::set<Atom> body;
        if (monitor) body = instantiate(c.body, pick->assignment);
        auto step = apply_step(r.instance, c, pick->assignment, r.steps.size());
        if (auto* f = std::get_if<StepFailure>(&step)) {
            r.outcome = ChaseOutcome::Failed;
            r.failed_step = r.steps.size();
            r.failure = *f;
            break;
        }
        r.steps.push_back(std::get<ChaseStepRecord>(std::move(step)));
        if (monitor) {
            monitor->update(r.steps.back(), body);
            if (monitor->is_k_cyclic(r.k)) {
                r.outcome = ChaseOutcome::Aborted;
                r.abort_reason = AbortReason::KCyclic;
                if (auto chain = monitor->k_cyclic_chain(r.k))
                    r.cyclic_chain = std::make_shared<MonitorChain>(std::move(*chain));
                break;
            }
        }
    }
    return r;
}

} // namespace chaseterm
