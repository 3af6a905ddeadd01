#include "chaseterm/firing.hpp"
#include "chaseterm/chase.hpp"

#include <algorithm>

namespace chaseterm {

namespace {

// Creation indices of the nulls a witness step invents; far above the pool.
constexpr std::uint64_t kStepNullBase = 1000000;

bool nulls_within(const Instance& inst, const PositionSet& allowed) {
    for (const auto& f : inst)
        for (std::size_t i = 0; i < f.args.size(); ++i)
            if (f.args[i].is_null() && !allowed.contains({f.relation, i + 1})) return false;
    return true;
}

bool covers(const Assignment& a, const Constraint& c) {
    for (const auto& v : c.universal)
        if (!a.contains(v)) return false;
    return true;
}

bool null_in_head(const Constraint& beta, const Assignment& b) {
    for (const auto& v : beta.frontier())
        if (b.at(v).is_null()) return true;
    return false;
}

bool subset(const PositionSet& a, const PositionSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

class WitnessSearch {
public:
    WitnessSearch(const Constraint& alpha, const Constraint& beta, const PositionSet& positions, FiringMode mode,
                  const FiringOptions& opts)
        : alpha_(alpha), beta_(beta), positions_(positions), mode_(mode), opts_(opts) {
        need_positions_ = mode == FiringMode::PrecedesP;
        need_head_null_ = mode == FiringMode::PrecedesP || opts.precedes_requires_null_in_head;
        std::set<Term> consts;
        for (const auto* c : {&alpha, &beta}) {
            for (const auto& a : c->body)
                for (const auto& t : a.args)
                    if (t.is_constant()) consts.insert(t);
            for (const auto& a : c->head)
                for (const auto& t : a.args)
                    if (t.is_constant()) consts.insert(t);
        }
        constants_.assign(consts.begin(), consts.end());
    }

    std::optional<FiringWitness> run() {
        // A body-less beta satisfied before the step stays satisfied: TGD
        // steps only add facts and EGD steps map the instance homomorphically.
        if (beta_.body.empty()) return std::nullopt;
        Assignment a;
        std::vector<Term> used;
        assign_alpha(0, a, used);
        return std::move(found_);
    }

private:
    Term fresh_constant() { return Term::constant("_c" + std::to_string(++symbols_)); }
    Term fresh_null() {
        ++symbols_;
        return Term::null("_v" + std::to_string(symbols_), symbols_);
    }

    bool alpha_null_allowed(const std::string& var) const {
        // The kind of alpha's values only matters for null placement, the
        // null-in-head condition and EGD clashes.
        if (alpha_.is_tgd() && !need_positions_ && !need_head_null_) return false;
        return !need_positions_ || subset(positions_of(var, alpha_.body), positions_);
    }

    // Restricted-growth enumeration of alpha's assignment: each variable
    // takes a value already in use or a new pool symbol.
    void assign_alpha(std::size_t i, Assignment& a, std::vector<Term>& used) {
        if (found_) return;
        if (i == alpha_.universal.size()) {
            try_alpha(a);
            return;
        }
        const std::string& var = alpha_.universal[i];
        auto take = [&](const Term& t, bool is_new) {
            a[var] = t;
            if (is_new) used.push_back(t);
            assign_alpha(i + 1, a, used);
            if (is_new) used.pop_back();
            a.erase(var);
        };
        if (alpha_null_allowed(var)) take(fresh_null(), true);
        if (found_) return;
        take(fresh_constant(), true);
        for (std::size_t j = 0; j < used.size() && !found_; ++j) take(Term(used[j]), false);
        for (const auto& c : constants_) {
            if (found_) return;
            if (std::find(used.begin(), used.end(), c) == used.end()) take(c, true);
        }
    }

    void try_alpha(const Assignment& a) {
        Instance base;
        for (const auto& f : instantiate(alpha_.body, a)) base.insert(f);
        base.set_next_null(kStepNullBase);
        if (satisfies(base, alpha_, a)) return;
        auto step = chase_step(base, alpha_, a);
        if (std::holds_alternative<StepFailure>(step)) return;
        auto& applied = std::get<AppliedStep>(step);

        alpha_assignment_ = &a;
        base_ = &base;
        after_ = &applied.instance;
        record_ = &applied.record;
        std::vector<const Atom*> targets;
        for (const auto& f : applied.instance) targets.push_back(&f);
        targets_ = std::move(targets);

        Assignment b;
        std::vector<std::size_t> free;
        match_beta(0, b, free, false);
    }

    void match_beta(std::size_t i, Assignment& b, std::vector<std::size_t>& free, bool any_new) {
        if (found_) return;
        if (i == beta_.body.size()) {
            // Against a TGD step, beta's body must use a fact the step added.
            if (alpha_.is_tgd() && !any_new) return;
            complete_beta(b, free);
            return;
        }
        const Atom& pattern = beta_.body[i];
        for (const Atom* fact : targets_) {
            if (found_) return;
            if (fact->relation != pattern.relation || fact->args.size() != pattern.args.size()) continue;
            std::vector<std::string> bound;
            bool ok = true;
            for (std::size_t k = 0; k < pattern.args.size() && ok; ++k) {
                const Term& p = pattern.args[k];
                const Term& v = fact->args[k];
                if (!p.is_variable()) {
                    ok = p == v;
                } else if (auto it = b.find(p.name); it != b.end()) {
                    ok = it->second == v;
                } else {
                    b.emplace(p.name, v);
                    bound.push_back(p.name);
                }
            }
            if (ok) match_beta(i + 1, b, free, any_new || !base_->contains(*fact));
            for (const auto& n : bound) b.erase(n);
        }
        if (found_) return;
        free.push_back(i);
        match_beta(i + 1, b, free, any_new);
        free.pop_back();
    }

    PositionSet free_positions(const std::string& var, const std::vector<std::size_t>& free) const {
        std::vector<Atom> atoms;
        for (auto i : free) atoms.push_back(beta_.body[i]);
        return positions_of(var, atoms);
    }

    void complete_beta(Assignment& b, const std::vector<std::size_t>& free) {
        std::vector<std::string> unbound;
        for (const auto& v : beta_.universal)
            if (!b.contains(v)) unbound.push_back(v);

        if (alpha_.is_tgd()) {
            // Against a TGD step, a fresh symbol per unbound variable is never
            // worse than reusing a value: any witness maps onto this one.
            const auto frontier = beta_.frontier();
            for (const auto& v : unbound) {
                const bool in_head = std::find(frontier.begin(), frontier.end(), v) != frontier.end();
                const bool null_ok =
                    in_head && need_head_null_ && (!need_positions_ || subset(free_positions(v, free), positions_));
                b[v] = null_ok ? fresh_null() : fresh_constant();
            }
            build(b, free);
            for (const auto& v : unbound) b.erase(v);
            return;
        }
        std::vector<Term> pool;
        for (const auto& t : base_->domain()) pool.push_back(t);
        assign_free(0, unbound, b, free, pool);
    }

    void assign_free(std::size_t i, const std::vector<std::string>& vars, Assignment& b,
                     const std::vector<std::size_t>& free, std::vector<Term>& pool) {
        if (found_) return;
        if (i == vars.size()) {
            build(b, free);
            return;
        }
        const std::string& var = vars[i];
        auto take = [&](const Term& t, bool is_new) {
            b[var] = t;
            if (is_new) pool.push_back(t);
            assign_free(i + 1, vars, b, free, pool);
            if (is_new) pool.pop_back();
            b.erase(var);
        };
        if (!need_positions_ || subset(free_positions(var, free), positions_)) take(fresh_null(), true);
        if (found_) return;
        take(fresh_constant(), true);
        for (std::size_t j = 0; j < pool.size() && !found_; ++j) take(Term(pool[j]), false);
        for (const auto& c : constants_) {
            if (found_) return;
            if (std::find(pool.begin(), pool.end(), c) == pool.end()) take(c, true);
        }
    }

    void build(const Assignment& b, const std::vector<std::size_t>& free) {
        std::vector<Atom> extra;
        for (auto i : free) extra.push_back(instantiate(beta_.body[i], b));
        std::set<Term> invented;
        for (const auto& fn : record_->fresh_nulls) invented.insert(fn.null);
        for (const auto& f : extra)
            for (const auto& t : f.args)
                if (invented.contains(t)) return;

        if (alpha_.is_egd()) {
            // Facts of I may still carry the value the EGD merges away.
            const auto& [survivor, removed] = *record_->merged;
            std::vector<std::pair<std::size_t, std::size_t>> slots;
            for (std::size_t f = 0; f < extra.size(); ++f)
                for (std::size_t k = 0; k < extra[f].args.size(); ++k)
                    if (extra[f].args[k] == survivor) slots.emplace_back(f, k);
            if (slots.size() > 12) slots.resize(12);
            for (std::uint32_t mask = 0; mask < (1u << slots.size()) && !found_; ++mask) {
                auto variant = extra;
                for (std::size_t s = 0; s < slots.size(); ++s)
                    if (mask & (1u << s)) variant[slots[s].first].args[slots[s].second] = removed;
                check(b, variant);
            }
            return;
        }
        check(b, extra);
    }

    void check(const Assignment& b, const std::vector<Atom>& extra) {
        FiringWitness w;
        w.before = *base_;
        for (const auto& f : extra) w.before.insert(f);
        w.before.set_next_null(kStepNullBase);
        w.alpha_assignment = *alpha_assignment_;
        w.beta_assignment = b;
        // The extra facts may already satisfy alpha's head.
        if (satisfies(w.before, alpha_, w.alpha_assignment)) return;
        auto step = chase_step(w.before, alpha_, w.alpha_assignment);
        if (!std::holds_alternative<AppliedStep>(step)) return;
        w.after = std::get<AppliedStep>(std::move(step)).instance;
        if (verify_firing_witness(alpha_, beta_, positions_, mode_, w, opts_)) found_ = std::move(w);
    }

    const Constraint& alpha_;
    const Constraint& beta_;
    const PositionSet& positions_;
    FiringMode mode_;
    const FiringOptions& opts_;
    bool need_positions_ = false;
    bool need_head_null_ = false;
    std::vector<Term> constants_;
    std::uint64_t symbols_ = 0;

    const Assignment* alpha_assignment_ = nullptr;
    const Instance* base_ = nullptr;
    const Instance* after_ = nullptr;
    const ChaseStepRecord* record_ = nullptr;
    std::vector<const Atom*> targets_;

    std::optional<FiringWitness> found_;
};

} // namespace

bool verify_firing_witness(const Constraint& alpha, const Constraint& beta, const PositionSet& null_positions,
                           FiringMode mode, const FiringWitness& w, const FiringOptions& opts) {
    if (!covers(w.alpha_assignment, alpha) || !covers(w.beta_assignment, beta)) return false;
    if (mode == FiringMode::PrecedesP && !nulls_within(w.before, null_positions)) return false;
    if (satisfies(w.before, alpha, w.alpha_assignment)) return false;
    Instance start = w.before;
    auto step = chase_step(start, alpha, w.alpha_assignment);
    if (!std::holds_alternative<AppliedStep>(step)) return false;
    const Instance& after = std::get<AppliedStep>(step).instance;
    if (!(after == w.after)) return false;
    if (!satisfies(w.before, beta, w.beta_assignment)) return false;
    if (satisfies(after, beta, w.beta_assignment)) return false;
    const bool need_head_null = mode == FiringMode::PrecedesP || opts.precedes_requires_null_in_head;
    if (need_head_null && !null_in_head(beta, w.beta_assignment)) return false;
    return true;
}

std::optional<FiringWitness> FiringOracle::can_cause(const Constraint& alpha, const Constraint& beta,
                                                     const PositionSet& null_positions, FiringMode mode) {
    Key key{to_string(alpha), to_string(beta), mode == FiringMode::PrecedesP ? null_positions : PositionSet{}, mode};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    ++searches_;
    auto result = WitnessSearch(alpha, beta, null_positions, mode, opts_).run();
    cache_.emplace(std::move(key), result);
    return result;
}

std::optional<FiringWitness> can_cause(const Constraint& alpha, const Constraint& beta,
                                       const PositionSet& null_positions, FiringMode mode, const FiringOptions& opts) {
    FiringOracle oracle(opts);
    return oracle.can_cause(alpha, beta, null_positions, mode);
}

} // namespace chaseterm
