#pragma once

#include "chaseterm/term.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>

namespace chaseterm {

// Variable name -> value.
using Assignment = std::map<std::string, Term>;

std::string to_string(const Assignment& a);

enum class ConstraintKind : std::uint8_t { Tgd, Egd };

// A tuple-generating dependency `body -> exists Y. head` or an
// equality-generating dependency `body -> X = Y`. Body and head are kept
// duplicate-free in first-occurrence order.
struct Constraint {
    std::size_t id = 0;
    std::string label;
    ConstraintKind kind = ConstraintKind::Tgd;
    std::vector<Atom> body;
    std::vector<Atom> head;                       // TGD only
    std::vector<std::string> universal;           // body variables, first occurrence order
    std::vector<std::string> existential;         // head variables not in body
    std::pair<std::string, std::string> equated;  // EGD only

    bool is_tgd() const { return kind == ConstraintKind::Tgd; }
    bool is_egd() const { return kind == ConstraintKind::Egd; }

    // Universal variables that occur in the head (for an EGD: the equated pair).
    std::vector<std::string> frontier() const;
    bool is_existential(const std::string& var) const;

    // Builds a TGD, deriving universal/existential variables and checking
    // the well-formedness conditions. Throws Error on violation.
    static Constraint tgd(std::size_t id, std::vector<Atom> body, std::vector<Atom> head,
                          std::string label = {});
    static Constraint egd(std::size_t id, std::vector<Atom> body, std::string left, std::string right,
                          std::string label = {});

    friend bool operator==(const Constraint& a, const Constraint& b) {
        return a.kind == b.kind && a.body == b.body && a.head == b.head && a.equated == b.equated;
    }
};

// Surface form, e.g. `S(X), E(X,Y) -> E(Y,X).`
std::string to_string(const Constraint& c);

std::string default_label(std::size_t id);

// Positions of the body (pos of a constraint), and of a set of constraints.
PositionSet body_positions(const Constraint& c);
PositionSet body_positions(std::span<const Constraint> sigma);

// Positions in which `var` occurs within `atoms`.
PositionSet positions_of(const std::string& var, std::span<const Atom> atoms);

// Relation arities, fixed on first use.
class Schema {
public:
    void check(const Atom& a); // throws Error on arity mismatch
    void check(const Constraint& c);
    std::optional<std::size_t> arity(const std::string& relation) const;
    const std::map<std::string, std::size_t>& relations() const { return arities_; }

private:
    std::map<std::string, std::size_t> arities_;
};

// A finite set of ground facts over constants and labeled nulls.
class Instance {
public:
    Instance() = default;
    explicit Instance(std::initializer_list<Atom> facts);

    bool insert(Atom fact);
    bool erase(const Atom& fact);
    bool contains(const Atom& fact) const { return facts_.contains(fact); }
    bool empty() const { return facts_.empty(); }
    std::size_t size() const { return facts_.size(); }
    const std::set<Atom>& facts() const { return facts_; }
    auto begin() const { return facts_.begin(); }
    auto end() const { return facts_.end(); }

    // Facts over one relation symbol, in fact order.
    template <class Fn>
    void for_each_fact(const std::string& relation, Fn&& fn) const {
        for (auto it = facts_.lower_bound(Atom{relation, {}}); it != facts_.end() && it->relation == relation; ++it)
            if (!fn(*it)) return;
    }

    std::set<Term> domain() const;
    std::set<Term> nulls() const;

    // Next creation index handed out by fresh_null().
    std::uint64_t next_null() const { return next_null_; }
    void set_next_null(std::uint64_t n) { next_null_ = n; }
    // Draws `n<index>`; its creation index exceeds every null seen so far.
    Term fresh_null();

    // Replaces `from` by `to` in every fact.
    void replace(const Term& from, const Term& to);

    friend bool operator==(const Instance& a, const Instance& b) { return a.facts_ == b.facts_; }

private:
    void note_null(const Term& t);

    std::set<Atom> facts_;
    std::uint64_t next_null_ = 1;
};

std::string to_string(const Instance& inst);

// Substitutes `a` into every atom; constants and nulls pass through. Throws
// Error naming the first unbound variable.
std::set<Atom> instantiate(std::span<const Atom> conjunction, const Assignment& a);
Atom instantiate(const Atom& atom, const Assignment& a);

// Enumerates every extension of `seed` that maps each atom of `atoms` into
// `target`. Variables are the only unknowns. The callback returns false to
// stop; the function returns false if it was stopped.
bool for_each_match(std::span<const Atom> atoms, const Instance& target, const Assignment& seed,
                    const std::function<bool(const Assignment&)>& fn);

// False iff the body instantiated under `a` lies in `inst` and the head
// cannot be satisfied (TGD) or the equated values differ (EGD).
bool satisfies(const Instance& inst, const Constraint& c, const Assignment& a);
bool satisfies(const Instance& inst, const Constraint& c);

// Violating assignments of the universal variables, sorted by value tuple.
std::vector<Assignment> find_violations(const Instance& inst, const Constraint& c);

using TermMapping = std::map<Term, Term>;

// A mapping of dom(source) that fixes constants and sends every source fact
// into `target`.
std::optional<TermMapping> find_homomorphism(const Instance& source, const Instance& target);
bool is_homomorphism(const TermMapping& h, const Instance& source, const Instance& target);
bool hom_equivalent(const Instance& a, const Instance& b);

} // namespace chaseterm
