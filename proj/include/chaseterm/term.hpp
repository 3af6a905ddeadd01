#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace chaseterm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class TermKind : std::uint8_t { Constant, Null, Variable };

// A constant, labeled null or variable. The three kinds are disjoint
// namespaces: two terms are equal iff kind and name agree. Nulls carry a
// creation index (0 for nulls of an input instance) that orders them.
struct Term {
    TermKind kind = TermKind::Constant;
    std::string name;
    std::uint64_t creation = 0;

    static Term constant(std::string name) { return {TermKind::Constant, std::move(name), 0}; }
    static Term null(std::string name, std::uint64_t creation = 0) {
        return {TermKind::Null, std::move(name), creation};
    }
    static Term variable(std::string name) { return {TermKind::Variable, std::move(name), 0}; }

    bool is_constant() const { return kind == TermKind::Constant; }
    bool is_null() const { return kind == TermKind::Null; }
    bool is_variable() const { return kind == TermKind::Variable; }
    bool is_ground() const { return kind != TermKind::Variable; }

    friend bool operator==(const Term& a, const Term& b) { return a.kind == b.kind && a.name == b.name; }
    // Global value order: constants by name, then nulls by creation index
    // (ties by name), then variables by name.
    friend bool operator<(const Term& a, const Term& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.kind == TermKind::Null && a.creation != b.creation) return a.creation < b.creation;
        return a.name < b.name;
    }
};

// Constants print bare, nulls with a leading '?', variables bare.
std::string to_string(const Term& t);

struct Position {
    std::string relation;
    std::size_t index = 1; // 1-based

    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;
};

using PositionSet = std::set<Position>;

std::string to_string(const Position& p);
std::string to_string(const PositionSet& ps);

struct Atom {
    std::string relation;
    std::vector<Term> args;

    std::size_t arity() const { return args.size(); }
    bool is_ground() const;

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.relation == b.relation && a.args == b.args;
    }
    friend bool operator<(const Atom& a, const Atom& b) {
        if (a.relation != b.relation) return a.relation < b.relation;
        return a.args < b.args;
    }
};

std::string to_string(const Atom& a);

} // namespace chaseterm
