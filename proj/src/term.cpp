#include "chaseterm/term.hpp"

namespace chaseterm {

std::string to_string(const Term& t) {
    if (t.kind == TermKind::Null) return "?" + t.name;
    return t.name;
}

std::string to_string(const Position& p) { return p.relation + "^" + std::to_string(p.index); }

std::string to_string(const PositionSet& ps) {
    std::string out = "{";
    bool first = true;
    for (const auto& p : ps) {
        if (!first) out += ",";
        out += to_string(p);
        first = false;
    }
    return out + "}";
}

bool Atom::is_ground() const {
    for (const auto& t : args)
        if (t.is_variable()) return false;
    return true;
}

std::string to_string(const Atom& a) {
    std::string out = a.relation + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ",";
        out += to_string(a.args[i]);
    }
    return out + ")";
}

} // namespace chaseterm
