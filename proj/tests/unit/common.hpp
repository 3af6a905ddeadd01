#pragma once

#include "chaseterm/export.hpp"
#include "chaseterm/syntax.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

namespace testing {

using namespace chaseterm;

inline std::string fixture_path(const std::string& name) { return std::string(CHASETERM_FIXTURES) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name));
    REQUIRE_MESSAGE(in, "missing fixture " << name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<Constraint> rules(const std::string& name) { return parse_constraints(read_fixture(name)).constraints; }
inline std::vector<Constraint> rules_text(std::string_view text) { return parse_constraints(text).constraints; }
inline Instance query(const std::string& name) { return parse_instance(read_fixture(name), true); }

inline Atom atom(const std::string& rel, std::initializer_list<Term> args) { return Atom{rel, args}; }
inline Term c(const std::string& n) { return Term::constant(n); }
inline Term n(const std::string& n, std::uint64_t creation = 0) { return Term::null(n, creation); }
inline Term v(const std::string& n) { return Term::variable(n); }

inline PositionSet pos(std::initializer_list<std::pair<const char*, std::size_t>> ps) {
    PositionSet out;
    for (const auto& [r, i] : ps) out.insert({r, i});
    return out;
}

} // namespace testing
