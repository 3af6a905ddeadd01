#pragma once

#include "chaseterm/model.hpp"

namespace chaseterm {

struct SourceSpan {
    std::size_t line = 1;   // 1-based
    std::size_t column = 1; // 1-based
};

// Parse errors carry the location of the offending token.
class ParseError : public Error {
public:
    ParseError(SourceSpan at, const std::string& message);
    SourceSpan at;
};

struct ConstraintDocument {
    std::vector<Constraint> constraints; // ids follow file order
    std::vector<SourceSpan> spans;       // start of each statement
};

// Statements are `body -> head.` or `body -> X = Y.`; `true` is the empty
// body, `#` starts a comment. Identifiers starting with an uppercase letter
// are variables, all others constants. Relation arities are recorded in
// `schema` and must agree throughout.
ConstraintDocument parse_constraints(std::string_view text, Schema* schema = nullptr);

// Ground facts separated by `.` or `,`; `?name` is a labeled null. With
// `as_query`, uppercase identifiers are read as labeled nulls too.
Instance parse_instance(std::string_view text, bool as_query = false, Schema* schema = nullptr);

// One statement per line; parse_constraints reads it back unchanged.
std::string print_constraints(std::span<const Constraint> sigma);
std::string print_instance(const Instance& inst);

} // namespace chaseterm
