#include "chaseterm/syntax.hpp"

#include <cctype>

namespace chaseterm {

ParseError::ParseError(SourceSpan where, const std::string& message)
    : Error("line " + std::to_string(where.line) + ", column " + std::to_string(where.column) + ": " + message),
      at(where) {}

namespace {

enum class Tok { Ident, Null, LParen, RParen, Comma, Dot, Arrow, Equals, End };

struct Token {
    Tok kind;
    std::string text;
    SourceSpan at;
};

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Null: return "'?" + t.text + "'";
    default: return "'" + t.text + "'";
    }
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip();
        const SourceSpan at{line_, col_};
        if (i_ >= text_.size()) return {Tok::End, "", at};
        const char c = text_[i_];
        if (ident_char(c)) return {Tok::Ident, word(), at};
        if (c == '?') {
            advance();
            if (i_ >= text_.size() || !ident_char(text_[i_])) throw ParseError(at, "expected a null name after '?'");
            return {Tok::Null, word(), at};
        }
        if (c == '-' && i_ + 1 < text_.size() && text_[i_ + 1] == '>') {
            advance();
            advance();
            return {Tok::Arrow, "->", at};
        }
        advance();
        switch (c) {
        case '(': return {Tok::LParen, "(", at};
        case ')': return {Tok::RParen, ")", at};
        case ',': return {Tok::Comma, ",", at};
        case '.': return {Tok::Dot, ".", at};
        case '=': return {Tok::Equals, "=", at};
        default: throw ParseError(at, std::string("unexpected character '") + c + "'");
        }
    }

private:
    void advance() {
        if (text_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }
    void skip() {
        while (i_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[i_]))) {
                advance();
            } else if (text_[i_] == '#') {
                while (i_ < text_.size() && text_[i_] != '\n') advance();
            } else {
                break;
            }
        }
    }
    std::string word() {
        std::string out;
        while (i_ < text_.size() && ident_char(text_[i_])) {
            out += text_[i_];
            advance();
        }
        return out;
    }

    std::string_view text_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

bool is_variable_name(const std::string& s) { return std::isupper(static_cast<unsigned char>(s[0])); }

class Parser {
public:
    Parser(std::string_view text, Schema* schema) : lex_(text), schema_(schema ? schema : &own_) { tok_ = lex_.next(); }

    ConstraintDocument constraints() {
        ConstraintDocument doc;
        while (tok_.kind != Tok::End) {
            const SourceSpan start = tok_.at;
            doc.constraints.push_back(statement(doc.constraints.size(), start));
            doc.spans.push_back(start);
        }
        return doc;
    }

    Instance instance(bool as_query) {
        Instance inst;
        while (tok_.kind != Tok::End) {
            if (tok_.kind == Tok::Dot || tok_.kind == Tok::Comma) {
                shift();
                continue;
            }
            const SourceSpan at = tok_.at;
            Atom a = atom([&](const Token& t) {
                if (t.kind == Tok::Null) return Term::null(t.text);
                if (is_variable_name(t.text)) {
                    if (!as_query) throw ParseError(t.at, "variable '" + t.text + "' in instance (use --as-query)");
                    return Term::null(t.text);
                }
                return Term::constant(t.text);
            });
            check_arity(a, at);
            inst.insert(std::move(a));
            if (tok_.kind != Tok::Dot && tok_.kind != Tok::Comma && tok_.kind != Tok::End)
                throw ParseError(tok_.at, "expected '.' or ',' after fact, got " + describe(tok_));
        }
        return inst;
    }

private:
    void shift() { tok_ = lex_.next(); }

    Token expect(Tok kind, const char* what) {
        if (tok_.kind != kind) throw ParseError(tok_.at, std::string("expected ") + what + ", got " + describe(tok_));
        Token t = tok_;
        shift();
        return t;
    }

    void check_arity(const Atom& a, SourceSpan at) {
        try {
            schema_->check(a);
        } catch (const Error& e) {
            throw ParseError(at, e.what());
        }
    }

    template <class MakeTerm>
    Atom atom(MakeTerm&& make) {
        Token name = expect(Tok::Ident, "a relation name");
        Atom a{name.text, {}};
        expect(Tok::LParen, "'('");
        if (tok_.kind != Tok::RParen) {
            for (;;) {
                if (tok_.kind != Tok::Ident && tok_.kind != Tok::Null)
                    throw ParseError(tok_.at, "expected a term, got " + describe(tok_));
                a.args.push_back(make(tok_));
                shift();
                if (tok_.kind != Tok::Comma) break;
                shift();
            }
        }
        expect(Tok::RParen, "')'");
        return a;
    }

    Atom rule_atom() {
        const SourceSpan at = tok_.at;
        Atom a = atom([](const Token& t) {
            if (t.kind == Tok::Null) throw ParseError(t.at, "labeled null '?" + t.text + "' in a constraint");
            return is_variable_name(t.text) ? Term::variable(t.text) : Term::constant(t.text);
        });
        check_arity(a, at);
        return a;
    }

    Constraint statement(std::size_t id, SourceSpan start) {
        std::vector<Atom> body;
        if (tok_.kind == Tok::Ident && tok_.text == "true") {
            shift();
        } else {
            for (;;) {
                body.push_back(rule_atom());
                if (tok_.kind != Tok::Comma) break;
                shift();
            }
        }
        expect(Tok::Arrow, "'->'");

        try {
            if (tok_.kind == Tok::Ident && is_variable_name(tok_.text)) {
                // Either an equality or an atom over a relation named in uppercase.
                Token first = tok_;
                shift();
                if (tok_.kind == Tok::Equals) {
                    shift();
                    Token second = expect(Tok::Ident, "a variable");
                    if (!is_variable_name(second.text))
                        throw ParseError(second.at, "an equality must relate two variables");
                    expect(Tok::Dot, "'.'");
                    return Constraint::egd(id, std::move(body), first.text, second.text);
                }
                std::vector<Atom> head{atom_after_name(first)};
                return finish_tgd(id, std::move(body), std::move(head));
            }
            if (tok_.kind == Tok::Dot) throw ParseError(tok_.at, "TGD with empty head");
            std::vector<Atom> head{rule_atom()};
            return finish_tgd(id, std::move(body), std::move(head));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(start, e.what());
        }
    }

    Atom atom_after_name(const Token& name) {
        // Re-enter atom parsing with the relation name already consumed.
        Atom a{name.text, {}};
        expect(Tok::LParen, "'(' or '='");
        if (tok_.kind != Tok::RParen) {
            for (;;) {
                const Token t = expect(Tok::Ident, "a term");
                a.args.push_back(is_variable_name(t.text) ? Term::variable(t.text) : Term::constant(t.text));
                if (tok_.kind != Tok::Comma) break;
                shift();
            }
        }
        expect(Tok::RParen, "')'");
        check_arity(a, name.at);
        return a;
    }

    Constraint finish_tgd(std::size_t id, std::vector<Atom> body, std::vector<Atom> head) {
        while (tok_.kind == Tok::Comma) {
            shift();
            head.push_back(rule_atom());
        }
        expect(Tok::Dot, "'.'");
        return Constraint::tgd(id, std::move(body), std::move(head));
    }

    Lexer lex_;
    Token tok_;
    Schema own_;
    Schema* schema_;
};

} // namespace

ConstraintDocument parse_constraints(std::string_view text, Schema* schema) {
    return Parser(text, schema).constraints();
}

Instance parse_instance(std::string_view text, bool as_query, Schema* schema) {
    return Parser(text, schema).instance(as_query);
}

std::string print_constraints(std::span<const Constraint> sigma) {
    std::string out;
    for (const auto& c : sigma) out += to_string(c) + "\n";
    return out;
}

std::string print_instance(const Instance& inst) { return to_string(inst); }

} // namespace chaseterm
