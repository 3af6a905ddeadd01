#include "common.hpp"
#include "../support/generators.hpp"

using namespace testing;

TEST_SUITE("syntax") {

TEST_CASE("constraint statements") {
    auto doc = parse_constraints("# comment\nS(X), E(X,Y) -> E(Y,X).\ntrue -> S(X), E(X,Y).\nR(X,Y), R(X,Z) -> Y = Z.\n");
    REQUIRE(doc.constraints.size() == 3);
    CHECK(to_string(doc.constraints[0]) == "S(X), E(X,Y) -> E(Y,X).");
    CHECK(doc.constraints[1].body.empty());
    CHECK(doc.constraints[1].existential == std::vector<std::string>{"X", "Y"});
    CHECK(doc.constraints[2].is_egd());
    CHECK(doc.constraints[2].equated == std::pair<std::string, std::string>{"Y", "Z"});
    CHECK(doc.spans[1].line == 3);
    CHECK(doc.spans[1].column == 1);
    for (std::size_t i = 0; i < 3; ++i) CHECK(doc.constraints[i].id == i);
}

TEST_CASE("constants in constraints and uppercase relations") {
    auto doc = parse_constraints("rail(c1, X, Y) -> R(X, 42).");
    REQUIRE(doc.constraints.size() == 1);
    CHECK(doc.constraints[0].body[0].args[0] == c("c1"));
    CHECK(doc.constraints[0].head[0].relation == "R");
    CHECK(doc.constraints[0].head[0].args[1] == c("42"));
}

TEST_CASE("constraint errors carry a location") {
    auto fails = [](std::string_view text, std::size_t line, std::size_t column, const char* fragment) {
        try {
            parse_constraints(text);
            FAIL("no error for " << text);
        } catch (const ParseError& e) {
            CHECK(e.at.line == line);
            CHECK(e.at.column == column);
            CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, std::string(e.what()));
        }
    };
    fails("S(X) -> T(X)", 1, 13, "expected '.'");
    fails("S(X) -> T(X).\nS(X,Y) -> T(X).", 2, 1, "arity");
    fails("S(X) -> X = Y.", 1, 1, "does not occur in the body");
    fails("S(X) -> .", 1, 9, "empty head");
    fails("S(X) => T(X).", 1, 6, "expected '->'");
    fails("S(X) ~> T(X).", 1, 6, "unexpected character");
    fails("S(?x) -> T(X).", 1, 3, "labeled null");
    fails("S(X) -> a = X.", 1, 11, "expected '('");
}

TEST_CASE("instances") {
    auto q1 = parse_instance("rail(c1,?x1,?y1). fly(?x1,?x2,?y2).");
    CHECK(q1.size() == 2);
    CHECK(q1.contains(atom("rail", {c("c1"), n("x1"), n("y1")})));
    CHECK(parse_instance("S(a).") == Instance{atom("S", {c("a")})});

    auto q2 = parse_instance("rail(c1,X1,Y1). fly(X1,X2,Y2). fly(X2,X1,Y2). rail(X1,c1,Y1).", true);
    CHECK(q2.size() == 4);
    CHECK(q2.nulls().size() == 4);
    CHECK(parse_instance("S(a), S(b)") .size() == 2);

    CHECK_THROWS_AS(parse_instance("S(X)."), ParseError);
    CHECK_THROWS_AS(parse_instance("S(a). S(a,b)."), ParseError);
    CHECK_THROWS_AS(parse_instance("S(a) T(b)."), ParseError);
}

TEST_CASE("instances and constraints share one schema") {
    Schema s;
    parse_constraints("E(X,Y) -> E(Y,X).", &s);
    CHECK_THROWS_AS(parse_instance("E(a).", false, &s), ParseError);
}

TEST_CASE("printing round-trips") {
    gen::Rng rng(47);
    for (int round = 0; round < 300; ++round) {
        auto sigma = gen::random_constraints(rng);
        const std::string text = print_constraints(sigma);
        auto back = parse_constraints(text).constraints;
        CHECK(back == sigma);
        CHECK(print_constraints(back) == text);

        auto inst = gen::random_instance(rng, sigma, 8, 4);
        CHECK(parse_instance(print_instance(inst)) == inst);
    }
    for (const char* f : {"ex1.rules", "ex3.rules", "fig1.rules", "wa.rules"}) {
        auto sigma = rules(f);
        CHECK(parse_constraints(print_constraints(sigma)).constraints == sigma);
    }
}

}
