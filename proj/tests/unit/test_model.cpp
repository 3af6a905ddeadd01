#include "common.hpp"
#include "../support/generators.hpp"
#include "../support/oracles.hpp"

using namespace testing;

TEST_SUITE("core") {

TEST_CASE("terms are equal by kind and name and ordered constants-first") {
    CHECK(c("a") == c("a"));
    CHECK_FALSE(c("a") == n("a"));
    CHECK_FALSE(n("a") == v("a"));
    CHECK(n("x", 3) == n("x", 7));
    CHECK(c("z") < n("a"));
    CHECK(n("b", 1) < n("a", 2));
    CHECK(n("a", 1) < n("b", 1));
    CHECK(to_string(n("x")) == "?x");
    CHECK(to_string(Position{"E", 2}) == "E^2");
}

TEST_CASE("constraint construction derives variables and validates") {
    auto a2 = Constraint::tgd(1, {atom("S", {v("X")}), atom("E", {v("X"), v("Y")})},
                              {atom("E", {v("Y"), v("Z")}), atom("E", {v("Z"), v("X")})});
    CHECK(a2.universal == std::vector<std::string>{"X", "Y"});
    CHECK(a2.existential == std::vector<std::string>{"Z"});
    CHECK(a2.frontier() == std::vector<std::string>{"X", "Y"});
    CHECK(a2.label == "a2");
    CHECK(to_string(a2) == "S(X), E(X,Y) -> E(Y,Z), E(Z,X).");

    CHECK_THROWS_WITH_AS(Constraint::tgd(0, {atom("S", {v("X")})}, {}), "TGD with empty head", Error);
    CHECK_THROWS_AS(Constraint::egd(0, {atom("S", {v("X")})}, "X", "Y"), Error);
    CHECK_THROWS_AS(Constraint::egd(0, {}, "X", "Y"), Error);
    CHECK_THROWS_AS(Constraint::tgd(0, {atom("S", {n("x")})}, {atom("S", {v("X")})}), Error);

    auto key = Constraint::egd(0, {atom("R", {v("X"), v("Y")}), atom("R", {v("X"), v("Z")})}, "Y", "Z");
    CHECK(key.frontier() == std::vector<std::string>{"Y", "Z"});
    CHECK(to_string(key) == "R(X,Y), R(X,Z) -> Y = Z.");
}

TEST_CASE("conjunctions are normalized to sets") {
    auto t = Constraint::tgd(0, {atom("S", {v("X")}), atom("S", {v("X")})}, {atom("T", {v("X")})});
    CHECK(t.body.size() == 1);
}

TEST_CASE("schema enforces arity") {
    Schema s;
    s.check(atom("E", {c("a"), c("b")}));
    CHECK_THROWS_AS(s.check(atom("E", {c("a")})), Error);
    CHECK(s.arity("E") == 2u);
}

TEST_CASE("instances hold ground facts and hand out fresh nulls") {
    Instance i{atom("E", {c("a"), n("n4")})};
    CHECK_THROWS_AS(i.insert(atom("E", {v("X"), c("a")})), Error);
    CHECK(i.nulls() == std::set<Term>{n("n4")});
    const Term fresh = i.fresh_null();
    CHECK(fresh.name == "n5");
    CHECK(fresh.creation > 0);
    i.replace(n("n4"), c("b"));
    CHECK(i.contains(atom("E", {c("a"), c("b")})));
    CHECK(i.size() == 1);
}

TEST_CASE("instantiate substitutes variables and reports unbound ones") {
    Assignment a{{"X", c("a")}, {"Y", c("b")}};
    CHECK(instantiate(std::vector{atom("E", {v("X"), v("Y")})}, a) == std::set<Atom>{atom("E", {c("a"), c("b")})});
    CHECK(instantiate(std::vector<Atom>{}, a).empty());
    Assignment b{{"X", c("a")}, {"Y", n("n1")}};
    CHECK(instantiate(std::vector{atom("S", {v("X")}), atom("E", {v("X"), v("Y")})}, b) ==
          std::set<Atom>{atom("S", {c("a")}), atom("E", {c("a"), n("n1")})});
    CHECK_THROWS_WITH(instantiate(atom("E", {v("X"), v("Q")}), a), doctest::Contains("Q"));
    // Constants pass through.
    CHECK(instantiate(atom("E", {c("k"), v("X")}), a) == atom("E", {c("k"), c("a")}));
}

TEST_CASE("satisfaction follows the firing condition") {
    const auto fig1 = rules("fig1.rules");
    Instance i{atom("fly", {c("a"), c("b"), c("d")})};
    CHECK_FALSE(satisfies(i, fig1[2], {{"X1", c("a")}, {"X2", c("b")}, {"Y1", c("d")}}));
    CHECK(satisfies(Instance{}, fig1[2], {{"X1", c("a")}, {"X2", c("b")}, {"Y1", c("d")}}));

    const auto ex1 = rules("ex1.rules");
    Instance j{atom("E", {c("a"), c("b")}), atom("E", {c("b"), c("a")})};
    CHECK(satisfies(j, ex1[0], {{"X", c("a")}, {"Y", c("b")}}));
}

TEST_CASE("find_violations examples") {
    const auto fig1 = rules("fig1.rules");
    const auto q1 = query("q1.inst");
    auto vs = find_violations(q1, fig1[2]);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0] == Assignment{{"X1", n("X1")}, {"X2", n("X2")}, {"Y1", n("Y2")}});

    auto path = rules_text("R(X,Y), R(Y,Z) -> R(Z,W).");
    Instance i{atom("R", {c("a"), c("b")}), atom("R", {c("b"), c("c")})};
    vs = find_violations(i, path[0]);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0] == Assignment{{"X", c("a")}, {"Y", c("b")}, {"Z", c("c")}});

    CHECK(find_violations(parse_instance("S(a). E(a,a)."), rules("ex1.rules")[0]).empty());
}

TEST_CASE("find_violations agrees with brute-force enumeration") {
    gen::Rng rng(11);
    for (int round = 0; round < 300; ++round) {
        auto sigma = gen::random_constraints(rng);
        auto inst = gen::random_instance(rng, sigma, 8, 3);
        for (const auto& con : sigma) {
            auto fast = find_violations(inst, con);
            auto slow = oracle::violations(inst, con);
            std::sort(slow.begin(), slow.end());
            auto sorted = fast;
            std::sort(sorted.begin(), sorted.end());
            CHECK_MESSAGE(sorted == slow, to_string(con) << " on\n" << to_string(inst));
            // Reported order is the value-tuple order.
            for (std::size_t k = 1; k < fast.size(); ++k) {
                std::vector<Term> x, y;
                for (const auto& var : con.universal) {
                    x.push_back(fast[k - 1].at(var));
                    y.push_back(fast[k].at(var));
                }
                CHECK(x < y);
            }
        }
    }
}

TEST_CASE("satisfaction is monotone in the body") {
    gen::Rng rng(5);
    for (int round = 0; round < 200; ++round) {
        auto sigma = gen::random_constraints(rng);
        auto inst = gen::random_instance(rng, sigma, 6, 3);
        const auto dom = inst.domain();
        std::vector<Term> pool(dom.begin(), dom.end());
        pool.push_back(c("zz"));
        for (const auto& con : sigma)
            oracle::for_each_tuple(con.universal, pool, [&](const Assignment& a) {
                if (!oracle::subset_of_instance(instantiate(con.body, a), inst)) CHECK(satisfies(inst, con, a));
            });
    }
}

TEST_CASE("homomorphism examples") {
    Instance i{atom("E", {c("a"), n("n1")}), atom("E", {n("n1"), n("n2")})};
    auto id = find_homomorphism(i, i);
    REQUIRE(id);
    for (const auto& [from, to] : *id) CHECK(from == to);

    auto h = find_homomorphism(Instance{atom("E", {n("n1"), n("n2")})}, Instance{atom("E", {c("a"), c("a")})});
    REQUIRE(h);
    CHECK(h->at(n("n1")) == c("a"));
    CHECK(h->at(n("n2")) == c("a"));

    CHECK_FALSE(find_homomorphism(Instance{atom("E", {c("a"), n("n1")})}, Instance{atom("E", {c("b"), c("c")})}));
    CHECK(hom_equivalent(Instance{atom("E", {c("a"), n("x")})}, Instance{atom("E", {c("a"), n("y")})}));
    CHECK_FALSE(hom_equivalent(Instance{atom("E", {c("a"), n("x")})}, Instance{atom("E", {c("a"), c("b")})}));
}

TEST_CASE("homomorphisms compose") {
    gen::Rng rng(17);
    int composed = 0;
    for (int round = 0; round < 300; ++round) {
        const std::vector<Constraint> none;
        auto a = gen::random_instance(rng, none, 4, 2, 0.6);
        auto b = gen::random_instance(rng, none, 6, 2, 0.4);
        auto d = gen::random_instance(rng, none, 6, 2, 0.2);
        auto h = find_homomorphism(a, b);
        auto g = find_homomorphism(b, d);
        if (h) CHECK(is_homomorphism(*h, a, b));
        if (!h || !g) continue;
        TermMapping gh;
        for (const auto& [x, y] : *h) gh[x] = g->at(y);
        CHECK(is_homomorphism(gh, a, d));
        ++composed;
    }
    CHECK(composed > 0);
}

}
