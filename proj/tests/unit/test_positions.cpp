#include "common.hpp"
#include "../support/generators.hpp"
#include "../support/oracles.hpp"

using namespace testing;

TEST_SUITE("positions") {

TEST_CASE("affected positions") {
    CHECK(affected_positions(rules("ex1.rules")) == pos({{"E", 1}, {"E", 2}}));
    CHECK(affected_positions(rules_text("R(X,Y) -> R(Y,X).")).empty());
    CHECK(affected_positions(rules("fig1.rules")) == pos({{"fly", 1}, {"fly", 2}, {"fly", 3}, {"hasAirport", 1}}));
}

TEST_CASE("aff-cl") {
    const auto ex1 = rules("ex1.rules");
    CHECK(aff_cl(ex1[1], {}) == pos({{"E", 1}, {"E", 2}}));
    CHECK(aff_cl(rules_text("R(X,Y) -> R(Y,X).")[0], {}).empty());
    const auto fig1 = rules("fig1.rules");
    CHECK(aff_cl(fig1[2], pos({{"fly", 2}})) == pos({{"fly", 1}, {"fly", 2}, {"fly", 3}}));
    CHECK(aff_cl(fig1[2], {}) == pos({{"fly", 2}, {"fly", 3}}));
    CHECK_THROWS_AS(aff_cl(rules_text("R(X,Y) -> X = Y.")[0], {}), Error);
}

TEST_CASE("propagation graph of a single looping TGD") {
    const auto fig1 = rules("fig1.rules");
    const std::vector one{fig1[2]};
    auto g = propagation_graph(one);
    CHECK(g.nodes == pos({{"fly", 1}, {"fly", 2}, {"fly", 3}}));
    CHECK(g.edges == std::set<PositionEdge>{{{"fly", 2}, {"fly", 1}, false},
                                            {{"fly", 2}, {"fly", 2}, true},
                                            {{"fly", 2}, {"fly", 3}, true}});
}

TEST_CASE("safety and weak acyclicity examples") {
    const auto ex1 = rules("ex1.rules");
    const auto fig1 = rules("fig1.rules");
    CHECK_FALSE(is_safe(ex1));
    CHECK(is_safe(std::vector<Constraint>{}));
    CHECK(is_safe(std::vector{fig1[1]}));
    CHECK(is_weakly_acyclic(std::vector<Constraint>{}));
    CHECK_FALSE(is_weakly_acyclic(ex1));
    CHECK(is_weakly_acyclic(std::vector{fig1[0]}));
    CHECK(is_weakly_acyclic(rules("wa.rules")));

    auto v = check_safe(fig1);
    CHECK_FALSE(v.holds);
    CHECK(is_special_cycle(propagation_graph(fig1), v.cycle));
    CHECK(v.cycle == std::vector<PositionEdge>{{{"fly", 2}, {"fly", 2}, true}});
}

TEST_CASE("no existentials means no special edges") {
    for (const auto& e : propagation_graph(rules_text("R(X,Y) -> R(Y,X).\nR(X,Y) -> S(X).")).edges) CHECK_FALSE(e.special);
}

TEST_CASE("graphs and verdicts agree with the brute-force constructions") {
    gen::Rng rng(3);
    for (int round = 0; round < 400; ++round) {
        auto sigma = gen::random_constraints(rng);
        CAPTURE(print_constraints(sigma));
        const auto aff = affected_positions(sigma);
        CHECK(aff == oracle::affected(sigma));
        CHECK(dependency_graph(sigma).edges == oracle::dependency_graph(sigma).edges);
        CHECK(dependency_graph(sigma).nodes == oracle::dependency_graph(sigma).nodes);
        CHECK(propagation_graph(sigma).edges == oracle::dependency_graph(sigma, true, aff).edges);
        CHECK(is_safe(sigma) == oracle::is_safe(sigma));
        CHECK(is_weakly_acyclic(sigma) == oracle::is_weakly_acyclic(sigma));
        auto s = check_safe(sigma);
        if (!s.holds) CHECK(is_special_cycle(propagation_graph(sigma), s.cycle));
        auto w = check_weakly_acyclic(sigma);
        if (!w.holds) CHECK(is_special_cycle(dependency_graph(sigma), w.cycle));
        // Safety is weaker than weak acyclicity on the same constraints.
        if (w.holds) CHECK(s.holds);
    }
}

TEST_CASE("affected positions grow with the constraint set") {
    gen::Rng rng(4);
    for (int round = 0; round < 200; ++round) {
        auto sigma = gen::random_constraints(rng);
        auto more = sigma;
        more.push_back(gen::random_constraint(rng, sigma.size(), {}));
        const auto small = affected_positions(sigma), big = affected_positions(more);
        CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    }
}

TEST_CASE("special cycle validation rejects broken walks") {
    const auto ex1 = rules("ex1.rules");
    auto g = propagation_graph(ex1);
    CHECK_FALSE(is_special_cycle(g, {}));
    CHECK_FALSE(is_special_cycle(g, std::vector<PositionEdge>{{{"E", 1}, {"E", 2}, false}}));
    CHECK_FALSE(is_special_cycle(g, std::vector<PositionEdge>{{{"E", 9}, {"E", 9}, true}}));
}

}
