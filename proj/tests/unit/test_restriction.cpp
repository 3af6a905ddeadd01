#include "common.hpp"
#include "../support/generators.hpp"
#include "../support/oracles.hpp"

using namespace testing;

namespace {

using Edges = std::set<std::pair<std::size_t, std::size_t>>;

}

TEST_SUITE("restriction") {

TEST_CASE("minimal restriction system of the first example") {
    const auto ex1 = rules("ex1.rules");
    auto rs = minimal_restriction_system(ex1);
    CHECK(rs.graph.edges == Edges{{1, 0}});
    CHECK(rs.f.at(0) == pos({{"E", 1}, {"E", 2}}));
    CHECK(rs.f.at(1).empty());
    CHECK(nontrivial_sccs(rs.graph).empty());
    FiringOracle o;
    CHECK(is_restriction_system(ex1, rs, o));
}

TEST_CASE("minimal restriction system with a body-less TGD") {
    const auto ex3 = rules("ex3.rules");
    auto rs = minimal_restriction_system(ex3);
    CHECK(rs.graph.edges == Edges{{0, 1}, {1, 0}, {2, 0}, {2, 1}});
    CHECK(rs.f.at(0) == pos({{"E", 1}, {"E", 2}, {"S", 1}}));
    CHECK(rs.f.at(1) == pos({{"E", 1}, {"E", 2}, {"S", 1}}));
    CHECK(rs.f.at(2).empty());
    CHECK(nontrivial_sccs(rs.graph) == std::vector<IdSet>{{0, 1}});
    CHECK(part(ex3).empty());
}

TEST_CASE("empty constraint set") {
    const std::vector<Constraint> none;
    auto rs = minimal_restriction_system(none);
    CHECK(rs.graph.edges.empty());
    CHECK(rs.f.empty());
    CHECK(part(none).empty());
    CHECK(is_safely_restricted(none));
    CHECK(is_inductively_restricted(none));
    CHECK(is_stratified(none));
    CHECK(chase_graph(none).edges.empty());
}

TEST_CASE("strongly connected components") {
    ConstraintGraph g;
    g.nodes = {0, 1, 2, 3};
    g.edges = {{0, 1}, {1, 0}, {2, 2}, {2, 3}};
    CHECK(nontrivial_sccs(g) == std::vector<IdSet>{{0, 1}, {2}});
    g.edges = {{0, 1}, {1, 2}};
    CHECK(nontrivial_sccs(g).empty());
}

TEST_CASE("the travel-agency constraints are not inductively restricted") {
    const auto fig1 = rules("fig1.rules");
    CHECK(part(fig1) == std::vector<IdSet>{{2}});
    FiringOracle o;
    auto v = check_inductively_restricted(fig1, o);
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness);
    CHECK(v.witness->component == IdSet{2});
    CHECK(v.witness->cycle == std::vector<PositionEdge>{{{"fly", 2}, {"fly", 2}, true}});
}

TEST_CASE("ladder verdicts of the paper examples") {
    auto ex1 = analyze(rules("ex1.rules"));
    CHECK(ex1.weakly_acyclic == false);
    CHECK(ex1.safe == false);
    CHECK(ex1.stratified == false);
    CHECK(ex1.safely_restricted == true);
    CHECK(ex1.inductively_restricted == true);

    auto ex3 = analyze(rules("ex3.rules"));
    CHECK(ex3.safely_restricted == false);
    CHECK(ex3.inductively_restricted == true);

    CHECK(analyze(rules("fig1.rules")).inductively_restricted == false);

    auto wa = analyze(rules("wa.rules"));
    CHECK(wa.weakly_acyclic == true);
    CHECK(wa.stratified == true);
    CHECK(wa.inductively_restricted == true);
}

TEST_CASE("only the requested verdicts are computed") {
    AnalysisRequest req = AnalysisRequest::none();
    req.inductively_restricted = true;
    auto r = analyze(rules("ex3.rules"), req);
    CHECK_FALSE(r.weakly_acyclic);
    CHECK_FALSE(r.stratified);
    CHECK_FALSE(r.chase);
    CHECK(r.inductively_restricted == true);
    CHECK(r.part);
}

TEST_CASE("random constraint sets: closure, uniqueness, ladder") {
    gen::Rng rng(41);
    for (int round = 0; round < 80; ++round) {
        auto sigma = gen::random_constraints(rng);
        CAPTURE(print_constraints(sigma));
        FiringOracle o;
        auto rs = minimal_restriction_system(sigma, o);
        CHECK(is_restriction_system(sigma, rs, o));

        // The least fixpoint does not depend on the constraint order.
        std::vector<Constraint> reversed(sigma.rbegin(), sigma.rend());
        auto rs2 = minimal_restriction_system(reversed, o);
        CHECK(rs2.graph.edges == rs.graph.edges);
        CHECK(rs2.f == rs.f);

        // Part elements are pairwise incomparable and inside a top-level component.
        auto parts = part(sigma, o);
        const auto sccs = nontrivial_sccs(rs.graph);
        for (const auto& p : parts) {
            bool inside = false;
            for (const auto& s : sccs) inside |= std::includes(s.begin(), s.end(), p.begin(), p.end());
            CHECK(inside);
            for (const auto& q : parts)
                if (p != q) CHECK_FALSE(std::includes(q.begin(), q.end(), p.begin(), p.end()));
        }

        auto r = analyze(sigma, {}, o);
        if (*r.weakly_acyclic) CHECK(*r.stratified);
        if (*r.safe) CHECK(*r.safely_restricted);
        if (*r.safely_restricted) CHECK(*r.inductively_restricted);
        CHECK_FALSE(validate_report(sigma, r, o));
    }
}

TEST_CASE("the minimal system grows with the constraint set") {
    gen::Rng rng(43);
    for (int round = 0; round < 40; ++round) {
        auto sigma = gen::random_constraints(rng);
        auto more = sigma;
        more.push_back(gen::random_constraint(rng, sigma.size(), {}));
        FiringOracle o;
        auto small = minimal_restriction_system(sigma, o), big = minimal_restriction_system(more, o);
        CHECK(std::includes(big.graph.edges.begin(), big.graph.edges.end(), small.graph.edges.begin(),
                            small.graph.edges.end()));
        for (const auto& [id, ps] : small.f)
            CHECK(std::includes(big.f.at(id).begin(), big.f.at(id).end(), ps.begin(), ps.end()));
    }
}

}
