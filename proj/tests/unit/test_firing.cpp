#include "common.hpp"
#include "../support/generators.hpp"
#include "../support/oracles.hpp"

using namespace testing;

TEST_SUITE("firing") {

TEST_CASE("paper examples of the firing relation") {
    const auto ex1 = rules("ex1.rules");
    const auto fig1 = rules("fig1.rules");
    auto w = can_cause(ex1[1], ex1[0], {}, FiringMode::PrecedesP);
    REQUIRE(w);
    CHECK(verify_firing_witness(ex1[1], ex1[0], {}, FiringMode::PrecedesP, *w));
    CHECK_FALSE(can_cause(ex1[0], ex1[0], pos({{"E", 1}, {"E", 2}}), FiringMode::PrecedesP));
    CHECK_FALSE(can_cause(ex1[1], ex1[1], {}, FiringMode::PrecedesP));
    CHECK(can_cause(fig1[2], fig1[2], body_positions(fig1), FiringMode::Precedes));
    CHECK(can_cause(fig1[2], fig1[0], {}, FiringMode::Precedes));
    CHECK_FALSE(can_cause(fig1[0], fig1[2], {}, FiringMode::Precedes));
    CHECK_FALSE(can_cause(fig1[1], fig1[1], {}, FiringMode::Precedes));
}

TEST_CASE("witnesses satisfy every condition") {
    const auto ex3 = rules("ex3.rules");
    FiringOracle o;
    for (const auto& a : ex3)
        for (const auto& b : ex3)
            for (auto mode : {FiringMode::PrecedesP, FiringMode::Precedes}) {
                const PositionSet p = pos({{"E", 1}, {"E", 2}, {"S", 1}});
                if (auto w = o.can_cause(a, b, p, mode)) {
                    CHECK(verify_firing_witness(a, b, p, mode, *w));
                    CHECK_FALSE(satisfies(w->before, a, w->alpha_assignment));
                    CHECK(satisfies(w->before, b, w->beta_assignment));
                    CHECK_FALSE(satisfies(w->after, b, w->beta_assignment));
                }
            }
}

TEST_CASE("the verifier rejects tampered witnesses") {
    const auto ex1 = rules("ex1.rules");
    auto w = can_cause(ex1[1], ex1[0], {}, FiringMode::PrecedesP);
    REQUIRE(w);
    auto bad = *w;
    bad.after.insert(atom("E", {c("zz"), c("zz")}));
    CHECK_FALSE(verify_firing_witness(ex1[1], ex1[0], {}, FiringMode::PrecedesP, bad));
    bad = *w;
    bad.before.insert(atom("E", {n("stray"), c("zz")}));
    CHECK_FALSE(verify_firing_witness(ex1[1], ex1[0], {}, FiringMode::PrecedesP, bad));
}

TEST_CASE("EGDs cause firings by merging values") {
    auto sigma = rules_text("E(X,Y), E(X,Z) -> Y = Z.\nE(X,X) -> F(X,W).");
    auto w = can_cause(sigma[0], sigma[1], pos({{"E", 1}, {"E", 2}}), FiringMode::PrecedesP);
    REQUIRE(w);
    CHECK(verify_firing_witness(sigma[0], sigma[1], pos({{"E", 1}, {"E", 2}}), FiringMode::PrecedesP, *w));
    // Without nulls in the instance a merge of two constants fails, so nothing fires.
    CHECK_FALSE(can_cause(sigma[0], sigma[1], {}, FiringMode::PrecedesP));
}

TEST_CASE("requiring a null in the head is a stricter Precedes") {
    const auto fig1 = rules("fig1.rules");
    FiringOracle strict(FiringOptions{true});
    FiringOracle loose;
    for (const auto& a : fig1)
        for (const auto& b : fig1)
            if (strict.precedes(a, b)) CHECK(loose.precedes(a, b));
}

TEST_CASE("the witness search agrees with exhaustive enumeration") {
    gen::Rng rng(29);
    gen::Shape shape;
    shape.max_constraints = 2;
    shape.max_body_atoms = 2;
    shape.max_head_atoms = 2;
    int found = 0, pairs = 0;
    for (int round = 0; round < 120; ++round) {
        auto sigma = gen::random_constraints(rng, shape);
        if (sigma.size() < 2) sigma.push_back(gen::random_constraint(rng, 1, shape));
        const auto& a = sigma[0];
        const auto& b = sigma[1];
        if (a.universal.size() > 3 || b.universal.size() > 3) continue;
        PositionSet p;
        for (const auto& q : body_positions(sigma))
            if (gen::chance(rng, 0.5)) p.insert(q);
        for (auto mode : {FiringMode::PrecedesP, FiringMode::Precedes}) {
            CAPTURE(print_constraints(sigma));
            CAPTURE(to_string(p));
            const bool slow = oracle::fires(a, b, p, mode);
            auto w = can_cause(a, b, p, mode);
            ++pairs;
            // Enumeration over a fixed pool can only miss witnesses, never invent them.
            if (slow) CHECK(w.has_value());
            if (w) {
                CHECK(verify_firing_witness(a, b, p, mode, *w));
                ++found;
            }
        }
    }
    CHECK(pairs > 100);
    CHECK(found > 10);
}

TEST_CASE("firing in restriction mode is monotone in the null positions") {
    gen::Rng rng(31);
    for (int round = 0; round < 120; ++round) {
        auto sigma = gen::random_constraints(rng);
        const auto all = body_positions(sigma);
        PositionSet small;
        for (const auto& q : all)
            if (gen::chance(rng, 0.4)) small.insert(q);
        FiringOracle o;
        for (const auto& a : sigma)
            for (const auto& b : sigma)
                if (o.precedes(a, b, small)) CHECK(o.precedes(a, b, all));
    }
}

}
