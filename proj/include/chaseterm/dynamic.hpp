#pragma once

#include "chaseterm/restriction.hpp"

namespace chaseterm {

inline constexpr const char* kInstanceConstraintLabel = "alpha_I";

// The body-less TGD whose head is the instance itself: each labeled null
// becomes a distinct existential variable, constants stay parameters.
// Throws Error for an empty instance.
Constraint constraint_from_instance(const Instance& inst, std::size_t id);

struct Irrelevance {
    IdSet irrelevant;
    IdSet relevant;
    Constraint instance_constraint; // alpha_I, with an id past every id of sigma
    ConstraintGraph chase;          // chase graph of sigma plus alpha_I
};

// Constraints unreachable in the chase graph from alpha_I and from the
// body-less TGDs `inst` violates cannot fire in any chase sequence from
// `inst`. Sound, not complete.
Irrelevance irrelevant_constraints(const Instance& inst, std::span<const Constraint> sigma, FiringOracle& oracle);
Irrelevance irrelevant_constraints(const Instance& inst, std::span<const Constraint> sigma);

enum class GuaranteeLevel { AllInstances, ThisInstance, None };

std::string to_string(GuaranteeLevel level);

struct TerminationGuarantee {
    GuaranteeLevel level = GuaranteeLevel::None;
    IdSet relevant;
    std::optional<Irrelevance> irrelevance; // absent when sigma is inductively restricted
    std::vector<IdSet> part;                // part() of the set the verdict rests on
};

// AllInstances if sigma is inductively restricted; else ThisInstance if the
// constraints relevant for `inst` are; else None.
TerminationGuarantee data_dependent_guarantee(const Instance& inst, std::span<const Constraint> sigma,
                                              FiringOracle& oracle);
TerminationGuarantee data_dependent_guarantee(const Instance& inst, std::span<const Constraint> sigma);

struct Fixture {
    std::vector<Constraint> constraints;
    Instance instance;
};

// The family (I_k, Sigma_k): I_k = {S(c1),...,S(ck), R_k(c1,...,ck)} and the
// single TGD S(Xk), R_k(X1,...,Xk) -> R_k(Y,X1,...,X(k-1)). Its only chase
// sequence has k steps and is (k-1)- but not k-cyclic. Requires k >= 2.
Fixture appendix_g(std::size_t k);

} // namespace chaseterm
