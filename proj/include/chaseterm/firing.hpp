#pragma once

#include "chaseterm/model.hpp"

namespace chaseterm {

// PrecedesP: alpha can make beta fire on an instance whose nulls sit only in
// the given positions, with a null reaching beta's head (the relation behind
// restriction systems). Precedes: alpha can make beta fire at all (the
// relation behind chase graphs).
enum class FiringMode { PrecedesP, Precedes };

struct FiringOptions {
    // Also demand a null among beta's head values in Precedes mode.
    bool precedes_requires_null_in_head = false;
};

// An instance I and assignments a, b such that firing alpha(a) on I yields J
// where beta(b) is newly violated.
struct FiringWitness {
    Instance before;
    Assignment alpha_assignment;
    Assignment beta_assignment;
    Instance after;
};

// Re-checks every condition of `mode` on the witness from scratch.
bool verify_firing_witness(const Constraint& alpha, const Constraint& beta, const PositionSet& null_positions,
                           FiringMode mode, const FiringWitness& w, const FiringOptions& opts = {});

// Decides the firing relation by exhaustive search over minimal witnesses:
// I = a(body(alpha)) plus facts of b(body(beta)), with every value drawn
// from a pool of fresh symbols and the constants the two constraints
// mention. Results are memoized per (alpha, beta, positions, mode).
class FiringOracle {
public:
    explicit FiringOracle(FiringOptions opts = {}) : opts_(opts) {}

    std::optional<FiringWitness> can_cause(const Constraint& alpha, const Constraint& beta,
                                           const PositionSet& null_positions, FiringMode mode);
    bool precedes(const Constraint& alpha, const Constraint& beta, const PositionSet& null_positions) {
        return can_cause(alpha, beta, null_positions, FiringMode::PrecedesP).has_value();
    }
    bool precedes(const Constraint& alpha, const Constraint& beta) {
        return can_cause(alpha, beta, {}, FiringMode::Precedes).has_value();
    }

    const FiringOptions& options() const { return opts_; }
    std::size_t searches() const { return searches_; }

private:
    using Key = std::tuple<std::string, std::string, PositionSet, FiringMode>;
    FiringOptions opts_;
    std::map<Key, std::optional<FiringWitness>> cache_;
    std::size_t searches_ = 0;
};

std::optional<FiringWitness> can_cause(const Constraint& alpha, const Constraint& beta,
                                       const PositionSet& null_positions, FiringMode mode,
                                       const FiringOptions& opts = {});

} // namespace chaseterm
