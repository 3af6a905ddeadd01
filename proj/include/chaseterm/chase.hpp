#pragma once

#include "chaseterm/model.hpp"

#include <memory>
#include <variant>

namespace chaseterm {

class MonitorGraph;
struct MonitorChain;

struct FreshNull {
    Term null;
    PositionSet positions; // where the null occurs in the added facts

    friend bool operator==(const FreshNull&, const FreshNull&) = default;
};

struct ChaseStepRecord {
    std::size_t step_index = 0;
    std::size_t constraint_id = 0;
    Assignment assignment;
    std::vector<Atom> added_facts;                // TGD: facts new to the instance
    std::optional<std::pair<Term, Term>> merged;  // EGD: (survivor, removed)
    std::vector<FreshNull> fresh_nulls;           // TGD: one per existential variable
    std::uint64_t next_null_after = 0;            // null counter after the step

    friend bool operator==(const ChaseStepRecord&, const ChaseStepRecord&) = default;
};

// An EGD step that would equate two distinct constants.
struct StepFailure {
    Term left;
    Term right;
};

// Applies one chase step in place. Precondition: satisfies(inst, c, a) is false.
std::variant<ChaseStepRecord, StepFailure> apply_step(Instance& inst, const Constraint& c, const Assignment& a,
                                                       std::size_t step_index = 0);

struct AppliedStep {
    Instance instance;
    ChaseStepRecord record;
};

std::variant<AppliedStep, StepFailure> chase_step(const Instance& inst, const Constraint& c, const Assignment& a);

struct ChasePolicy {
    enum class Order { Deterministic, Randomized };
    Order order = Order::Deterministic;
    std::uint64_t seed = 0;
    std::optional<std::size_t> max_steps;  // nullopt: unlimited
    std::optional<std::size_t> monitor_k;  // abort once the run becomes k-cyclic

    static ChasePolicy deterministic(std::optional<std::size_t> max_steps = std::nullopt) {
        return {Order::Deterministic, 0, max_steps, std::nullopt};
    }
    static ChasePolicy randomized(std::uint64_t seed, std::optional<std::size_t> max_steps = std::nullopt) {
        return {Order::Randomized, seed, max_steps, std::nullopt};
    }
};

inline constexpr std::size_t kDefaultMaxSteps = 10000;

enum class ChaseOutcome { Terminated, Failed, Aborted };
enum class AbortReason { StepLimit, KCyclic };

std::string to_string(ChaseOutcome o);
std::string to_string(AbortReason r);

struct ChaseResult {
    ChaseOutcome outcome = ChaseOutcome::Terminated;
    Instance instance; // final instance, or the state reached before failing/aborting
    std::vector<ChaseStepRecord> steps;

    // Failed
    std::size_t failed_step = 0;
    std::optional<StepFailure> failure;

    // Aborted
    std::optional<AbortReason> abort_reason;
    std::size_t k = 0;

    // Present when the run was monitored.
    std::shared_ptr<const MonitorGraph> monitor;
    std::shared_ptr<const MonitorChain> cyclic_chain;

    bool terminated() const { return outcome == ChaseOutcome::Terminated; }
    bool aborted_with(AbortReason r) const { return outcome == ChaseOutcome::Aborted && abort_reason == r; }
};

// Runs the standard chase. Deterministic order is round-robin over the
// constraints in id order, taking the first violation of each; randomized
// order draws uniformly among all current violations.
ChaseResult chase(const Instance& inst, std::span<const Constraint> sigma, const ChasePolicy& policy = {});

// Re-applies the recorded steps to `initial`.
Instance replay(const Instance& initial, std::span<const ChaseStepRecord> steps);

} // namespace chaseterm
