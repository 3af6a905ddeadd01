#pragma once

#include "chaseterm/firing.hpp"
#include "chaseterm/positions.hpp"

namespace chaseterm {

using ConstraintSet = std::vector<Constraint>;
using IdSet = std::vector<std::size_t>; // sorted constraint ids

// Directed graph over constraint ids.
struct ConstraintGraph {
    std::vector<std::size_t> nodes;            // sorted ids
    std::map<std::size_t, std::string> labels; // id -> label
    std::set<std::pair<std::size_t, std::size_t>> edges;

    bool has_edge(std::size_t from, std::size_t to) const { return edges.contains({from, to}); }
};

ConstraintGraph empty_graph(std::span<const Constraint> sigma);

struct RestrictionSystem {
    ConstraintGraph graph;
    std::map<std::size_t, PositionSet> f;
};

// Least restriction system: starts edge-free with f = {} everywhere and adds
// exactly the edges and positions the closure rules demand until stable.
RestrictionSystem minimal_restriction_system(std::span<const Constraint> sigma, FiringOracle& oracle);
RestrictionSystem minimal_restriction_system(std::span<const Constraint> sigma);

// Checks the three closure rules of a restriction system.
bool is_restriction_system(std::span<const Constraint> sigma, const RestrictionSystem& rs, FiringOracle& oracle);

// Strongly connected components that carry at least one edge, each sorted,
// ordered by smallest id.
std::vector<IdSet> nontrivial_sccs(const ConstraintGraph& g);

ConstraintSet subset_of(std::span<const Constraint> sigma, const IdSet& ids);
IdSet ids_of(std::span<const Constraint> sigma);

// The recursive decomposition driving inductive restriction.
std::vector<IdSet> part(std::span<const Constraint> sigma, FiringOracle& oracle);
std::vector<IdSet> part(std::span<const Constraint> sigma);

// All-pairs firing relation (Precedes mode).
ConstraintGraph chase_graph(std::span<const Constraint> sigma, FiringOracle& oracle);
ConstraintGraph chase_graph(std::span<const Constraint> sigma);

// A component (or part element) that fails a cycle check, with the cycle.
struct ComponentWitness {
    IdSet component;
    std::vector<PositionEdge> cycle;
};

struct LadderVerdict {
    bool holds = true;
    std::optional<ComponentWitness> witness;
};

LadderVerdict check_safely_restricted(std::span<const Constraint> sigma, FiringOracle& oracle);
LadderVerdict check_inductively_restricted(std::span<const Constraint> sigma, FiringOracle& oracle);
LadderVerdict check_stratified(std::span<const Constraint> sigma, FiringOracle& oracle);

bool is_safely_restricted(std::span<const Constraint> sigma);
bool is_inductively_restricted(std::span<const Constraint> sigma);
bool is_stratified(std::span<const Constraint> sigma);

struct AnalysisRequest {
    bool weakly_acyclic = true;
    bool safe = true;
    bool stratified = true;
    bool safely_restricted = true;
    bool inductively_restricted = true;

    static AnalysisRequest all() { return {}; }
    static AnalysisRequest none() { return {false, false, false, false, false}; }
};

// Verdicts of the termination ladder plus the graphs behind them. Verdicts
// that were not requested stay empty.
struct AnalysisReport {
    std::optional<bool> weakly_acyclic;
    std::optional<bool> safe;
    std::optional<bool> stratified;
    std::optional<bool> safely_restricted;
    std::optional<bool> inductively_restricted;

    PositionSet affected;
    PositionGraph dependency;
    PositionGraph propagation;
    std::optional<RestrictionSystem> restriction;
    std::optional<ConstraintGraph> chase;
    std::optional<std::vector<IdSet>> part;

    std::vector<PositionEdge> weak_acyclicity_cycle;
    std::vector<PositionEdge> safety_cycle;
    std::optional<ComponentWitness> stratification_witness;
    std::optional<ComponentWitness> safe_restriction_witness;
    std::optional<ComponentWitness> inductive_restriction_witness;
};

AnalysisReport analyze(std::span<const Constraint> sigma, const AnalysisRequest& request, FiringOracle& oracle);
AnalysisReport analyze(std::span<const Constraint> sigma, const AnalysisRequest& request = {});

} // namespace chaseterm
