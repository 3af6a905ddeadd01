#pragma once

#include "chaseterm/dynamic.hpp"
#include "chaseterm/monitor.hpp"

#include <json.hpp>

namespace chaseterm {

// DOT renderings with nodes and edges in sorted order. Special edges are
// dashed and tagged with a `special=true` comment.
std::string to_dot(const PositionGraph& g);
std::string to_dot(const ConstraintGraph& g);
std::string to_dot(const RestrictionSystem& rs);
std::string to_dot(const MonitorGraph& g);

// Re-checks every negative verdict of `report` against its witness: cycles
// must be special cycles of the graph of the offending component, and each
// component must be strongly connected under firing witnesses that verify.
// Returns an explanation of the first failure, or nothing.
std::optional<std::string> validate_report(std::span<const Constraint> sigma, const AnalysisReport& report,
                                           FiringOracle& oracle);

nlohmann::json to_json(std::span<const Constraint> sigma, const AnalysisReport& report);
nlohmann::json to_json(std::span<const Constraint> sigma, const ChaseResult& result);
nlohmann::json to_json(std::span<const Constraint> sigma, const Irrelevance& irr);
nlohmann::json to_json(std::span<const Constraint> sigma, const TerminationGuarantee& g);

} // namespace chaseterm
