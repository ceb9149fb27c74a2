#pragma once

#include "fairdiv/axioms.hpp"
#include "fairdiv/problem.hpp"
#include "fairdiv/strategy.hpp"

#include "json.hpp"

namespace fairdiv {

using Json = nlohmann::json;

// All JSON interfaces use 1-based agents and rounds and refer to items by
// name; every numeric quantity travels as an exact "p/q" (or integer) string.

/// {"agents": n, "items": [...], "utilities": [{"kind": "table"|"additive", ...}]}
Json problem_to_json(const Problem& problem);
Problem problem_from_json(const Json& data); // SchemaError on any defect

/// [{"bundles": [['o1'], ...], "probability": "1/2"}, ...] over full allocations.
Json distribution_to_json(const Problem& problem, const AllocationDistribution& dist);
AllocationDistribution distribution_from_json(const Problem& problem, const Json& data);

/// [{"agent": 1, "round": 2, "allocation": [...], "declared": "0"}, ...]
Json strategy_to_json(const Problem& problem, const StrategyProfile& strategy);
StrategyProfile strategy_from_json(const Problem& problem, const Json& data);

/// {"axiom": ..., "holds": ..., "witness": ... | null, "search_scope": ...}
Json verdict_to_json(const Problem& problem, const Verdict& verdict);

} // namespace fairdiv
