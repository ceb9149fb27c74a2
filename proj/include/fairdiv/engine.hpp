#pragma once

#include "fairdiv/mechanism.hpp"
#include "fairdiv/problem.hpp"
#include "fairdiv/strategy.hpp"

#include <vector>

namespace fairdiv {

/// One reachable state of the mechanism tree with its path probability.
struct EngineNode {
    Allocation allocation;
    std::vector<Rational> declared;
    Rational probability;
};

/// Exact expansion of the first `rounds` rounds (0 ≤ rounds ≤ m). Items are
/// handed out in arrival order, so the sequence of recipients — and hence the
/// whole path — is recoverable from a node's allocation; distinct nodes never
/// re-merge and probabilities sum to 1.
std::vector<EngineNode> expand(const Problem& problem, const Mechanism& mech,
                               const StrategyProfile& strategy, int rounds);

/// Distribution over full allocations after all m rounds.
AllocationDistribution run(const Problem& problem, const Mechanism& mech,
                           const StrategyProfile& strategy = {});

/// matrix[i][k] = expected utility agent i assigns to agent k's bundle,
/// ū_ik = Σ_π p(π)·u_i(π_k). The diagonal is each agent's expected utility.
std::vector<std::vector<Rational>> expected_utilities(const Problem& problem,
                                                      const AllocationDistribution& dist);

} // namespace fairdiv
