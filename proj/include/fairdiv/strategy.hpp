#pragma once

#include "fairdiv/allocation.hpp"
#include "fairdiv/problem.hpp"

#include <map>
#include <tuple>

namespace fairdiv {

/// Bidding behavior of all agents. Everyone bids sincerely (the true marginal
/// of the arriving item given the own bundle) except at explicitly overridden
/// decision nodes. A decision node is (agent, round, partial allocation);
/// rounds are 0-based, so round j is the arrival of item index j.
struct StrategyProfile {
    std::map<std::tuple<int, int, Allocation>, Rational> overrides;

    bool sincere() const { return overrides.empty(); }

    void set(int agent, int round, const Allocation& at, Rational bid) {
        overrides[{agent, round, at}] = std::move(bid);
    }

    /// Declared bid of `agent` for item `round` when the board shows `at`.
    Rational bid(const Problem& problem, int agent, int round, const Allocation& at) const {
        if (auto it = overrides.find({agent, round, at}); it != overrides.end()) {
            return it->second;
        }
        return problem.utility(agent).marginal(at.bundle(agent), round);
    }
};

} // namespace fairdiv
