#include "fairdiv/engine.hpp"

#include "fairdiv/errors.hpp"

namespace fairdiv {

std::vector<EngineNode> expand(const Problem& problem, const Mechanism& mech,
                               const StrategyProfile& strategy, int rounds) {
    if (rounds < 0 || rounds > problem.item_count()) {
        throw PreconditionError("round horizon out of range");
    }
    const int n = problem.agent_count();
    std::vector<EngineNode> frontier{
        {Allocation(n), std::vector<Rational>(n, Rational(0)), Rational(1)}};
    for (int j = 0; j < rounds; ++j) {
        std::vector<EngineNode> next;
        for (const EngineNode& node : frontier) {
            std::vector<Rational> bids(n);
            for (int i = 0; i < n; ++i) {
                bids[i] = strategy.bid(problem, i, j, node.allocation);
            }
            MechanismState state{node.allocation, node.declared};
            std::vector<Rational> probs = round_probabilities(mech, state, bids);
            for (int winner = 0; winner < n; ++winner) {
                if (probs[winner] == 0) continue;
                EngineNode child;
                child.allocation = node.allocation.give(winner, j);
                child.declared = node.declared;
                child.declared[winner] += bids[winner];
                child.probability = node.probability * probs[winner];
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    return frontier;
}

AllocationDistribution run(const Problem& problem, const Mechanism& mech,
                           const StrategyProfile& strategy) {
    AllocationDistribution dist;
    dist.agent_count = problem.agent_count();
    dist.round = problem.item_count();
    for (EngineNode& node : expand(problem, mech, strategy, problem.item_count())) {
        dist.support[node.allocation] += node.probability;
    }
    return dist;
}

std::vector<std::vector<Rational>> expected_utilities(const Problem& problem,
                                                      const AllocationDistribution& dist) {
    const int n = problem.agent_count();
    std::vector<std::vector<Rational>> matrix(n, std::vector<Rational>(n, Rational(0)));
    for (const auto& [alloc, prob] : dist.support) {
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                matrix[i][k] += prob * problem.utility(i).value(alloc.bundle(k));
            }
        }
    }
    return matrix;
}

} // namespace fairdiv
