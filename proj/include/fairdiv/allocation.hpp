#pragma once

#include "fairdiv/item_set.hpp"
#include "fairdiv/rational.hpp"

#include <compare>
#include <map>
#include <vector>

namespace fairdiv {

// A (possibly partial) allocation: bundle(i) is the set of items held by agent i.
// Bundles are pairwise disjoint; items outside every bundle are still unallocated.
class Allocation {
public:
    Allocation() = default;
    explicit Allocation(int agent_count) : bundles_(agent_count) {}
    explicit Allocation(std::vector<ItemSet> bundles);

    int agent_count() const { return static_cast<int>(bundles_.size()); }
    ItemSet bundle(int agent) const { return bundles_[agent]; }
    ItemSet allocated() const;
    int allocated_count() const { return allocated().size(); }

    // Index of the agent holding `item`, or -1 if it is unallocated.
    int owner_of(int item) const;

    // Copy with `item` added to agent's bundle; the item must be unallocated.
    Allocation give(int agent, int item) const;
    // Copy with the bundles of agents a and b exchanged.
    Allocation swapped(int a, int b) const;

    bool operator==(const Allocation&) const = default;
    // Owner-vector order: compare owner_of(o1), owner_of(o2), ... as integers,
    // with -1 for unallocated items.  This is the canonical enumeration order.
    std::strong_ordering operator<=>(const Allocation& other) const;

private:
    std::vector<ItemSet> bundles_;
};

// A probability distribution over allocations of the items o1..o_round.
struct AllocationDistribution {
    int agent_count = 0;
    int round = 0; // number of items allocated in every support allocation
    std::map<Allocation, Rational> support;

    // Throws PreconditionError unless probabilities are positive and sum to 1
    // and every support allocation covers exactly the first `round` items.
    void validate() const;
};

} // namespace fairdiv
