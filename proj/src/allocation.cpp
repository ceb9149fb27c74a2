#include "fairdiv/allocation.hpp"

#include "fairdiv/errors.hpp"

#include <utility>

namespace fairdiv {

Allocation::Allocation(std::vector<ItemSet> bundles) : bundles_(std::move(bundles)) {
    ItemSet seen;
    for (ItemSet b : bundles_) {
        if (seen.intersects(b)) throw PreconditionError("bundles overlap");
        seen = seen.united(b);
    }
}

ItemSet Allocation::allocated() const {
    ItemSet all;
    for (ItemSet b : bundles_) all = all.united(b);
    return all;
}

int Allocation::owner_of(int item) const {
    for (int i = 0; i < agent_count(); ++i) {
        if (bundles_[i].contains(item)) return i;
    }
    return -1;
}

Allocation Allocation::give(int agent, int item) const {
    if (agent < 0 || agent >= agent_count()) throw PreconditionError("agent index out of range");
    if (owner_of(item) != -1) throw PreconditionError("item already allocated");
    Allocation next = *this;
    next.bundles_[agent] = next.bundles_[agent].with(item);
    return next;
}

Allocation Allocation::swapped(int a, int b) const {
    Allocation next = *this;
    std::swap(next.bundles_[a], next.bundles_[b]);
    return next;
}

std::strong_ordering Allocation::operator<=>(const Allocation& other) const {
    if (auto c = bundles_.size() <=> other.bundles_.size(); c != 0) return c;
    for (int item = 0; item < kMaxItems; ++item) {
        if (auto c = owner_of(item) <=> other.owner_of(item); c != 0) return c;
    }
    return std::strong_ordering::equal;
}

void AllocationDistribution::validate() const {
    Rational total = 0;
    ItemSet prefix = ItemSet::full(round);
    for (const auto& [alloc, prob] : support) {
        if (prob <= 0) throw PreconditionError("support probabilities must be positive");
        if (alloc.agent_count() != agent_count) {
            throw PreconditionError("support allocation has wrong agent count");
        }
        if (alloc.allocated() != prefix) {
            throw PreconditionError("support allocation does not cover the item prefix");
        }
        total += prob;
    }
    if (total != 1) throw PreconditionError("support probabilities must sum to 1");
}

} // namespace fairdiv
