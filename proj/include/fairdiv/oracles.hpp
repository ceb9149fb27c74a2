#pragma once

#include "fairdiv/allocation.hpp"
#include "fairdiv/problem.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace fairdiv {

inline constexpr long long kDefaultEnumerationCap = 4096;

/// All n^j complete allocations of the first j items, in owner-vector order
/// (the owner of o1 varies slowest). Throws CapacityError beyond `cap`.
std::vector<Allocation> enumerate_allocations(int agent_count, int item_count,
                                              long long cap = kDefaultEnumerationCap);

enum class OfflineProperty { EF, EF1, EFX, PEP };

/// Lexicographically first full allocation of the whole problem satisfying
/// the property, or nullopt. Throws CapacityError beyond `cap`.
std::optional<Allocation> offline_exists(const Problem& problem, OfflineProperty property,
                                         long long cap = kDefaultEnumerationCap);

/// Brute-force cross-check for the ex-ante dominance LP: searches mixtures of
/// up to three of the given deterministic utility profiles, with mixture
/// weights of denominator at most 24, for one that weakly dominates `target`
/// with at least one strict coordinate. Only positive answers are
/// authoritative; a `false` does not prove absence of dominance.
/// Capacity: at most 8 profiles over at most 3 agents.
bool mixture_dominance_oracle(const std::vector<Rational>& target,
                              const std::vector<std::vector<Rational>>& profiles);

} // namespace fairdiv
