#pragma once

#include "fairdiv/allocation.hpp"
#include "fairdiv/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace fairdiv {

enum class MechanismKind {
    MinimumLike,
    MinimumUtility,
    Like,
    BalancedLike,
    MaximumLike,
    Uniform,
    FixedAgent,
    RandomDictator,
    // Synthetic variants used by the verification suite:
    MinLikeBiased,  // minimum-like, but a favored agent takes any tie it is part of
    FirstPositive,  // index order instead of the min rule (deliberately broken control)
};

/// A (possibly parameterized) allocation rule for one arriving item.
struct Mechanism {
    MechanismKind kind = MechanismKind::MinimumLike;
    int agent = -1; // parameter of fixed-agent(i) and min-like-biased(i), 0-based

    /// True when probability may land on a zero bidder while positive bids exist.
    bool wasteful() const;
    /// True when the rule compares accumulated declared utilities.
    bool uses_declared_utility() const;

    /// Identifier accepted by parse(): "minimum-like", "fixed-agent(2)", ...
    /// Agent parameters are 1-based in identifiers.
    std::string id() const;
    static Mechanism parse(std::string_view id); // SchemaError on unknown ids

    bool operator==(const Mechanism&) const = default;
};

/// The four non-wasteful built-ins: minimum-like, like, balanced-like,
/// maximum-like.
std::vector<Mechanism> builtin_nonwasteful();

/// All mechanism identifiers parse() accepts, with i ranging over agents.
std::vector<Mechanism> all_mechanisms(int agent_count);

/// Pre-round state: the partial allocation of items o_1..o_{j-1} plus each
/// agent's accumulated declared utility (the sum of the bids it made for the
/// items it actually received; equals u_i(bundle) under sincere bidding).
struct MechanismState {
    Allocation allocation;
    std::vector<Rational> declared;

    int round() const { return allocation.allocated_count(); } // 0-based: items taken so far
};

/// Probability share of the arriving item for every agent, given the bids.
/// Bids must be nonnegative; the result is nonnegative and sums to 1.
std::vector<Rational> round_probabilities(const Mechanism& mech, const MechanismState& state,
                                          const std::vector<Rational>& bids);

} // namespace fairdiv
