#pragma once

#include "fairdiv/item_set.hpp"
#include "fairdiv/rational.hpp"

#include <optional>
#include <vector>

namespace fairdiv {

/// Witness for a monotonicity failure: a bundle pair B ⊂ B' with u(B) > u(B').
struct MonotoneViolation {
    ItemSet subset;
    ItemSet superset;
};

/// Monotone bundle valuation over the subsets of m items.
///
/// Stored either as an explicit table over all 2^m bundles or, for additive
/// utilities, as per-item values summed on demand. Values are immutable after
/// construction.
class UtilityFunction {
public:
    /// `values[mask]` is the utility of the bundle with that bitmask;
    /// `values` must have exactly 2^m entries.
    static UtilityFunction from_table(int item_count, std::vector<Rational> values);
    static UtilityFunction from_additive(std::vector<Rational> item_values);

    int item_count() const { return item_count_; }
    /// True when stored in additive shorthand (per-item values).
    bool additive_form() const { return additive_form_; }

    Rational value(ItemSet bundle) const;

    /// u(B ∪ {o}) − u(B). Throws PreconditionError when `item` is already in
    /// `bundle`.
    Rational marginal(ItemSet bundle, int item) const;

    /// Checks u(∅)=0, nonnegativity, and monotonicity under set inclusion.
    /// Returns std::nullopt when the function is valid. Single-step
    /// comparisons suffice: any inclusion chain violation implies a
    /// one-item-step violation.
    std::optional<MonotoneViolation> find_violation() const;

    /// Explicit-table copy (expands additive shorthand).
    UtilityFunction expanded() const;

    /// True when every bundle value equals the sum of member item values.
    bool is_additive() const;

    /// Value-level equality: same m and same value on every bundle,
    /// regardless of storage form.
    bool same_values(const UtilityFunction& other) const;

private:
    UtilityFunction() = default;

    int item_count_ = 0;
    bool additive_form_ = false;
    std::vector<Rational> table_;       // size 2^m when !additive_form_
    std::vector<Rational> item_values_; // size m when additive_form_
};

} // namespace fairdiv
