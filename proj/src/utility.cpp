#include "fairdiv/utility.hpp"

#include "fairdiv/errors.hpp"

#include <utility>

namespace fairdiv {

UtilityFunction UtilityFunction::from_table(int item_count, std::vector<Rational> values) {
    if (item_count < 0 || item_count > kMaxItems) {
        throw CapacityError("utility tables support at most 16 items");
    }
    if (values.size() != (std::size_t{1} << item_count)) {
        throw PreconditionError("bundle table must have exactly 2^m entries");
    }
    UtilityFunction u;
    u.item_count_ = item_count;
    u.additive_form_ = false;
    u.table_ = std::move(values);
    return u;
}

UtilityFunction UtilityFunction::from_additive(std::vector<Rational> item_values) {
    if (item_values.size() > kMaxItems) {
        throw CapacityError("utility tables support at most 16 items");
    }
    UtilityFunction u;
    u.item_count_ = static_cast<int>(item_values.size());
    u.additive_form_ = true;
    u.item_values_ = std::move(item_values);
    return u;
}

Rational UtilityFunction::value(ItemSet bundle) const {
    if (!bundle.subset_of(ItemSet::full(item_count_))) {
        throw PreconditionError("bundle contains items outside the declared universe");
    }
    if (!additive_form_) return table_[bundle.mask()];
    Rational sum = 0;
    for (int i = 0; i < item_count_; ++i) {
        if (bundle.contains(i)) sum += item_values_[i];
    }
    return sum;
}

Rational UtilityFunction::marginal(ItemSet bundle, int item) const {
    if (bundle.contains(item)) {
        throw PreconditionError("marginal utility requires an item outside the bundle");
    }
    return value(bundle.with(item)) - value(bundle);
}

std::optional<MonotoneViolation> UtilityFunction::find_violation() const {
    if (value(ItemSet{}) != 0) {
        // Report the empty set against itself; the violated constraint is u(∅)=0.
        return MonotoneViolation{ItemSet{}, ItemSet{}};
    }
    const std::uint32_t limit = 1u << item_count_;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        ItemSet bundle{mask};
        Rational base = value(bundle);
        if (base < 0) return MonotoneViolation{ItemSet{}, bundle};
        for (int item = 0; item < item_count_; ++item) {
            if (bundle.contains(item)) continue;
            if (value(bundle.with(item)) < base) {
                return MonotoneViolation{bundle, bundle.with(item)};
            }
        }
    }
    return std::nullopt;
}

UtilityFunction UtilityFunction::expanded() const {
    if (!additive_form_) return *this;
    std::vector<Rational> values(std::size_t{1} << item_count_);
    for (std::uint32_t mask = 0; mask < values.size(); ++mask) {
        values[mask] = value(ItemSet{mask});
    }
    return from_table(item_count_, std::move(values));
}

bool UtilityFunction::is_additive() const {
    if (additive_form_) return true;
    const std::uint32_t limit = 1u << item_count_;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        Rational sum = 0;
        for (int i = 0; i < item_count_; ++i) {
            if ((mask >> i) & 1u) sum += value(ItemSet::single(i));
        }
        if (value(ItemSet{mask}) != sum) return false;
    }
    return true;
}

bool UtilityFunction::same_values(const UtilityFunction& other) const {
    if (item_count_ != other.item_count_) return false;
    const std::uint32_t limit = 1u << item_count_;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (value(ItemSet{mask}) != other.value(ItemSet{mask})) return false;
    }
    return true;
}

} // namespace fairdiv
