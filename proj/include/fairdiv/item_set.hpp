#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace fairdiv {

// Explicit bundle tables are stored as vectors indexed by mask, so the item
// universe is capped at 16.
inline constexpr int kMaxItems = 16;

/// Subset of the items o_1..o_m, packed as a bitmask over indices 0..m-1.
class ItemSet {
public:
    constexpr ItemSet() = default;
    constexpr explicit ItemSet(std::uint32_t mask) : mask_(mask) {}

    static constexpr ItemSet single(int item) { return ItemSet(1u << item); }
    static constexpr ItemSet full(int m) {
        return ItemSet(m == 0 ? 0u : ((1u << m) - 1u));
    }

    constexpr std::uint32_t mask() const { return mask_; }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr bool contains(int item) const { return (mask_ >> item) & 1u; }
    constexpr bool subset_of(ItemSet other) const { return (mask_ & ~other.mask_) == 0; }
    constexpr bool intersects(ItemSet other) const { return (mask_ & other.mask_) != 0; }
    int size() const { return std::popcount(mask_); }

    constexpr ItemSet with(int item) const { return ItemSet(mask_ | (1u << item)); }
    constexpr ItemSet without(int item) const { return ItemSet(mask_ & ~(1u << item)); }
    constexpr ItemSet united(ItemSet other) const { return ItemSet(mask_ | other.mask_); }

    /// Member item indices in ascending order.
    std::vector<int> items() const {
        std::vector<int> out;
        for (int i = 0; i < kMaxItems; ++i) {
            if (contains(i)) out.push_back(i);
        }
        return out;
    }

    friend constexpr bool operator==(ItemSet, ItemSet) = default;
    friend constexpr std::strong_ordering operator<=>(ItemSet a, ItemSet b) {
        return a.mask_ <=> b.mask_;
    }

private:
    std::uint32_t mask_ = 0;
};

} // namespace fairdiv
