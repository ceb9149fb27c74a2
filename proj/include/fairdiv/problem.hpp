#pragma once

#include "fairdiv/utility.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fairdiv {

/// Preference-domain restrictions satisfied by a problem. Always derived
/// from the utility tables, never asserted by input.
struct DomainFlags {
    bool identical = false;
    bool additive = false;
    bool nonzero_marginals = false;
    bool zero_one_marginals = false;
    bool positive_additive = false;

    bool operator==(const DomainFlags&) const = default;
};

/// An online fair-division instance: agents, items arriving in list order,
/// and one monotone bundle utility per agent. Immutable after construction.
class Problem {
public:
    Problem(std::vector<std::string> item_names, std::vector<UtilityFunction> utilities);

    int agent_count() const { return static_cast<int>(utilities_.size()); }
    int item_count() const { return static_cast<int>(item_names_.size()); }
    const std::vector<std::string>& item_names() const { return item_names_; }
    const std::string& item_name(int item) const { return item_names_[item]; }
    const UtilityFunction& utility(int agent) const;

    /// Index of a named item; SchemaError if unknown.
    int item_index(std::string_view name) const;

    /// First monotonicity violation across agents, if any (agent, witness).
    std::optional<std::pair<int, MonotoneViolation>> find_violation() const;

    /// Throws SchemaError unless every utility is monotone with u(∅)=0.
    void require_valid() const;

private:
    std::vector<std::string> item_names_;
    std::vector<UtilityFunction> utilities_;
};

/// Derives the domain restrictions a problem satisfies.
DomainFlags classify(const Problem& problem);

} // namespace fairdiv
