#include "fairdiv/problem.hpp"

#include "fairdiv/errors.hpp"

#include <set>
#include <utility>

namespace fairdiv {

Problem::Problem(std::vector<std::string> item_names, std::vector<UtilityFunction> utilities)
    : item_names_(std::move(item_names)), utilities_(std::move(utilities)) {
    if (utilities_.empty()) throw SchemaError("a problem needs at least one agent");
    if (item_names_.size() > kMaxItems) {
        throw CapacityError("at most 16 items are supported");
    }
    std::set<std::string_view> seen;
    for (const auto& name : item_names_) {
        if (!seen.insert(name).second) throw SchemaError("duplicate item name: " + name);
    }
    for (const auto& u : utilities_) {
        if (u.item_count() != item_count()) {
            throw SchemaError("all utilities must cover the same items as the problem");
        }
    }
}

const UtilityFunction& Problem::utility(int agent) const {
    if (agent < 0 || agent >= agent_count()) {
        throw PreconditionError("agent index out of range");
    }
    return utilities_[agent];
}

int Problem::item_index(std::string_view name) const {
    for (int i = 0; i < item_count(); ++i) {
        if (item_names_[i] == name) return i;
    }
    throw SchemaError("unknown item name: " + std::string(name));
}

std::optional<std::pair<int, MonotoneViolation>> Problem::find_violation() const {
    for (int i = 0; i < agent_count(); ++i) {
        if (auto v = utilities_[i].find_violation()) return std::pair{i, *v};
    }
    return std::nullopt;
}

void Problem::require_valid() const {
    if (auto v = find_violation()) {
        throw SchemaError("agent " + std::to_string(v->first + 1) +
                          " has a non-monotone utility table");
    }
}

DomainFlags classify(const Problem& problem) {
    const int n = problem.agent_count();
    const int m = problem.item_count();
    DomainFlags flags;

    flags.identical = true;
    for (int i = 1; i < n && flags.identical; ++i) {
        flags.identical = problem.utility(0).same_values(problem.utility(i));
    }

    flags.additive = true;
    for (int i = 0; i < n && flags.additive; ++i) {
        flags.additive = problem.utility(i).is_additive();
    }

    flags.nonzero_marginals = true;
    flags.zero_one_marginals = true;
    for (int i = 0; i < n; ++i) {
        const auto& u = problem.utility(i);
        const std::uint32_t limit = 1u << m;
        for (std::uint32_t mask = 0; mask < limit; ++mask) {
            for (int item = 0; item < m; ++item) {
                if ((mask >> item) & 1u) continue;
                Rational d = u.marginal(ItemSet{mask}, item);
                if (d <= 0) flags.nonzero_marginals = false;
                if (d != 0 && d != 1) flags.zero_one_marginals = false;
            }
        }
    }

    flags.positive_additive = flags.additive && flags.nonzero_marginals;
    return flags;
}

} // namespace fairdiv
