#include "fairdiv/json_io.hpp"

#include "fairdiv/errors.hpp"

#include <string>

namespace fairdiv {
namespace {

Rational rational_from_json(const Json& value, const char* where) {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long long>());
    throw SchemaError(std::string(where) + " must be a rational string or an integer");
}

const Json& require(const Json& data, const char* field, const char* where) {
    auto it = data.find(field);
    if (it == data.end()) {
        throw SchemaError(std::string(where) + " is missing the \"" + field + "\" field");
    }
    return *it;
}

std::string bundle_name(const Problem& problem, ItemSet bundle) {
    std::string out = "{";
    bool first = true;
    for (int item : bundle.items()) {
        if (!first) out += ", ";
        out += problem.item_name(item);
        first = false;
    }
    return out + "}";
}

Json bundle_to_json(const Problem& problem, ItemSet bundle) {
    Json out = Json::array();
    for (int item : bundle.items()) out.push_back(problem.item_name(item));
    return out;
}

ItemSet bundle_from_json(const Problem& problem, const Json& data, const char* where) {
    if (!data.is_array()) throw SchemaError(std::string(where) + " must be an array of item names");
    ItemSet bundle;
    for (const Json& name : data) {
        if (!name.is_string()) {
            throw SchemaError(std::string(where) + " must contain item names");
        }
        int item = problem.item_index(name.get<std::string>());
        if (bundle.contains(item)) {
            throw SchemaError(std::string(where) + " repeats item " + name.get<std::string>());
        }
        bundle = bundle.with(item);
    }
    return bundle;
}

Json allocation_to_json(const Problem& problem, const Allocation& alloc) {
    Json out = Json::array();
    for (int i = 0; i < alloc.agent_count(); ++i) {
        out.push_back(bundle_to_json(problem, alloc.bundle(i)));
    }
    return out;
}

Allocation allocation_from_json(const Problem& problem, const Json& data, const char* where) {
    if (!data.is_array() || static_cast<int>(data.size()) != problem.agent_count()) {
        throw SchemaError(std::string(where) + " must list one bundle per agent");
    }
    std::vector<ItemSet> bundles;
    ItemSet seen;
    for (const Json& entry : data) {
        ItemSet bundle = bundle_from_json(problem, entry, where);
        if (seen.intersects(bundle)) {
            throw SchemaError(std::string(where) + " assigns some item twice");
        }
        seen = seen.united(bundle);
        bundles.push_back(bundle);
    }
    return Allocation(std::move(bundles));
}

Json profile_to_json(const std::vector<Rational>& values) {
    Json out = Json::array();
    for (const Rational& v : values) out.push_back(format_rational(v));
    return out;
}

Json witness_to_json(const Problem& problem, const Witness& witness) {
    Json out;
    if (const auto* envy = std::get_if<EnvyWitness>(&witness)) {
        out["kind"] = "envy";
        out["allocation"] = envy->allocation
                                ? allocation_to_json(problem, *envy->allocation)
                                : Json(nullptr);
        out["envious"] = envy->envious + 1;
        out["envied"] = envy->envied + 1;
        out["own_value"] = format_rational(envy->own_value);
        out["other_value"] = format_rational(envy->other_value);
        Json residuals = Json::array();
        for (const auto& [item, value] : envy->residuals) {
            residuals.push_back(
                {{"removed", problem.item_name(item)}, {"value", format_rational(value)}});
        }
        out["residuals"] = std::move(residuals);
    } else if (const auto* dom = std::get_if<DominanceWitness>(&witness)) {
        out["kind"] = "dominance";
        out["dominated"] = allocation_to_json(problem, dom->dominated);
        out["dominating"] = allocation_to_json(problem, dom->dominating);
        out["dominated_profile"] = profile_to_json(dom->dominated_profile);
        out["dominating_profile"] = profile_to_json(dom->dominating_profile);
    } else if (const auto* mix = std::get_if<MixtureWitness>(&witness)) {
        out["kind"] = "mixture";
        out["expected"] = profile_to_json(mix->expected);
        Json mixture = Json::array();
        for (const auto& [alloc, weight] : mix->mixture) {
            mixture.push_back({{"bundles", allocation_to_json(problem, alloc)},
                               {"probability", format_rational(weight)}});
        }
        out["mixture"] = std::move(mixture);
        out["mixture_profile"] = profile_to_json(mix->mixture_profile);
        out["total_slack"] = format_rational(mix->total_slack);
    } else if (const auto* manip = std::get_if<ManipulationWitness>(&witness)) {
        out["kind"] = "manipulation";
        Json coalition = Json::array();
        for (int agent : manip->coalition) coalition.push_back(agent + 1);
        out["coalition"] = std::move(coalition);
        out["deviation"] = strategy_to_json(problem, manip->deviation);
        out["sincere_value"] = format_rational(manip->sincere_value);
        out["deviating_value"] = format_rational(manip->deviating_value);
        out["horizon"] = manip->horizon >= 0 ? Json(manip->horizon + 1) : Json(nullptr);
    }
    return out;
}

} // namespace

Json problem_to_json(const Problem& problem) {
    Json out;
    out["agents"] = problem.agent_count();
    out["items"] = problem.item_names();
    Json utilities = Json::array();
    for (int i = 0; i < problem.agent_count(); ++i) {
        const UtilityFunction& u = problem.utility(i);
        Json entry;
        if (u.additive_form()) {
            entry["kind"] = "additive";
            Json values = Json::array();
            for (int item = 0; item < problem.item_count(); ++item) {
                values.push_back(format_rational(u.value(ItemSet::single(item))));
            }
            entry["values"] = std::move(values);
        } else {
            entry["kind"] = "table";
            Json entries = Json::array();
            const std::uint32_t limit = 1u << problem.item_count();
            for (std::uint32_t mask = 0; mask < limit; ++mask) {
                entries.push_back({{"bundle", bundle_to_json(problem, ItemSet{mask})},
                                   {"value", format_rational(u.value(ItemSet{mask}))}});
            }
            entry["entries"] = std::move(entries);
        }
        utilities.push_back(std::move(entry));
    }
    out["utilities"] = std::move(utilities);
    return out;
}

Problem problem_from_json(const Json& data) {
    if (!data.is_object()) throw SchemaError("problem file must hold a JSON object");
    const Json& agents = require(data, "agents", "problem");
    if (!agents.is_number_integer() || agents.get<int>() < 1) {
        throw SchemaError("\"agents\" must be a positive integer");
    }
    const int n = agents.get<int>();
    const Json& items = require(data, "items", "problem");
    if (!items.is_array()) throw SchemaError("\"items\" must be an array of item names");
    std::vector<std::string> names;
    for (const Json& name : items) {
        if (!name.is_string()) throw SchemaError("\"items\" must be an array of item names");
        names.push_back(name.get<std::string>());
    }
    const int m = static_cast<int>(names.size());
    if (m > kMaxItems) throw CapacityError("at most 16 items are supported");

    // Item lookup before the Problem exists; Problem construction re-validates.
    auto item_index = [&](const std::string& name, const char* where) {
        for (int i = 0; i < m; ++i) {
            if (names[i] == name) return i;
        }
        throw SchemaError(std::string(where) + " names unknown item " + name);
    };

    const Json& utilities = require(data, "utilities", "problem");
    if (!utilities.is_array() || static_cast<int>(utilities.size()) != n) {
        throw SchemaError("\"utilities\" must list exactly one utility per agent");
    }
    std::vector<UtilityFunction> parsed;
    int agent_no = 0;
    for (const Json& entry : utilities) {
        ++agent_no;
        std::string where = "utility of agent " + std::to_string(agent_no);
        if (!entry.is_object()) throw SchemaError(where + " must be an object");
        const Json& kind_json = require(entry, "kind", where.c_str());
        if (!kind_json.is_string()) throw SchemaError(where + " kind must be a string");
        std::string kind = kind_json.get<std::string>();
        if (kind == "additive") {
            const Json& values = require(entry, "values", where.c_str());
            if (!values.is_array() || static_cast<int>(values.size()) != m) {
                throw SchemaError(where + " must list one value per item");
            }
            std::vector<Rational> item_values;
            for (const Json& v : values) {
                item_values.push_back(rational_from_json(v, where.c_str()));
            }
            parsed.push_back(UtilityFunction::from_additive(std::move(item_values)));
        } else if (kind == "table") {
            const Json& entries = require(entry, "entries", where.c_str());
            if (!entries.is_array()) throw SchemaError(where + " entries must be an array");
            std::vector<Rational> table(std::size_t{1} << m, Rational(0));
            std::vector<bool> covered(std::size_t{1} << m, false);
            for (const Json& row : entries) {
                if (!row.is_object()) throw SchemaError(where + " entries must be objects");
                ItemSet bundle;
                const Json& bundle_json = require(row, "bundle", where.c_str());
                if (!bundle_json.is_array()) {
                    throw SchemaError(where + " bundles must be arrays of item names");
                }
                for (const Json& name : bundle_json) {
                    if (!name.is_string()) {
                        throw SchemaError(where + " bundles must contain item names");
                    }
                    bundle = bundle.with(item_index(name.get<std::string>(), where.c_str()));
                }
                if (covered[bundle.mask()]) {
                    throw SchemaError(where + " defines bundle " + bundle_json.dump() + " twice");
                }
                covered[bundle.mask()] = true;
                table[bundle.mask()] =
                    rational_from_json(require(row, "value", where.c_str()), where.c_str());
            }
            for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
                if (!covered[mask]) {
                    std::string missing = "{";
                    bool first = true;
                    for (int item = 0; item < m; ++item) {
                        if (!((mask >> item) & 1u)) continue;
                        if (!first) missing += ", ";
                        missing += names[item];
                        first = false;
                    }
                    throw SchemaError(where + " is missing bundle " + missing + "}");
                }
            }
            parsed.push_back(UtilityFunction::from_table(m, std::move(table)));
        } else {
            throw SchemaError(where + " has unknown kind \"" + kind + "\"");
        }
    }
    Problem problem(std::move(names), std::move(parsed));
    if (auto violation = problem.find_violation()) {
        throw SchemaError("utility of agent " + std::to_string(violation->first + 1) +
                          " is not monotone: u(" +
                          bundle_name(problem, violation->second.subset) + ") > u(" +
                          bundle_name(problem, violation->second.superset) + ")");
    }
    return problem;
}

Json distribution_to_json(const Problem& problem, const AllocationDistribution& dist) {
    Json out = Json::array();
    for (const auto& [alloc, prob] : dist.support) {
        out.push_back({{"bundles", allocation_to_json(problem, alloc)},
                       {"probability", format_rational(prob)}});
    }
    return out;
}

AllocationDistribution distribution_from_json(const Problem& problem, const Json& data) {
    if (!data.is_array()) throw SchemaError("distribution must be a JSON array");
    AllocationDistribution dist;
    dist.agent_count = problem.agent_count();
    dist.round = problem.item_count();
    for (const Json& entry : data) {
        if (!entry.is_object()) throw SchemaError("distribution entries must be objects");
        Allocation alloc = allocation_from_json(
            problem, require(entry, "bundles", "distribution entry"), "distribution entry");
        if (alloc.allocated() != ItemSet::full(problem.item_count())) {
            throw SchemaError("distribution entry does not allocate every item");
        }
        Rational prob =
            rational_from_json(require(entry, "probability", "distribution entry"),
                               "distribution probability");
        if (prob <= 0) throw SchemaError("distribution probabilities must be positive");
        if (dist.support.count(alloc)) {
            throw SchemaError("distribution repeats an allocation");
        }
        dist.support[alloc] = prob;
    }
    Rational total = 0;
    for (const auto& [alloc, prob] : dist.support) total += prob;
    if (total != 1) throw SchemaError("distribution probabilities must sum to 1");
    return dist;
}

Json strategy_to_json(const Problem& problem, const StrategyProfile& strategy) {
    Json out = Json::array();
    for (const auto& [node, bid] : strategy.overrides) {
        const auto& [agent, round, alloc] = node;
        out.push_back({{"agent", agent + 1},
                       {"round", round + 1},
                       {"allocation", allocation_to_json(problem, alloc)},
                       {"declared", format_rational(bid)}});
    }
    return out;
}

StrategyProfile strategy_from_json(const Problem& problem, const Json& data) {
    if (!data.is_array()) throw SchemaError("strategy file must hold a JSON array");
    StrategyProfile strategy;
    for (const Json& entry : data) {
        if (!entry.is_object()) throw SchemaError("strategy entries must be objects");
        const Json& agent_json = require(entry, "agent", "strategy entry");
        const Json& round_json = require(entry, "round", "strategy entry");
        if (!agent_json.is_number_integer() || !round_json.is_number_integer()) {
            throw SchemaError("strategy agent and round must be integers");
        }
        int agent = agent_json.get<int>() - 1;
        int round = round_json.get<int>() - 1;
        if (agent < 0 || agent >= problem.agent_count()) {
            throw SchemaError("strategy entry names agent " + std::to_string(agent + 1) +
                              " of " + std::to_string(problem.agent_count()));
        }
        if (round < 0 || round >= problem.item_count()) {
            throw SchemaError("strategy entry names round " + std::to_string(round + 1) +
                              " of " + std::to_string(problem.item_count()));
        }
        Allocation alloc = allocation_from_json(
            problem, require(entry, "allocation", "strategy entry"), "strategy allocation");
        if (alloc.allocated() != ItemSet::full(round)) {
            throw SchemaError("strategy allocation for round " + std::to_string(round + 1) +
                              " must cover exactly the earlier items");
        }
        Rational bid = rational_from_json(require(entry, "declared", "strategy entry"),
                                          "declared bid");
        if (bid < 0) throw SchemaError("declared bids must be nonnegative");
        strategy.set(agent, round, alloc, std::move(bid));
    }
    return strategy;
}

Json verdict_to_json(const Problem& problem, const Verdict& verdict) {
    Json out;
    out["axiom"] = verdict.axiom;
    out["holds"] = verdict.holds;
    out["witness"] = verdict.witness ? witness_to_json(problem, *verdict.witness) : Json(nullptr);
    out["search_scope"] = verdict.search_scope;
    return out;
}

} // namespace fairdiv
