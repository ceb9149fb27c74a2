#include "fairdiv/mechanism.hpp"

#include "fairdiv/errors.hpp"

#include <algorithm>
#include <charconv>

namespace fairdiv {
namespace {

// "name(i)" -> {name, i-1}; plain "name" -> {name, -1}.
std::pair<std::string_view, int> split_id(std::string_view id) {
    auto open = id.find('(');
    if (open == std::string_view::npos) return {id, -1};
    if (id.back() != ')') throw SchemaError("malformed mechanism id: " + std::string(id));
    std::string_view digits = id.substr(open + 1, id.size() - open - 2);
    int value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || value < 1) {
        throw SchemaError("mechanism agent parameter must be a positive integer: " +
                          std::string(id));
    }
    return {id.substr(0, open), value - 1};
}

std::vector<Rational> uniform_over(const std::vector<int>& agents, int n) {
    std::vector<Rational> probs(n, Rational(0));
    Rational share = Rational(1) / static_cast<int>(agents.size());
    for (int i : agents) probs[i] = share;
    return probs;
}

std::vector<int> all_agents(int n) {
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) out[i] = i;
    return out;
}

std::vector<int> positive_bidders(const std::vector<Rational>& bids) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(bids.size()); ++i) {
        if (bids[i] > 0) out.push_back(i);
    }
    return out;
}

// Members of `candidates` minimizing key(i).
template <typename Key>
std::vector<int> argmin(const std::vector<int>& candidates, Key key) {
    std::vector<int> best;
    for (int i : candidates) {
        if (best.empty()) {
            best = {i};
            continue;
        }
        auto current = key(i);
        auto incumbent = key(best.front());
        if (current < incumbent) {
            best = {i};
        } else if (current == incumbent) {
            best.push_back(i);
        }
    }
    return best;
}

} // namespace

bool Mechanism::wasteful() const {
    switch (kind) {
    case MechanismKind::MinimumUtility:
    case MechanismKind::Uniform:
    case MechanismKind::FixedAgent:
    case MechanismKind::RandomDictator:
        return true;
    default:
        return false;
    }
}

bool Mechanism::uses_declared_utility() const {
    switch (kind) {
    case MechanismKind::MinimumLike:
    case MechanismKind::MinimumUtility:
    case MechanismKind::MinLikeBiased:
        return true;
    default:
        return false;
    }
}

std::string Mechanism::id() const {
    switch (kind) {
    case MechanismKind::MinimumLike: return "minimum-like";
    case MechanismKind::MinimumUtility: return "minimum-utility";
    case MechanismKind::Like: return "like";
    case MechanismKind::BalancedLike: return "balanced-like";
    case MechanismKind::MaximumLike: return "maximum-like";
    case MechanismKind::Uniform: return "uniform";
    case MechanismKind::FixedAgent: return "fixed-agent(" + std::to_string(agent + 1) + ")";
    case MechanismKind::RandomDictator: return "random-dictator";
    case MechanismKind::MinLikeBiased:
        return "min-like-biased(" + std::to_string(agent + 1) + ")";
    case MechanismKind::FirstPositive: return "first-positive";
    }
    throw PreconditionError("unknown mechanism kind");
}

Mechanism Mechanism::parse(std::string_view id) {
    auto [name, agent] = split_id(id);
    auto plain = [&](MechanismKind kind) {
        if (agent != -1) throw SchemaError("mechanism takes no agent parameter: " + std::string(id));
        return Mechanism{kind, -1};
    };
    auto parameterized = [&](MechanismKind kind) {
        if (agent < 0) throw SchemaError("mechanism needs an agent parameter: " + std::string(id));
        return Mechanism{kind, agent};
    };
    if (name == "minimum-like") return plain(MechanismKind::MinimumLike);
    if (name == "minimum-utility") return plain(MechanismKind::MinimumUtility);
    if (name == "like") return plain(MechanismKind::Like);
    if (name == "balanced-like") return plain(MechanismKind::BalancedLike);
    if (name == "maximum-like") return plain(MechanismKind::MaximumLike);
    if (name == "uniform") return plain(MechanismKind::Uniform);
    if (name == "fixed-agent") return parameterized(MechanismKind::FixedAgent);
    if (name == "random-dictator") return plain(MechanismKind::RandomDictator);
    if (name == "min-like-biased") return parameterized(MechanismKind::MinLikeBiased);
    if (name == "first-positive") return plain(MechanismKind::FirstPositive);
    throw SchemaError("unknown mechanism id: " + std::string(id));
}

std::vector<Mechanism> builtin_nonwasteful() {
    return {
        {MechanismKind::MinimumLike, -1},
        {MechanismKind::Like, -1},
        {MechanismKind::BalancedLike, -1},
        {MechanismKind::MaximumLike, -1},
    };
}

std::vector<Mechanism> all_mechanisms(int agent_count) {
    std::vector<Mechanism> out = builtin_nonwasteful();
    out.push_back({MechanismKind::MinimumUtility, -1});
    out.push_back({MechanismKind::Uniform, -1});
    out.push_back({MechanismKind::RandomDictator, -1});
    for (int i = 0; i < agent_count; ++i) out.push_back({MechanismKind::FixedAgent, i});
    for (int i = 0; i < agent_count; ++i) out.push_back({MechanismKind::MinLikeBiased, i});
    out.push_back({MechanismKind::FirstPositive, -1});
    return out;
}

std::vector<Rational> round_probabilities(const Mechanism& mech, const MechanismState& state,
                                          const std::vector<Rational>& bids) {
    const int n = static_cast<int>(state.declared.size());
    if (static_cast<int>(bids.size()) != n || state.allocation.agent_count() != n) {
        throw PreconditionError("state and bid vector sizes disagree");
    }
    for (const Rational& b : bids) {
        if (b < 0) throw PreconditionError("bids must be nonnegative");
    }

    const std::vector<int> positives = positive_bidders(bids);
    // Non-wasteful rules pick among positive bidders and fall back to a
    // uniform draw over everyone when all bids are zero.
    auto over_positives = [&](std::vector<int> winners) {
        return uniform_over(winners.empty() ? all_agents(n) : winners, n);
    };
    auto declared_of = [&](int i) { return state.declared[i]; };

    switch (mech.kind) {
    case MechanismKind::MinimumLike:
        return over_positives(argmin(positives, declared_of));
    case MechanismKind::MinimumUtility:
        // Ignores the bids entirely: the item goes to a least-satisfied agent.
        return uniform_over(argmin(all_agents(n), declared_of), n);
    case MechanismKind::Like:
        return over_positives(positives);
    case MechanismKind::BalancedLike:
        return over_positives(
            argmin(positives, [&](int i) { return state.allocation.bundle(i).size(); }));
    case MechanismKind::MaximumLike:
        return over_positives(argmin(positives, [&](int i) { return -bids[i]; }));
    case MechanismKind::Uniform:
        return uniform_over(all_agents(n), n);
    case MechanismKind::FixedAgent:
        if (mech.agent < 0 || mech.agent >= n) {
            throw PreconditionError("fixed-agent parameter out of range");
        }
        return uniform_over({mech.agent}, n);
    case MechanismKind::RandomDictator: {
        // The dictator drawn at round 1 is identified by who holds o1.
        if (state.round() == 0) return uniform_over(all_agents(n), n);
        return uniform_over({state.allocation.owner_of(0)}, n);
    }
    case MechanismKind::MinLikeBiased: {
        if (mech.agent < 0 || mech.agent >= n) {
            throw PreconditionError("min-like-biased parameter out of range");
        }
        std::vector<int> winners = argmin(positives, declared_of);
        if (std::ranges::find(winners, mech.agent) != winners.end()) winners = {mech.agent};
        return over_positives(std::move(winners));
    }
    case MechanismKind::FirstPositive:
        return over_positives(positives.empty() ? positives
                                                : std::vector<int>{positives.front()});
    }
    throw PreconditionError("unknown mechanism kind");
}

} // namespace fairdiv
