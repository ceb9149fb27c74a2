#include "fairdiv/axioms.hpp"

#include "fairdiv/errors.hpp"
#include "fairdiv/lp.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace fairdiv {
namespace {

std::string plural(long long k, const char* noun) {
    return std::to_string(k) + " " + noun + (k == 1 ? "" : "s");
}

Rational bundle_value(const Problem& problem, int agent, ItemSet bundle) {
    return problem.utility(agent).value(bundle);
}

// Envy witness for the one-item-removal axioms, listing every residual
// u_i(π_k∖{o}).
EnvyWitness removal_witness(const Problem& problem, const Allocation& alloc, int i, int k) {
    EnvyWitness w;
    w.allocation = alloc;
    w.envious = i;
    w.envied = k;
    w.own_value = bundle_value(problem, i, alloc.bundle(i));
    w.other_value = bundle_value(problem, i, alloc.bundle(k));
    for (int item : alloc.bundle(k).items()) {
        w.residuals.emplace_back(item,
                                 bundle_value(problem, i, alloc.bundle(k).without(item)));
    }
    return w;
}

std::vector<Rational> profile_of(const Problem& problem, const Allocation& alloc) {
    std::vector<Rational> profile(problem.agent_count());
    for (int i = 0; i < problem.agent_count(); ++i) {
        profile[i] = bundle_value(problem, i, alloc.bundle(i));
    }
    return profile;
}

// True when `better` weakly improves every coordinate and strictly some.
bool profile_dominates(const std::vector<Rational>& better, const std::vector<Rational>& base) {
    bool strict = false;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (better[i] < base[i]) return false;
        if (better[i] > base[i]) strict = true;
    }
    return strict;
}

// The mechanisms whose outcome does not depend on the bids at all; for them
// every deviation search is exact and trivially empty.
bool bid_independent(const Mechanism& mech) {
    switch (mech.kind) {
    case MechanismKind::Uniform:
    case MechanismKind::FixedAgent:
    case MechanismKind::RandomDictator:
        return true;
    default:
        return false;
    }
}

// Exhaustive best response of a coalition over the misreport lattice, all
// other agents sincere. The objective is the sum of the members' expected
// utilities (their own bundles). Memoized over (round, allocation, members'
// accumulated declared utilities); the declared component is dropped for
// mechanisms that never read it.
class BestResponseSearch {
public:
    BestResponseSearch(const Problem& problem, const Mechanism& mech, std::vector<int> coalition,
                       std::vector<Rational> lattice)
        : problem_(problem),
          mech_(mech),
          coalition_(std::move(coalition)),
          lattice_(std::move(lattice)),
          track_declared_(mech.uses_declared_utility()) {}

    Rational best_value() {
        return value(Allocation(problem_.agent_count()),
                     std::vector<Rational>(coalition_.size(), Rational(0)));
    }

    // Deterministic optimal strategy: at every node reachable under it, the
    // first bid tuple (lattice order, members in index order) attaining the
    // node optimum; only non-sincere bids become overrides.
    StrategyProfile extract() {
        StrategyProfile strategy;
        walk(Allocation(problem_.agent_count()),
             std::vector<Rational>(coalition_.size(), Rational(0)), strategy);
        return strategy;
    }

private:
    using StateKey = std::tuple<std::vector<std::uint32_t>, std::vector<Rational>>;

    StateKey key_of(const Allocation& alloc, const std::vector<Rational>& member_declared) const {
        std::vector<std::uint32_t> masks(problem_.agent_count());
        for (int i = 0; i < problem_.agent_count(); ++i) masks[i] = alloc.bundle(i).mask();
        return {std::move(masks),
                track_declared_ ? member_declared : std::vector<Rational>{}};
    }

    int member_index(int agent) const {
        for (std::size_t c = 0; c < coalition_.size(); ++c) {
            if (coalition_[c] == agent) return static_cast<int>(c);
        }
        return -1;
    }

    Rational sincere_bid(int agent, int round, const Allocation& alloc) const {
        return problem_.utility(agent).marginal(alloc.bundle(agent), round);
    }

    // Full state for the mechanism: sincere agents' declared utility is their
    // true bundle value; members carry their accumulated declared bids.
    MechanismState state_of(const Allocation& alloc,
                            const std::vector<Rational>& member_declared) const {
        std::vector<Rational> declared(problem_.agent_count());
        for (int i = 0; i < problem_.agent_count(); ++i) {
            declared[i] = bundle_value(problem_, i, alloc.bundle(i));
        }
        for (std::size_t c = 0; c < coalition_.size(); ++c) {
            declared[coalition_[c]] = member_declared[c];
        }
        return {alloc, std::move(declared)};
    }

    // Expected coalition value of one joint bid tuple at a node.
    Rational tuple_value(const Allocation& alloc, const std::vector<Rational>& member_declared,
                         int round, const std::vector<Rational>& bids) {
        std::vector<Rational> probs = round_probabilities(mech_, state_of(alloc, member_declared), bids);
        Rational total = 0;
        for (int w = 0; w < problem_.agent_count(); ++w) {
            if (probs[w] == 0) continue;
            std::vector<Rational> next_declared = member_declared;
            if (int c = member_index(w); c >= 0) next_declared[c] += bids[w];
            total += probs[w] * value(alloc.give(w, round), next_declared);
        }
        return total;
    }

    // Joint bid tuples in deterministic order; sincere mechanisms that ignore
    // bids get the single sincere tuple.
    template <typename Visit>
    void for_each_tuple(int round, const Allocation& alloc, Visit visit) {
        std::vector<Rational> bids(problem_.agent_count());
        for (int i = 0; i < problem_.agent_count(); ++i) bids[i] = sincere_bid(i, round, alloc);
        if (bid_independent(mech_)) {
            visit(bids);
            return;
        }
        const std::size_t members = coalition_.size();
        std::vector<std::size_t> pick(members, 0);
        for (;;) {
            for (std::size_t c = 0; c < members; ++c) bids[coalition_[c]] = lattice_[pick[c]];
            visit(bids);
            std::size_t pos = members;
            while (pos > 0 && pick[pos - 1] + 1 == lattice_.size()) pick[--pos] = 0;
            if (pos == 0) break;
            ++pick[pos - 1];
        }
    }

    Rational value(const Allocation& alloc, const std::vector<Rational>& member_declared) {
        const int round = alloc.allocated_count();
        if (round == problem_.item_count()) {
            Rational total = 0;
            for (int c : coalition_) total += bundle_value(problem_, c, alloc.bundle(c));
            return total;
        }
        StateKey key = key_of(alloc, member_declared);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Rational best;
        bool first = true;
        for_each_tuple(round, alloc, [&](const std::vector<Rational>& bids) {
            Rational v = tuple_value(alloc, member_declared, round, bids);
            if (first || v > best) {
                best = std::move(v);
                first = false;
            }
        });
        memo_.emplace(std::move(key), best);
        return best;
    }

    void walk(const Allocation& alloc, const std::vector<Rational>& member_declared,
              StrategyProfile& strategy) {
        const int round = alloc.allocated_count();
        if (round == problem_.item_count()) return;
        Rational target = value(alloc, member_declared);
        std::vector<Rational> chosen;
        bool done = false;
        for_each_tuple(round, alloc, [&](const std::vector<Rational>& bids) {
            if (done) return;
            if (tuple_value(alloc, member_declared, round, bids) == target) {
                chosen = bids;
                done = true;
            }
        });
        for (int c : coalition_) {
            if (chosen[c] != sincere_bid(c, round, alloc)) {
                strategy.set(c, round, alloc, chosen[c]);
            }
        }
        std::vector<Rational> probs =
            round_probabilities(mech_, state_of(alloc, member_declared), chosen);
        for (int w = 0; w < problem_.agent_count(); ++w) {
            if (probs[w] == 0) continue;
            std::vector<Rational> next_declared = member_declared;
            if (int c = member_index(w); c >= 0) next_declared[c] += chosen[w];
            walk(alloc.give(w, round), next_declared, strategy);
        }
    }

    const Problem& problem_;
    const Mechanism& mech_;
    std::vector<int> coalition_;
    std::vector<Rational> lattice_;
    bool track_declared_;
    std::map<StateKey, Rational> memo_;
};

std::string lattice_scope(const Problem& problem, const std::vector<Rational>& lattice) {
    return "misreport lattice of " + plural(static_cast<long long>(lattice.size()), "candidate bid") +
           " per decision node over " + plural(problem.item_count(), "round");
}

} // namespace

bool ef_holds(const Problem& problem, const Allocation& alloc) {
    for (int i = 0; i < problem.agent_count(); ++i) {
        for (int k = 0; k < problem.agent_count(); ++k) {
            if (i == k) continue;
            if (bundle_value(problem, i, alloc.bundle(i)) <
                bundle_value(problem, i, alloc.bundle(k))) {
                return false;
            }
        }
    }
    return true;
}

bool ef1_holds(const Problem& problem, const Allocation& alloc) {
    for (int i = 0; i < problem.agent_count(); ++i) {
        for (int k = 0; k < problem.agent_count(); ++k) {
            if (i == k || alloc.bundle(k).empty()) continue;
            Rational own = bundle_value(problem, i, alloc.bundle(i));
            bool freed = false;
            for (int item : alloc.bundle(k).items()) {
                if (own >= bundle_value(problem, i, alloc.bundle(k).without(item))) {
                    freed = true;
                    break;
                }
            }
            if (!freed) return false;
        }
    }
    return true;
}

bool efx_holds(const Problem& problem, const Allocation& alloc) {
    for (int i = 0; i < problem.agent_count(); ++i) {
        for (int k = 0; k < problem.agent_count(); ++k) {
            if (i == k) continue;
            Rational own = bundle_value(problem, i, alloc.bundle(i));
            for (int item : alloc.bundle(k).items()) {
                if (bundle_value(problem, i, ItemSet::single(item)) <= 0) continue;
                if (own < bundle_value(problem, i, alloc.bundle(k).without(item))) return false;
            }
        }
    }
    return true;
}

Verdict check_efp(const Problem& problem, const AllocationDistribution& dist) {
    Verdict verdict{"efp", true, std::nullopt,
                    "all pairs across " + plural((long long)dist.support.size(), "support allocation")};
    for (const auto& [alloc, prob] : dist.support) {
        for (int i = 0; i < problem.agent_count(); ++i) {
            for (int k = 0; k < problem.agent_count(); ++k) {
                if (i == k) continue;
                Rational own = bundle_value(problem, i, alloc.bundle(i));
                Rational other = bundle_value(problem, i, alloc.bundle(k));
                if (own < other) {
                    verdict.holds = false;
                    verdict.witness = EnvyWitness{alloc, i, k, own, other, {}};
                    return verdict;
                }
            }
        }
    }
    return verdict;
}

Verdict check_efa(const Problem& problem, const AllocationDistribution& dist) {
    Verdict verdict{"efa", true, std::nullopt, "full expected-utility matrix"};
    auto matrix = expected_utilities(problem, dist);
    for (int i = 0; i < problem.agent_count(); ++i) {
        for (int k = 0; k < problem.agent_count(); ++k) {
            if (matrix[i][i] < matrix[i][k]) {
                verdict.holds = false;
                verdict.witness = EnvyWitness{std::nullopt, i, k, matrix[i][i], matrix[i][k], {}};
                return verdict;
            }
        }
    }
    return verdict;
}

Verdict check_ef1(const Problem& problem, const AllocationDistribution& dist) {
    Verdict verdict{"ef1", true, std::nullopt,
                    "all pairs and single-item removals across " +
                        plural((long long)dist.support.size(), "support allocation")};
    for (const auto& [alloc, prob] : dist.support) {
        for (int i = 0; i < problem.agent_count(); ++i) {
            for (int k = 0; k < problem.agent_count(); ++k) {
                if (i == k || alloc.bundle(k).empty()) continue;
                Rational own = bundle_value(problem, i, alloc.bundle(i));
                bool freed = false;
                for (int item : alloc.bundle(k).items()) {
                    if (own >= bundle_value(problem, i, alloc.bundle(k).without(item))) {
                        freed = true;
                        break;
                    }
                }
                if (!freed) {
                    verdict.holds = false;
                    verdict.witness = removal_witness(problem, alloc, i, k);
                    return verdict;
                }
            }
        }
    }
    return verdict;
}

Verdict check_efx(const Problem& problem, const AllocationDistribution& dist) {
    Verdict verdict{"efx", true, std::nullopt,
                    "all pairs and positively-valued removals across " +
                        plural((long long)dist.support.size(), "support allocation")};
    for (const auto& [alloc, prob] : dist.support) {
        for (int i = 0; i < problem.agent_count(); ++i) {
            for (int k = 0; k < problem.agent_count(); ++k) {
                if (i == k) continue;
                Rational own = bundle_value(problem, i, alloc.bundle(i));
                for (int item : alloc.bundle(k).items()) {
                    if (bundle_value(problem, i, ItemSet::single(item)) <= 0) continue;
                    if (own < bundle_value(problem, i, alloc.bundle(k).without(item))) {
                        verdict.holds = false;
                        verdict.witness = removal_witness(problem, alloc, i, k);
                        return verdict;
                    }
                }
            }
        }
    }
    return verdict;
}

Verdict check_pep(const Problem& problem, const AllocationDistribution& dist,
                  const CheckConfig& config) {
    std::vector<Allocation> all = enumerate_allocations(
        problem.agent_count(), problem.item_count(), config.enumeration_cap);
    Verdict verdict{"pep", true, std::nullopt,
                    plural((long long)all.size(), "candidate allocation") + " against " +
                        plural((long long)dist.support.size(), "support allocation")};
    for (const auto& [alloc, prob] : dist.support) {
        std::vector<Rational> base = profile_of(problem, alloc);
        for (const Allocation& other : all) {
            std::vector<Rational> candidate = profile_of(problem, other);
            if (profile_dominates(candidate, base)) {
                verdict.holds = false;
                verdict.witness = DominanceWitness{alloc, other, base, candidate};
                return verdict;
            }
        }
    }
    return verdict;
}

Verdict check_pea(const Problem& problem, const AllocationDistribution& dist,
                  const CheckConfig& config) {
    const int n = problem.agent_count();
    std::vector<Allocation> all = enumerate_allocations(
        problem.agent_count(), problem.item_count(), config.enumeration_cap);
    // Distinct deterministic utility profiles with their first representative.
    std::vector<std::vector<Rational>> profiles;
    std::vector<Allocation> representative;
    for (const Allocation& alloc : all) {
        std::vector<Rational> profile = profile_of(problem, alloc);
        if (std::ranges::find(profiles, profile) == profiles.end()) {
            profiles.push_back(std::move(profile));
            representative.push_back(alloc);
        }
    }
    const int h = static_cast<int>(profiles.size());

    std::vector<Rational> expected(n);
    auto matrix = expected_utilities(problem, dist);
    for (int i = 0; i < n; ++i) expected[i] = matrix[i][i];

    // Variables: q_1..q_h (mixture weights), s_1..s_n (per-agent surplus).
    // maximize Σs  s.t.  Σq = 1,  Σ_h q_h·profile_h[i] − s_i = expected_i.
    LpProblem lp;
    lp.objective.assign(h + n, Rational(0));
    for (int i = 0; i < n; ++i) lp.objective[h + i] = 1;
    LpRow simplex_row;
    simplex_row.coeffs.assign(h + n, Rational(0));
    for (int j = 0; j < h; ++j) simplex_row.coeffs[j] = 1;
    simplex_row.relation = Relation::Equal;
    simplex_row.rhs = 1;
    lp.rows.push_back(std::move(simplex_row));
    for (int i = 0; i < n; ++i) {
        LpRow row;
        row.coeffs.assign(h + n, Rational(0));
        for (int j = 0; j < h; ++j) row.coeffs[j] = profiles[j][i];
        row.coeffs[h + i] = -1;
        row.relation = Relation::Equal;
        row.rhs = expected[i];
        lp.rows.push_back(std::move(row));
    }
    LpResult result = lp_solve(lp);
    if (result.status != LpStatus::Optimal) {
        throw PreconditionError("ex-ante dominance LP must be feasible and bounded");
    }

    Verdict verdict{"pea", true, std::nullopt,
                    "exact LP over " + plural(h, "distinct deterministic utility profile")};
    if (result.objective_value > 0) {
        verdict.holds = false;
        MixtureWitness witness;
        witness.expected = expected;
        witness.total_slack = result.objective_value;
        witness.mixture_profile.assign(n, Rational(0));
        for (int j = 0; j < h; ++j) {
            if (result.solution[j] == 0) continue;
            witness.mixture.emplace_back(representative[j], result.solution[j]);
            for (int i = 0; i < n; ++i) {
                witness.mixture_profile[i] += result.solution[j] * profiles[j][i];
            }
        }
        verdict.witness = std::move(witness);
    }
    return verdict;
}

std::vector<Rational> misreport_lattice(const Problem& problem) {
    std::vector<Rational> values;
    for (int i = 0; i < problem.agent_count(); ++i) {
        const auto& u = problem.utility(i);
        const std::uint32_t limit = 1u << problem.item_count();
        for (std::uint32_t mask = 0; mask < limit; ++mask) {
            for (int item = 0; item < problem.item_count(); ++item) {
                if ((mask >> item) & 1u) continue;
                values.push_back(u.marginal(ItemSet{mask}, item));
            }
        }
    }
    std::ranges::sort(values);
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<Rational> lattice{Rational(0)};
    for (std::size_t v = 0; v < values.size(); ++v) {
        lattice.push_back(values[v]);
        if (v + 1 < values.size()) lattice.push_back((values[v] + values[v + 1]) / 2);
    }
    lattice.push_back(values.empty() ? Rational(1) : values.back() + 1);
    std::ranges::sort(lattice);
    lattice.erase(std::unique(lattice.begin(), lattice.end()), lattice.end());
    return lattice;
}

Verdict check_sp(const Problem& problem, const Mechanism& mech, const CheckConfig&) {
    if (bid_independent(mech)) {
        return {"sp", true, std::nullopt,
                "exact: the mechanism allocates independently of all bids"};
    }
    std::vector<Rational> lattice = misreport_lattice(problem);
    auto matrix = expected_utilities(problem, run(problem, mech));
    Verdict verdict{"sp", true, std::nullopt,
                    "per-agent best response, " + lattice_scope(problem, lattice) +
                        "; no violation found within lattice"};
    for (int i = 0; i < problem.agent_count(); ++i) {
        BestResponseSearch search(problem, mech, {i}, lattice);
        Rational best = search.best_value();
        if (best > matrix[i][i]) {
            verdict.holds = false;
            verdict.witness =
                ManipulationWitness{{i}, search.extract(), matrix[i][i], best, -1};
            verdict.search_scope = "per-agent best response, " + lattice_scope(problem, lattice);
            return verdict;
        }
    }
    return verdict;
}

Verdict check_osp(const Problem& problem, const Mechanism& mech, const CheckConfig&) {
    if (bid_independent(mech)) {
        return {"osp", true, std::nullopt,
                "exact: the mechanism allocates independently of all bids"};
    }
    std::vector<Rational> lattice = misreport_lattice(problem);
    const int n = problem.agent_count();
    long long nodes = 0;
    StrategyProfile sincere;
    for (int j = 0; j < problem.item_count(); ++j) {
        for (const EngineNode& node : expand(problem, mech, sincere, j)) {
            ++nodes;
            std::vector<Rational> bids(n);
            for (int i = 0; i < n; ++i) {
                bids[i] = problem.utility(i).marginal(node.allocation.bundle(i), j);
            }
            MechanismState state{node.allocation, node.declared};
            std::vector<Rational> sincere_probs = round_probabilities(mech, state, bids);
            for (int i = 0; i < n; ++i) {
                // One-round horizon: only whether i receives o_j matters.
                Rational keep = bundle_value(problem, i, node.allocation.bundle(i));
                Rational gain = bundle_value(problem, i, node.allocation.bundle(i).with(j));
                Rational sincere_value = keep + sincere_probs[i] * (gain - keep);
                for (const Rational& bid : lattice) {
                    if (bid == bids[i]) continue;
                    std::vector<Rational> deviated = bids;
                    deviated[i] = bid;
                    std::vector<Rational> probs = round_probabilities(mech, state, deviated);
                    Rational deviating_value = keep + probs[i] * (gain - keep);
                    if (deviating_value > sincere_value) {
                        StrategyProfile deviation;
                        deviation.set(i, j, node.allocation, bid);
                        return {"osp", false,
                                ManipulationWitness{{i}, deviation, sincere_value,
                                                    deviating_value, j},
                                "single-node deviations, " + lattice_scope(problem, lattice)};
                    }
                }
            }
        }
    }
    return {"osp", true, std::nullopt,
            "single-node deviations at " + plural(nodes, "sincerely reachable node") + ", " +
                lattice_scope(problem, lattice) + "; no violation found within lattice"};
}

Verdict check_gsp(const Problem& problem, const Mechanism& mech, const CheckConfig&) {
    if (bid_independent(mech)) {
        return {"gsp", true, std::nullopt,
                "exact: the mechanism allocates independently of all bids"};
    }
    std::vector<Rational> lattice = misreport_lattice(problem);
    auto matrix = expected_utilities(problem, run(problem, mech));
    const int n = problem.agent_count();

    // Nonempty coalitions by size, then lexicographically by members.
    std::vector<std::vector<int>> coalitions;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        coalitions.push_back(ItemSet{mask}.items());
    }
    std::ranges::sort(coalitions, [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });

    for (const std::vector<int>& coalition : coalitions) {
        Rational sincere_sum = 0;
        for (int c : coalition) sincere_sum += matrix[c][c];
        BestResponseSearch search(problem, mech, coalition, lattice);
        Rational best = search.best_value();
        if (best > sincere_sum) {
            return {"gsp", false,
                    ManipulationWitness{coalition, search.extract(), sincere_sum, best, -1},
                    "joint best response per coalition, " + lattice_scope(problem, lattice)};
        }
    }
    return {"gsp", true, std::nullopt,
            "all " + plural((1 << n) - 1, "nonempty coalition") + ", joint best response, " +
                lattice_scope(problem, lattice) + "; no violation found within lattice"};
}

Verdict check_axiom(const Problem& problem, const Mechanism& mech, const std::string& axiom,
                    const CheckConfig& config) {
    if (axiom == "sp") return check_sp(problem, mech, config);
    if (axiom == "osp") return check_osp(problem, mech, config);
    if (axiom == "gsp") return check_gsp(problem, mech, config);
    AllocationDistribution dist = run(problem, mech);
    if (axiom == "efp") return check_efp(problem, dist);
    if (axiom == "efa") return check_efa(problem, dist);
    if (axiom == "ef1") return check_ef1(problem, dist);
    if (axiom == "efx") return check_efx(problem, dist);
    if (axiom == "pep") return check_pep(problem, dist, config);
    if (axiom == "pea") return check_pea(problem, dist, config);
    throw SchemaError("unknown axiom: " + axiom);
}

} // namespace fairdiv
