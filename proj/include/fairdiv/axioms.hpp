#pragma once

#include "fairdiv/engine.hpp"
#include "fairdiv/oracles.hpp"
#include "fairdiv/strategy.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fairdiv {

/// Ex-post or ex-ante envy: `envious` prefers `envied`'s bundle. For the
/// one-item-removal axioms, `residuals` lists u_i(π_k∖{o}) for every item o
/// of the envied bundle.
struct EnvyWitness {
    std::optional<Allocation> allocation; // absent for expected-value envy
    int envious = -1;
    int envied = -1;
    Rational own_value;
    Rational other_value;
    std::vector<std::pair<int, Rational>> residuals;
};

/// A support allocation Pareto-dominated by another deterministic allocation.
struct DominanceWitness {
    Allocation dominated;
    Allocation dominating;
    std::vector<Rational> dominated_profile;
    std::vector<Rational> dominating_profile;
};

/// The expected-utility profile dominated by a mixture of deterministic
/// allocations; `total_slack` is the LP optimum (sum of per-agent gains).
struct MixtureWitness {
    std::vector<Rational> expected;
    std::vector<std::pair<Allocation, Rational>> mixture;
    std::vector<Rational> mixture_profile;
    Rational total_slack;
};

/// A profitable deviation: the coalition (a single agent for SP/OSP) changes
/// some bids and strictly raises its objective. For OSP, `horizon` is the
/// 0-based round whose one-round-lookahead value increases; -1 otherwise.
struct ManipulationWitness {
    std::vector<int> coalition;
    StrategyProfile deviation;
    Rational sincere_value;
    Rational deviating_value;
    int horizon = -1;
};

using Witness = std::variant<EnvyWitness, DominanceWitness, MixtureWitness, ManipulationWitness>;

struct Verdict {
    std::string axiom;
    bool holds = false;
    std::optional<Witness> witness; // present iff !holds; independently re-checkable
    std::string search_scope;       // what was searched, incl. any bound
};

struct CheckConfig {
    long long enumeration_cap = kDefaultEnumerationCap; // bound on n^m enumerations
};

// Per-allocation predicates behind the ex-post checks.
bool ef_holds(const Problem& problem, const Allocation& alloc);
bool ef1_holds(const Problem& problem, const Allocation& alloc);
bool efx_holds(const Problem& problem, const Allocation& alloc);

// Fairness and efficiency of a returned distribution.
Verdict check_efp(const Problem& problem, const AllocationDistribution& dist);
Verdict check_efa(const Problem& problem, const AllocationDistribution& dist);
Verdict check_ef1(const Problem& problem, const AllocationDistribution& dist);
Verdict check_efx(const Problem& problem, const AllocationDistribution& dist);
Verdict check_pep(const Problem& problem, const AllocationDistribution& dist,
                  const CheckConfig& config = {});
Verdict check_pea(const Problem& problem, const AllocationDistribution& dist,
                  const CheckConfig& config = {});

/// Candidate declared values for deviation searches: 0, every distinct
/// marginal value occurring anywhere in the problem, the midpoints of
/// consecutive distinct values, and one value above the maximum. The
/// mechanisms compare bids only by zero/positive and by order among
/// accumulated sums, so this finite set covers every behaviorally distinct
/// bid at desk scale; verdicts still report it as a bounded search.
std::vector<Rational> misreport_lattice(const Problem& problem);

// Incentive checks on the mechanism's full decision tree.
Verdict check_sp(const Problem& problem, const Mechanism& mech, const CheckConfig& config = {});
Verdict check_osp(const Problem& problem, const Mechanism& mech, const CheckConfig& config = {});
Verdict check_gsp(const Problem& problem, const Mechanism& mech, const CheckConfig& config = {});

/// Runs the named check; `axiom` ∈ {efp, efa, ef1, efx, pep, pea, sp, osp,
/// gsp}. Distribution-based checks run the mechanism sincerely first.
Verdict check_axiom(const Problem& problem, const Mechanism& mech, const std::string& axiom,
                    const CheckConfig& config = {});

} // namespace fairdiv
