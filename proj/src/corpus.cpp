#include "fairdiv/corpus.hpp"

#include "fairdiv/engine.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <random>

namespace fairdiv {
namespace {

std::vector<std::string> item_names(int m) {
    std::vector<std::string> names;
    for (int i = 1; i <= m; ++i) names.push_back("o" + std::to_string(i));
    return names;
}

Problem table_problem(int m, std::vector<std::vector<Rational>> tables) {
    std::vector<UtilityFunction> utilities;
    for (auto& t : tables) utilities.push_back(UtilityFunction::from_table(m, std::move(t)));
    return Problem(item_names(m), std::move(utilities));
}

Problem additive_problem(std::vector<std::vector<Rational>> values) {
    const int m = static_cast<int>(values.front().size());
    std::vector<UtilityFunction> utilities;
    for (auto& v : values) utilities.push_back(UtilityFunction::from_additive(std::move(v)));
    return Problem(item_names(m), std::move(utilities));
}

// Bundle table from a rule mapping each mask to its value; u(∅) = 0.
std::vector<Rational> table_by_rule(int m, const std::function<Rational(std::uint32_t)>& rule) {
    std::vector<Rational> table(std::size_t{1} << m, Rational(0));
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) table[mask] = rule(mask);
    return table;
}

Mechanism minimum_like() { return {MechanismKind::MinimumLike, -1}; }
Mechanism minimum_utility() { return {MechanismKind::MinimumUtility, -1}; }
Mechanism like() { return {MechanismKind::Like, -1}; }
Mechanism uniform() { return {MechanismKind::Uniform, -1}; }
Mechanism biased(int agent) { return {MechanismKind::MinLikeBiased, agent}; }

Expectation expect(Mechanism mech, CheckKind kind, bool expected, std::string note = "") {
    return {Expectation::Subject::SingleMechanism, mech, kind, expected, -1, std::move(note)};
}

Expectation expect_nonwasteful(CheckKind kind, bool expected, std::string note = "") {
    return {Expectation::Subject::AnyNonWasteful, std::nullopt, kind, expected, -1,
            std::move(note)};
}

Expectation expect_instance(CheckKind kind, bool expected, std::string note = "", int agent = -1) {
    return {Expectation::Subject::Instance, std::nullopt, kind, expected, agent, std::move(note)};
}

Fixture make_e1() {
    // Two agents whose marginal for o2 depends on who got o1.
    Problem problem = table_problem(2, {{0, 2, 4, 6}, {0, 5, 2, 5}});
    return {"E1", std::move(problem),
            {expect_instance(CheckKind::OfflineEf, true,
                             "giving each agent their preferred single item is envy-free")}};
}

Fixture make_t1() {
    // Identical 0/1-marginal utilities over three items; only {o2,o3} is worth 2.
    auto rule = [](std::uint32_t mask) -> Rational {
        int size = std::popcount(mask);
        if (size == 1) return 1;
        if (size == 2) return mask == 0b110u ? 2 : 1;
        return 2;
    };
    std::vector<Rational> table = table_by_rule(3, rule);
    Problem problem = table_problem(3, {table, table});
    return {"T1", std::move(problem),
            {
                expect(minimum_like(), CheckKind::Sp, false,
                       "a zero bid for o1 secures {o2,o3}, raising agent 1 from 3/2 to 2"),
                expect(minimum_utility(), CheckKind::Sp, false,
                       "a zero bid for o1 raises agent 1 from 5/4 to 13/8"),
                expect(uniform(), CheckKind::Sp, true, "bids never influence the outcome"),
                expect(minimum_like(), CheckKind::Osp, true,
                       "with the future unknown, dropping a positive bid only loses probability"),
                expect(minimum_utility(), CheckKind::Osp, true),
                expect(minimum_like(), CheckKind::Efa, true,
                       "identical utilities: both agents get each bundle equally often"),
            }};
}

Fixture make_t2() {
    // Agent 1 only values the whole pair; agent 2 values the items separately.
    Problem problem = table_problem(2, {{0, 0, 0, 1}, {0, 1, 1, 2}});
    return {"T2", std::move(problem),
            {
                expect_nonwasteful(CheckKind::Efp, false,
                                   "both items go to agent 2, so agent 1 envies ex post"),
                expect_nonwasteful(CheckKind::Efa, false,
                                   "the point mass on (∅,{o1,o2}) leaves expected envy"),
                expect_instance(CheckKind::OfflineEf, true,
                                "one item each is envy-free offline"),
            }};
}

Fixture make_t4() {
    // Identical 0/1-marginal utilities over four items: whoever takes o1 is
    // stuck at utility 1 while {o2,o3,o4} is worth 3.
    auto rule = [](std::uint32_t mask) -> Rational {
        int size = std::popcount(mask);
        if (size == 1) return 1;
        if (size == 2) return (mask & 1u) ? 1 : 2;
        if (size == 3) return mask == 0b1110u ? 3 : 2;
        return 3;
    };
    std::vector<Rational> table = table_by_rule(4, rule);
    Problem problem = table_problem(4, {table, table});
    return {"T4", std::move(problem),
            {
                expect_nonwasteful(CheckKind::Ef1, false,
                                   "the o1-taker envies {o2,o3,o4} even after any removal"),
                expect_instance(CheckKind::OfflineEf1, true, "two items each is EF1 offline"),
            }};
}

Fixture make_t5() {
    // Identical utilities engineered so every reachable ending gives both
    // agents utility 2 while ({o1,o2,o4},{o3}) is worth (3,2).
    auto rule = [](std::uint32_t mask) -> Rational {
        int size = std::popcount(mask);
        if (size == 1) return (mask == 0b0100u || mask == 0b1000u) ? 2 : 1;
        if (size == 2) return mask == 0b0011u ? 1 : 2;
        if (size == 3) return mask == 0b1011u ? 3 : 2;
        return 3;
    };
    std::vector<Rational> table = table_by_rule(4, rule);
    Problem problem = table_problem(4, {table, table});
    return {"T5", std::move(problem),
            {
                expect_nonwasteful(CheckKind::Pep, false,
                                   "every support allocation is dominated, e.g. by ({o1,o2,o4},{o3})"),
                expect_nonwasteful(CheckKind::Pea, false,
                                   "the expected profile (2,2) is dominated by (3,2)"),
                expect(biased(0), CheckKind::Pep, false),
                expect(biased(0), CheckKind::Pea, false),
                expect(biased(1), CheckKind::Pep, false),
                expect(biased(1), CheckKind::Pea, false),
            }};
}

Fixture make_t6a() {
    Problem problem = additive_problem({{50, 100, 100}, {100, 50, 100}});
    return {"T6a", std::move(problem),
            {
                expect_instance(CheckKind::NoEf1Continuation, false,
                                "once agent 1 takes o1, no EF1-respecting continuation ends EF1",
                                0),
                expect(like(), CheckKind::Sp, true, "additive utilities"),
            }};
}

Fixture make_t6b() {
    Problem problem = additive_problem({{50, 40, 410}, {100, 200, 200}});
    return {"T6b", std::move(problem),
            {
                expect_instance(CheckKind::NoEf1Continuation, false,
                                "once agent 2 takes o1, no EF1-respecting continuation ends EF1",
                                1),
            }};
}

Fixture make_t8() {
    Problem problem = additive_problem({{1, 2}, {1, 2}});
    return {"T8", std::move(problem),
            {
                expect(minimum_like(), CheckKind::Ef1, true),
                expect(minimum_like(), CheckKind::Sp, false,
                       "a zero bid for o1 secures o2, raising agent 1 from 3/2 to 2"),
                expect(biased(0), CheckKind::Sp, false,
                       "the favored agent zero-bids o1 to trade up from 1 to 2"),
                expect(biased(1), CheckKind::Sp, false,
                       "the favored agent zero-bids o1 to trade up from 1 to 2"),
            }};
}

Fixture make_t9() {
    // Identical utilities: singletons 1,2,3, every pair 4, everything 5.
    Problem problem = table_problem(3, {{0, 1, 2, 4, 3, 4, 4, 5}, {0, 1, 2, 4, 3, 4, 4, 5}});
    return {"T9", std::move(problem),
            {
                expect(minimum_like(), CheckKind::Ef1, true),
                expect(minimum_like(), CheckKind::Pep, false,
                       "({o1,o3},{o2}) is dominated by ({o1,o2},{o3})"),
                expect(minimum_like(), CheckKind::Pea, false,
                       "the expected profile (3,3) is dominated by (4,3)"),
                expect(minimum_like(), CheckKind::Osp, true),
            }};
}

Fixture make_t10() {
    Problem problem = additive_problem({{1, 2, 3}, {1, 2, 3}});
    return {"T10", std::move(problem),
            {
                expect_nonwasteful(CheckKind::Efx, false,
                                   "o1 and o2 split first, then any home for o3 breaks EFX"),
                expect(minimum_utility(), CheckKind::Efx, false),
                expect(minimum_like(), CheckKind::Ef1, true),
                expect_instance(CheckKind::OfflineEfx, true,
                                "({o1,o2},{o3}) and its mirror are EFX"),
            }};
}

template <typename Draw>
std::vector<Rational> random_monotone_table(int m, bool nonzero, bool zero_one, Draw&& draw) {
    const std::uint32_t size = 1u << m;
    std::vector<Rational> table(size, Rational(0));
    // Fill by bundle size so all one-item-smaller values are known.
    for (int level = 1; level <= m; ++level) {
        for (std::uint32_t mask = 1; mask < size; ++mask) {
            if (std::popcount(mask) != level) continue;
            Rational low = 0, high = 0;
            bool first = true;
            for (int item = 0; item < m; ++item) {
                if (!((mask >> item) & 1u)) continue;
                Rational below = table[mask & ~(1u << item)];
                if (first || below > low) low = below;
                if (first || below < high) high = below;
                first = false;
            }
            if (zero_one) {
                // Keep every one-item marginal in {0,1}: the value must lie in
                // [max below, min below + 1], a range of at most two integers.
                high += 1;
                if (nonzero) {
                    table[mask] = high; // forces every marginal to be exactly 1
                } else {
                    int span = Rational(high - low).convert_to<int>(); // 0 or 1
                    table[mask] = low + draw(span + 1);
                }
            } else {
                table[mask] = low + (nonzero ? 1 + draw(3) : draw(4));
            }
        }
    }
    return table;
}

} // namespace

std::string check_kind_name(CheckKind kind) {
    switch (kind) {
    case CheckKind::Efp: return "efp";
    case CheckKind::Efa: return "efa";
    case CheckKind::Ef1: return "ef1";
    case CheckKind::Efx: return "efx";
    case CheckKind::Pep: return "pep";
    case CheckKind::Pea: return "pea";
    case CheckKind::Sp: return "sp";
    case CheckKind::Osp: return "osp";
    case CheckKind::Gsp: return "gsp";
    case CheckKind::OfflineEf: return "offline-ef";
    case CheckKind::OfflineEf1: return "offline-ef1";
    case CheckKind::OfflineEfx: return "offline-efx";
    case CheckKind::NoEf1Continuation: return "no-ef1-continuation";
    }
    throw PreconditionError("unknown check kind");
}

std::vector<std::string> fixture_ids() {
    return {"E1", "T1", "T2", "T4", "T5", "T6a", "T6b", "T8", "T9", "T10"};
}

Fixture load_fixture(const std::string& id) {
    if (id == "E1") return make_e1();
    if (id == "T1") return make_t1();
    if (id == "T2") return make_t2();
    if (id == "T4") return make_t4();
    if (id == "T5") return make_t5();
    if (id == "T6a") return make_t6a();
    if (id == "T6b") return make_t6b();
    if (id == "T8") return make_t8();
    if (id == "T9") return make_t9();
    if (id == "T10") return make_t10();
    throw SchemaError("unknown fixture id: " + id);
}

Problem generate_random(const DomainFlags& target, int n, int m, std::uint64_t seed) {
    if (n < 1 || n > 3 || m < 1 || m > 5) {
        throw PreconditionError("generator supports 1 ≤ n ≤ 3, 1 ≤ m ≤ 5");
    }
    DomainFlags want = target;
    if (want.positive_additive) {
        want.additive = true;
        want.nonzero_marginals = true;
    }
    std::mt19937_64 rng(seed);
    auto draw = [&rng](int count) { return static_cast<int>(rng() % count); };

    auto one_utility = [&]() {
        if (want.additive) {
            std::vector<Rational> values(m);
            for (auto& v : values) {
                if (want.zero_one_marginals) {
                    v = want.nonzero_marginals ? 1 : draw(2);
                } else {
                    v = 1 + draw(4);
                }
            }
            return UtilityFunction::from_additive(std::move(values));
        }
        return UtilityFunction::from_table(
            m, random_monotone_table(m, want.nonzero_marginals, want.zero_one_marginals, draw));
    };

    std::vector<UtilityFunction> utilities;
    utilities.push_back(one_utility());
    for (int i = 1; i < n; ++i) {
        utilities.push_back(want.identical ? utilities.front() : one_utility());
    }
    return Problem(item_names(m), std::move(utilities));
}

std::vector<Allocation> ef1_prefix_consistent_finals(const Problem& problem, int first_agent) {
    if (problem.item_count() < 1 || first_agent < 0 || first_agent >= problem.agent_count()) {
        throw PreconditionError("ef1_prefix_consistent_finals arguments out of range");
    }
    std::vector<Allocation> frontier;
    Allocation start = Allocation(problem.agent_count()).give(first_agent, 0);
    if (problem.item_count() == 1) return {start};
    if (ef1_holds(problem, start)) frontier.push_back(start);
    for (int j = 1; j < problem.item_count(); ++j) {
        const bool last = j + 1 == problem.item_count();
        std::vector<Allocation> next;
        for (const Allocation& alloc : frontier) {
            for (int agent = 0; agent < problem.agent_count(); ++agent) {
                Allocation child = alloc.give(agent, j);
                // Intermediate prefixes must stay EF1 (the sequence could end
                // there); the final round is collected unconditionally.
                if (last || ef1_holds(problem, child)) next.push_back(child);
            }
        }
        frontier = std::move(next);
    }
    return frontier;
}

std::vector<ExpectationResult> run_fixture_expectations(const Fixture& fixture) {
    std::vector<ExpectationResult> results;
    auto observe = [&](CheckKind kind, const Mechanism* mech) {
        switch (kind) {
        case CheckKind::OfflineEf:
            return offline_exists(fixture.problem, OfflineProperty::EF).has_value();
        case CheckKind::OfflineEf1:
            return offline_exists(fixture.problem, OfflineProperty::EF1).has_value();
        case CheckKind::OfflineEfx:
            return offline_exists(fixture.problem, OfflineProperty::EFX).has_value();
        default:
            return check_axiom(fixture.problem, *mech, check_kind_name(kind)).holds;
        }
    };
    for (const Expectation& expectation : fixture.expectations) {
        if (expectation.kind == CheckKind::NoEf1Continuation) {
            bool ef1_ending = false;
            for (const Allocation& ending :
                 ef1_prefix_consistent_finals(fixture.problem, expectation.agent)) {
                if (ef1_holds(fixture.problem, ending)) {
                    ef1_ending = true;
                    break;
                }
            }
            results.push_back({fixture.id, "", check_kind_name(expectation.kind),
                               expectation.expected, ef1_ending,
                               ef1_ending == expectation.expected, expectation.note});
            continue;
        }
        std::vector<Mechanism> mechanisms;
        if (expectation.subject == Expectation::Subject::SingleMechanism) {
            mechanisms.push_back(*expectation.mechanism);
        } else if (expectation.subject == Expectation::Subject::AnyNonWasteful) {
            mechanisms = builtin_nonwasteful();
        }
        if (mechanisms.empty()) {
            bool observed = observe(expectation.kind, nullptr);
            results.push_back({fixture.id, "", check_kind_name(expectation.kind),
                               expectation.expected, observed,
                               observed == expectation.expected, expectation.note});
            continue;
        }
        for (const Mechanism& mech : mechanisms) {
            bool observed = observe(expectation.kind, &mech);
            results.push_back({fixture.id, mech.id(), check_kind_name(expectation.kind),
                               expectation.expected, observed,
                               observed == expectation.expected, expectation.note});
        }
    }
    return results;
}

} // namespace fairdiv
