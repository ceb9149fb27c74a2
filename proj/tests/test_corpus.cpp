#include "fairdiv/corpus.hpp"
#include "fairdiv/engine.hpp"
#include "fairdiv/errors.hpp"

#include "doctest.h"

#include <set>

using namespace fairdiv;

TEST_CASE("fixtures load and are well formed") {
    CHECK(fixture_ids().size() == 10);
    for (const std::string& id : fixture_ids()) {
        Fixture fixture = load_fixture(id);
        CHECK(fixture.id == id);
        fixture.problem.require_valid();
        CHECK(!fixture.expectations.empty());
    }
    CHECK_THROWS_AS(load_fixture("T3"), SchemaError);
}

TEST_CASE("fixture utilities match their defining values") {
    // Spot checks of the encoded tables, one value per fixture.
    CHECK(load_fixture("E1").problem.utility(0).marginal(ItemSet::single(0), 1) == Rational(4));
    CHECK(load_fixture("E1").problem.utility(1).value(ItemSet::single(1)) == Rational(2));
    CHECK(load_fixture("T1").problem.utility(0).value(ItemSet{0b110u}) == Rational(2));
    CHECK(load_fixture("T2").problem.utility(0).value(ItemSet::full(2)) == Rational(1));
    CHECK(load_fixture("T4").problem.utility(1).value(ItemSet{0b1110u}) == Rational(3));
    CHECK(load_fixture("T5").problem.utility(0).value(ItemSet{0b0011u}) == Rational(1));
    CHECK(load_fixture("T6a").problem.utility(0).value(ItemSet::single(1)) == Rational(100));
    CHECK(load_fixture("T6b").problem.utility(1).value(ItemSet::single(2)) == Rational(200));
    CHECK(load_fixture("T8").problem.utility(1).value(ItemSet::single(1)) == Rational(2));
    CHECK(load_fixture("T9").problem.utility(0).marginal(ItemSet::single(0), 1) == Rational(3));
    CHECK(load_fixture("T10").problem.utility(0).value(ItemSet::full(3)) == Rational(6));

    DomainFlags t9 = classify(load_fixture("T9").problem);
    CHECK(t9.identical);
    CHECK(t9.nonzero_marginals);
    CHECK(!t9.additive);
}

TEST_CASE("every recorded expectation holds") {
    for (const std::string& id : fixture_ids()) {
        Fixture fixture = load_fixture(id);
        for (const ExpectationResult& result : run_fixture_expectations(fixture)) {
            CAPTURE(result.fixture);
            CAPTURE(result.mechanism);
            CAPTURE(result.check);
            CHECK(result.passed);
        }
    }
}

TEST_CASE("random generation is deterministic and respects requested flags") {
    for (unsigned seed = 0; seed < 40; ++seed) {
        DomainFlags request;
        request.identical = seed % 2 == 0;
        request.additive = seed % 3 == 0;
        request.nonzero_marginals = seed % 5 == 0;
        request.zero_one_marginals = seed % 7 == 0;
        int n = 1 + static_cast<int>(seed % 3);
        int m = 1 + static_cast<int>(seed % 5);
        Problem a = generate_random(request, n, m, seed);
        Problem b = generate_random(request, n, m, seed);
        REQUIRE(a.agent_count() == n);
        REQUIRE(a.item_count() == m);
        for (int i = 0; i < n; ++i) {
            CAPTURE(seed);
            CHECK(a.utility(i).same_values(b.utility(i)));
        }
        CHECK(!a.find_violation().has_value());

        // Requested flags are lower bounds on what classify() reports.
        DomainFlags got = classify(a);
        if (request.identical) CHECK(got.identical);
        if (request.additive) CHECK(got.additive);
        if (request.nonzero_marginals) CHECK(got.nonzero_marginals);
        if (request.zero_one_marginals) CHECK(got.zero_one_marginals);
    }

    // positive_additive is additive with every item value positive.
    DomainFlags positive;
    positive.positive_additive = true;
    for (unsigned seed = 0; seed < 10; ++seed) {
        Problem p = generate_random(positive, 2, 3, seed);
        DomainFlags got = classify(p);
        CHECK(got.positive_additive);
        CHECK(got.additive);
        CHECK(got.nonzero_marginals);
    }

    // Different seeds must eventually produce different problems.
    std::set<std::string> seen;
    for (unsigned seed = 0; seed < 20; ++seed) {
        Problem p = generate_random(DomainFlags{}, 2, 3, seed);
        std::string key;
        for (int i = 0; i < 2; ++i) {
            for (std::uint32_t mask = 0; mask < 8; ++mask) {
                key += format_rational(p.utility(i).value(ItemSet{mask})) + ",";
            }
        }
        seen.insert(key);
    }
    CHECK(seen.size() > 10);

    CHECK_THROWS_AS(generate_random(DomainFlags{}, 0, 2, 1), PreconditionError);
    CHECK_THROWS_AS(generate_random(DomainFlags{}, 2, 6, 1), PreconditionError);
}

TEST_CASE("forced-first-item continuations") {
    // Additive values (50,100,100) vs (100,50,100): once agent 1 holds o1,
    // every continuation that keeps each prefix EF1 still ends with envy
    // beyond one item somewhere.
    Problem t6a = load_fixture("T6a").problem;
    auto endings = ef1_prefix_consistent_finals(t6a, 0);
    CHECK(!endings.empty());
    for (const Allocation& ending : endings) {
        CHECK(ending.allocated() == ItemSet::full(3));
        CHECK(ending.owner_of(0) == 0);
        CHECK(!ef1_holds(t6a, ending));
    }

    // The same tables admit EF1 endings when agent 2 takes o1 instead;
    // the paired instance T6b closes that branch with different utilities.
    auto other_branch = ef1_prefix_consistent_finals(t6a, 1);
    bool some_ef1 = false;
    for (const Allocation& ending : other_branch) {
        some_ef1 = some_ef1 || ef1_holds(t6a, ending);
    }
    CHECK(some_ef1);

    Problem t6b = load_fixture("T6b").problem;
    for (const Allocation& ending : ef1_prefix_consistent_finals(t6b, 1)) {
        CHECK(!ef1_holds(t6b, ending));
    }

    // On a trivially fair instance every continuation is fine.
    Problem t8 = load_fixture("T8").problem;
    bool all_reached_ef1 = false;
    for (const Allocation& ending : ef1_prefix_consistent_finals(t8, 0)) {
        all_reached_ef1 = all_reached_ef1 || ef1_holds(t8, ending);
    }
    CHECK(all_reached_ef1);
}

TEST_CASE("expectation results carry their context") {
    Fixture t1 = load_fixture("T1");
    auto results = run_fixture_expectations(t1);
    REQUIRE(results.size() == t1.expectations.size());
    CHECK(results[0].fixture == "T1");
    CHECK(results[0].mechanism == "minimum-like");
    CHECK(results[0].check == "sp");
    CHECK(!results[0].expected);
    CHECK(!results[0].observed);
    CHECK(results[0].passed);
    CHECK(!results[0].note.empty());
}
