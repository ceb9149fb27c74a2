#pragma once

#include "fairdiv/axioms.hpp"
#include "fairdiv/mechanism.hpp"
#include "fairdiv/problem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fairdiv {

/// What a fixture expectation checks.
enum class CheckKind {
    Efp,
    Efa,
    Ef1,
    Efx,
    Pep,
    Pea,
    Sp,
    Osp,
    Gsp,
    OfflineEf,         // a full envy-free allocation exists
    OfflineEf1,        // a full EF1 allocation exists
    OfflineEfx,        // a full EFX allocation exists
    NoEf1Continuation, // forcing o1 to `agent` admits no EF1-consistent ending
};

std::string check_kind_name(CheckKind kind);

/// A recorded verdict for one fixture. `subject` decides how many concrete
/// checks the expectation expands to.
struct Expectation {
    enum class Subject { SingleMechanism, AnyNonWasteful, Instance };

    Subject subject = Subject::Instance;
    std::optional<Mechanism> mechanism; // set when subject == SingleMechanism
    CheckKind kind = CheckKind::Efp;
    bool expected = false;
    int agent = -1; // NoEf1Continuation: forced recipient of o1 (0-based)
    std::string note;
};

struct Fixture {
    std::string id;
    Problem problem;
    std::vector<Expectation> expectations;
};

std::vector<std::string> fixture_ids();
Fixture load_fixture(const std::string& id); // SchemaError on unknown ids

/// Deterministic generator for desk-scale problems (n ≤ 3, m ≤ 5). The
/// requested flags are lower bounds: classify() of the result covers every
/// requested flag (it may satisfy more).
Problem generate_random(const DomainFlags& target, int n, int m, std::uint64_t seed);

/// Full allocations reachable when o1 is forced to `first_agent` and every
/// intermediate prefix allocation stays EF1 (the ending itself may or may not
/// be EF1 — that is what the caller inspects).
std::vector<Allocation> ef1_prefix_consistent_finals(const Problem& problem, int first_agent);

struct ExpectationResult {
    std::string fixture;
    std::string mechanism; // empty for instance-level checks
    std::string check;
    bool expected = false;
    bool observed = false;
    bool passed = false;
    std::string note;
};

std::vector<ExpectationResult> run_fixture_expectations(const Fixture& fixture);

} // namespace fairdiv
