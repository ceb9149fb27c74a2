#pragma once

#include "fairdiv/rational.hpp"

#include <vector>

namespace fairdiv {

enum class Relation { LessEq, Equal, GreaterEq };

struct LpRow {
    std::vector<Rational> coeffs;
    Relation relation = Relation::LessEq;
    Rational rhs;
};

/// maximize objective·x subject to the rows, x ≥ 0.
struct LpProblem {
    std::vector<Rational> objective;
    std::vector<LpRow> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational objective_value;       // meaningful only when Optimal
    std::vector<Rational> solution; // meaningful only when Optimal
};

/// Exact two-phase dense simplex over rationals, Bland's rule (no cycling).
LpResult lp_solve(const LpProblem& lp);

} // namespace fairdiv
