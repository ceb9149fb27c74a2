#include "fairdiv/lp.hpp"

#include "fairdiv/errors.hpp"

namespace fairdiv {
namespace {

// Dense rational tableau kept in canonical form: every basic column is a unit
// column, so reduced costs can be read off directly.
class Tableau {
public:
    explicit Tableau(const LpProblem& lp) : structural_(static_cast<int>(lp.objective.size())) {
        const int m = static_cast<int>(lp.rows.size());
        for (const LpRow& row : lp.rows) {
            if (static_cast<int>(row.coeffs.size()) != structural_) {
                throw PreconditionError("LP row width disagrees with objective");
            }
        }
        // Column layout: structural vars, then one slack/surplus per
        // inequality, then one artificial per row that needs one.
        int slack_count = 0;
        for (const LpRow& row : lp.rows) {
            if (row.relation != Relation::Equal) ++slack_count;
        }
        int next_slack = structural_;
        int next_artificial = structural_ + slack_count;
        columns_ = next_artificial; // artificials appended below as needed
        rows_.assign(m, {});
        rhs_.assign(m, Rational(0));
        basis_.assign(m, -1);
        for (int r = 0; r < m; ++r) {
            const LpRow& row = lp.rows[r];
            rows_[r].assign(columns_, Rational(0));
            for (int j = 0; j < structural_; ++j) rows_[r][j] = row.coeffs[j];
            rhs_[r] = row.rhs;
            // Normalize to nonnegative right-hand side first.
            Relation rel = row.relation;
            if (rhs_[r] < 0) {
                for (auto& a : rows_[r]) a = -a;
                rhs_[r] = -rhs_[r];
                if (rel == Relation::LessEq) rel = Relation::GreaterEq;
                else if (rel == Relation::GreaterEq) rel = Relation::LessEq;
            }
            if (rel == Relation::LessEq) {
                rows_[r][next_slack] = 1;
                basis_[r] = next_slack++;
            } else if (rel == Relation::GreaterEq) {
                rows_[r][next_slack++] = -1;
                basis_[r] = add_artificial(r);
            } else {
                basis_[r] = add_artificial(r);
            }
        }
        if (first_artificial_ == -1) first_artificial_ = columns_;
    }

    int structural() const { return structural_; }
    int columns() const { return columns_; }
    int first_artificial() const { return first_artificial_; }
    bool is_artificial(int col) const { return col >= first_artificial_; }

    // Maximizes cost·(all columns); returns false on unboundedness.
    bool maximize(const std::vector<Rational>& cost) {
        for (;;) {
            int entering = -1;
            for (int j = 0; j < columns_; ++j) {
                if (banned_[j] || basic_col_[j]) continue;
                if (reduced_cost(cost, j) > 0) {
                    entering = j;
                    break; // Bland: lowest eligible index
                }
            }
            if (entering == -1) return true;
            int leaving = -1;
            Rational best_ratio;
            for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
                if (rows_[r][entering] <= 0) continue;
                Rational ratio = rhs_[r] / rows_[r][entering];
                if (leaving == -1 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[r] < basis_[leaving])) {
                    leaving = r;
                    best_ratio = ratio;
                }
            }
            if (leaving == -1) return false;
            pivot(leaving, entering);
        }
    }

    Rational objective_at(const std::vector<Rational>& cost) const {
        Rational total = 0;
        for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
            total += cost[basis_[r]] * rhs_[r];
        }
        return total;
    }

    // After phase 1, force remaining artificial columns out of the basis
    // (pivoting on any usable column) or drop the now-redundant row.
    void purge_artificials() {
        for (int r = static_cast<int>(rows_.size()) - 1; r >= 0; --r) {
            if (!is_artificial(basis_[r])) continue;
            int col = -1;
            for (int j = 0; j < first_artificial_; ++j) {
                if (!banned_[j] && rows_[r][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col != -1) {
                pivot(r, col);
            } else {
                drop_row(r);
            }
        }
        for (int j = first_artificial_; j < columns_; ++j) banned_[j] = true;
    }

    std::vector<Rational> solution() const {
        std::vector<Rational> x(structural_, Rational(0));
        for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
            if (basis_[r] < structural_) x[basis_[r]] = rhs_[r];
        }
        return x;
    }

    // Phase objectives, sized to the final column count.
    std::vector<Rational> phase1_cost() const {
        std::vector<Rational> cost(columns_, Rational(0));
        for (int j = first_artificial_; j < columns_; ++j) cost[j] = -1;
        return cost;
    }
    std::vector<Rational> phase2_cost(const LpProblem& lp) const {
        std::vector<Rational> cost(columns_, Rational(0));
        for (int j = 0; j < structural_; ++j) cost[j] = lp.objective[j];
        return cost;
    }

    void finalize_columns() {
        banned_.assign(columns_, false);
        basic_col_.assign(columns_, false);
        for (int b : basis_) basic_col_[b] = true;
    }

private:
    int add_artificial(int row) {
        int col = columns_++;
        if (first_artificial_ == -1 || first_artificial_ > col) first_artificial_ = col;
        for (auto& r : rows_) r.push_back(Rational(0));
        rows_[row][col] = 1;
        return col;
    }

    Rational reduced_cost(const std::vector<Rational>& cost, int j) const {
        Rational z = 0;
        for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
            if (cost[basis_[r]] != 0) z += cost[basis_[r]] * rows_[r][j];
        }
        return cost[j] - z;
    }

    void pivot(int row, int col) {
        Rational inv = rows_[row][col];
        for (auto& a : rows_[row]) a /= inv;
        rhs_[row] /= inv;
        for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
            if (r == row || rows_[r][col] == 0) continue;
            Rational factor = rows_[r][col];
            for (int j = 0; j < columns_; ++j) rows_[r][j] -= factor * rows_[row][j];
            rhs_[r] -= factor * rhs_[row];
        }
        basic_col_[basis_[row]] = false;
        basic_col_[col] = true;
        basis_[row] = col;
    }

    void drop_row(int row) {
        basic_col_[basis_[row]] = false;
        rows_.erase(rows_.begin() + row);
        rhs_.erase(rhs_.begin() + row);
        basis_.erase(basis_.begin() + row);
    }

    int structural_ = 0;
    int columns_ = 0;
    int first_artificial_ = -1;
    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> rhs_;
    std::vector<int> basis_;
    std::vector<bool> banned_;
    std::vector<bool> basic_col_;
};

} // namespace

LpResult lp_solve(const LpProblem& lp) {
    Tableau tableau(lp);
    tableau.finalize_columns();

    if (tableau.first_artificial() != -1 && tableau.first_artificial() < tableau.columns()) {
        std::vector<Rational> cost = tableau.phase1_cost();
        tableau.maximize(cost); // bounded: objective is ≤ 0 by construction
        if (tableau.objective_at(cost) != 0) return {LpStatus::Infeasible, 0, {}};
        tableau.purge_artificials();
    }

    std::vector<Rational> cost = tableau.phase2_cost(lp);
    if (!tableau.maximize(cost)) return {LpStatus::Unbounded, 0, {}};
    return {LpStatus::Optimal, tableau.objective_at(cost), tableau.solution()};
}

} // namespace fairdiv
