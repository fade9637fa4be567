#pragma once

// Exact linear programming over the rationals: a dense two-phase tableau
// simplex with Bland's rule, so termination is guaranteed and every reported
// number is exact. Problems are stated over nonnegative variables:
//
//   optimize c^T x  subject to  A x (<= | >= | =) b,  x >= 0.
//
// Alongside the primal solution the solver reports row multipliers y:
//   * status Optimal: y are the dual values. Strong duality y^T b = objective
//     holds, and dual feasibility reads y^T A_j <= c_j for minimization and
//     y^T A_j >= c_j for maximization, with equality on columns where x_j > 0.
//   * status Infeasible: y is a Farkas certificate: y^T A_j <= 0 for every
//     column j, y^T b > 0, with y_i <= 0 on <= rows and y_i >= 0 on >= rows.
//     Any x >= 0 satisfying the constraints would force y^T A x = y^T b on
//     equality rows (and the matching inequalities otherwise), a contradiction.
//   * status Unbounded: x and y are not meaningful.

#include <vector>

#include "hmstab/matrix.hpp"

namespace hmstab {

enum class Rel { LE, GE, EQ };

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status{LpStatus::Optimal};
    Rational objective{0};
    VectorXq x; // primal values, one per column of A
    VectorXq y; // dual values or Farkas certificate, one per row of A
};

namespace detail {

struct Tableau {
    MatrixXq t;              // rows 0..m-1 constraints, row m reduced costs; last col rhs
    std::vector<int> basis;  // basic column per constraint row
    std::vector<int> row_id; // caller row index per tableau row (rows may be dropped)

    Eigen::Index rows() const { return t.rows() - 1; }
    Eigen::Index cols() const { return t.cols() - 1; }

    void pivot(Eigen::Index r, Eigen::Index c) {
        t.row(r) /= t(r, c);
        for (Eigen::Index i = 0; i < t.rows(); ++i) {
            if (i == r || is_zero(t(i, c))) continue;
            t.row(i) -= t(i, c) * t.row(r);
        }
        basis[static_cast<size_t>(r)] = static_cast<int>(c);
    }

    enum class Step { Improved, Done, Unbounded };

    // Bland: entering = least column with negative reduced cost, leaving = the
    // ratio-test row whose basic column index is least.
    Step step(const std::vector<char>& allowed) {
        const Eigen::Index m = rows(), n = cols();
        Eigen::Index enter = -1;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!allowed[static_cast<size_t>(j)]) continue;
            if (t(m, j) < 0) { enter = j; break; }
        }
        if (enter < 0) return Step::Done;
        Eigen::Index leave = -1;
        Rational best(0);
        for (Eigen::Index i = 0; i < m; ++i) {
            if (!(t(i, enter) > 0)) continue;
            Rational ratio = t(i, n) / t(i, enter);
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[static_cast<size_t>(i)] <
                                      basis[static_cast<size_t>(leave)])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) return Step::Unbounded;
        pivot(leave, enter);
        return Step::Improved;
    }
};

} // namespace detail

inline LpResult solve_lp(const MatrixXq& a_in, const VectorXq& b_in, const VectorXq& c,
                         const std::vector<Rel>& rel_in, bool maximize = false) {
    const Eigen::Index m = a_in.rows(), n = a_in.cols();
    if (m < 1 || n < 1) throw DomainError("lp needs at least one row and one column");
    if (b_in.size() != m || c.size() != n || static_cast<Eigen::Index>(rel_in.size()) != m)
        throw DomainError("lp dimension mismatch");

    // Normalize to b >= 0 (negating rows flips the relation) and remember the
    // sign flip so reported multipliers refer to the caller's rows.
    MatrixXq a = a_in;
    VectorXq b = b_in;
    std::vector<Rel> rel = rel_in;
    std::vector<int> row_sign(static_cast<size_t>(m), 1);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (b(i) < 0) {
            a.row(i) = -a.row(i);
            b(i) = -b(i);
            if (rel[static_cast<size_t>(i)] == Rel::LE) rel[static_cast<size_t>(i)] = Rel::GE;
            else if (rel[static_cast<size_t>(i)] == Rel::GE) rel[static_cast<size_t>(i)] = Rel::LE;
            row_sign[static_cast<size_t>(i)] = -1;
        }
    }

    // Column layout: original | one slack per inequality | one artificial per
    // row that lacks a +e_i column (>= and = rows). The +e_i column of each
    // row (slack for <=, artificial otherwise) doubles as the handle for
    // reading multipliers at the end.
    std::vector<Eigen::Index> slack_col(static_cast<size_t>(m), -1);
    std::vector<Eigen::Index> art_col(static_cast<size_t>(m), -1);
    Eigen::Index total = n;
    for (Eigen::Index i = 0; i < m; ++i)
        if (rel[static_cast<size_t>(i)] != Rel::EQ) slack_col[static_cast<size_t>(i)] = total++;
    for (Eigen::Index i = 0; i < m; ++i)
        if (rel[static_cast<size_t>(i)] != Rel::LE) art_col[static_cast<size_t>(i)] = total++;

    detail::Tableau tab;
    tab.t = MatrixXq::Zero(m + 1, total + 1);
    tab.t.block(0, 0, m, n) = a;
    tab.basis.assign(static_cast<size_t>(m), -1);
    tab.row_id.resize(static_cast<size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) {
        tab.row_id[static_cast<size_t>(i)] = static_cast<int>(i);
        tab.t(i, total) = b(i);
        if (slack_col[static_cast<size_t>(i)] >= 0)
            tab.t(i, slack_col[static_cast<size_t>(i)]) =
                rel[static_cast<size_t>(i)] == Rel::LE ? Rational(1) : Rational(-1);
        if (art_col[static_cast<size_t>(i)] >= 0)
            tab.t(i, art_col[static_cast<size_t>(i)]) = Rational(1);
        tab.basis[static_cast<size_t>(i)] =
            static_cast<int>(art_col[static_cast<size_t>(i)] >= 0
                                 ? art_col[static_cast<size_t>(i)]
                                 : slack_col[static_cast<size_t>(i)]);
    }

    std::vector<char> art_flag(static_cast<size_t>(total), 0);
    for (Eigen::Index i = 0; i < m; ++i)
        if (art_col[static_cast<size_t>(i)] >= 0)
            art_flag[static_cast<size_t>(art_col[static_cast<size_t>(i)])] = 1;

    auto load_costs = [&](const VectorXq& cost) {
        tab.t.row(tab.rows()).setZero();
        for (Eigen::Index j = 0; j < cost.size(); ++j) tab.t(tab.rows(), j) = cost(j);
        for (Eigen::Index i = 0; i < tab.rows(); ++i) {
            int bcol = tab.basis[static_cast<size_t>(i)];
            if (!is_zero(tab.t(tab.rows(), bcol)))
                tab.t.row(tab.rows()) -= tab.t(tab.rows(), bcol) * tab.t.row(i);
        }
    };

    // Multiplier for caller row i: read through that row's +e_i handle column.
    // In the current tableau the handle holds B^{-1} e_i, so the cost-row
    // entry there equals cost(handle) - y_i.
    auto read_multipliers = [&](const VectorXq& cost) {
        VectorXq y = VectorXq::Zero(m);
        for (Eigen::Index k = 0; k < tab.rows(); ++k) {
            int i = tab.row_id[static_cast<size_t>(k)];
            Eigen::Index handle = art_col[static_cast<size_t>(i)] >= 0
                                      ? art_col[static_cast<size_t>(i)]
                                      : slack_col[static_cast<size_t>(i)];
            y(i) = cost(handle) - tab.t(tab.rows(), handle);
            y(i) *= row_sign[static_cast<size_t>(i)];
        }
        return y;
    };

    LpResult res;

    // Phase 1: minimize the artificial total.
    VectorXq phase1_cost = VectorXq::Zero(total);
    for (Eigen::Index j = 0; j < total; ++j)
        if (art_flag[static_cast<size_t>(j)]) phase1_cost(j) = Rational(1);
    bool any_art = false;
    for (Eigen::Index j = 0; j < total; ++j) any_art |= art_flag[static_cast<size_t>(j)] != 0;
    std::vector<char> allow_all(static_cast<size_t>(total), 1);
    if (any_art) {
        load_costs(phase1_cost);
        // phase 1 is bounded below by zero, so Unbounded cannot occur here
        while (tab.step(allow_all) == detail::Tableau::Step::Improved) {}
        Rational infeas = -tab.t(tab.rows(), tab.cols());
        if (infeas > 0) {
            res.status = LpStatus::Infeasible;
            res.y = read_multipliers(phase1_cost);
            res.x = VectorXq::Zero(n);
            return res;
        }
        // Drive leftover degenerate artificials out of the basis; a row whose
        // non-artificial part vanished is redundant and is dropped.
        for (Eigen::Index i = 0; i < tab.rows();) {
            int bcol = tab.basis[static_cast<size_t>(i)];
            if (!art_flag[static_cast<size_t>(bcol)]) { ++i; continue; }
            Eigen::Index piv = -1;
            for (Eigen::Index j = 0; j < tab.cols(); ++j) {
                if (art_flag[static_cast<size_t>(j)]) continue;
                if (!is_zero(tab.t(i, j))) { piv = j; break; }
            }
            if (piv >= 0) {
                tab.pivot(i, piv);
                ++i;
            } else {
                Eigen::Index last = tab.rows() - 1;
                tab.t.row(i) = tab.t.row(last);
                tab.basis[static_cast<size_t>(i)] = tab.basis[static_cast<size_t>(last)];
                tab.row_id[static_cast<size_t>(i)] = tab.row_id[static_cast<size_t>(last)];
                // shrink: move cost row up over the removed slot
                MatrixXq nt(tab.t.rows() - 1, tab.t.cols());
                nt.topRows(last) = tab.t.topRows(last);
                nt.row(last) = tab.t.row(last + 1);
                tab.t = std::move(nt);
                tab.basis.pop_back();
                tab.row_id.pop_back();
            }
        }
    }

    // Phase 2 over the caller's objective; artificial columns may not re-enter.
    VectorXq phase2_cost = VectorXq::Zero(total);
    for (Eigen::Index j = 0; j < n; ++j) phase2_cost(j) = maximize ? -c(j) : c(j);
    std::vector<char> allow(static_cast<size_t>(total), 1);
    for (Eigen::Index j = 0; j < total; ++j)
        if (art_flag[static_cast<size_t>(j)]) allow[static_cast<size_t>(j)] = 0;
    load_costs(phase2_cost);
    for (;;) {
        auto st = tab.step(allow);
        if (st == detail::Tableau::Step::Done) break;
        if (st == detail::Tableau::Step::Unbounded) {
            res.status = LpStatus::Unbounded;
            res.x = VectorXq::Zero(n);
            res.y = VectorXq::Zero(m);
            return res;
        }
    }

    res.status = LpStatus::Optimal;
    res.x = VectorXq::Zero(n);
    for (Eigen::Index i = 0; i < tab.rows(); ++i) {
        int bcol = tab.basis[static_cast<size_t>(i)];
        if (bcol < n) res.x(bcol) = tab.t(i, tab.cols());
    }
    res.objective = -tab.t(tab.rows(), tab.cols());
    VectorXq y = read_multipliers(phase2_cost);
    if (maximize) {
        res.objective = -res.objective;
        y = -y;
    }
    res.y = y;
    return res;
}

} // namespace hmstab
