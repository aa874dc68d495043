#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace spreadlab {

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class RowSense { LE, GE, EQ };

template <class T>
struct LpRow {
    std::vector<std::pair<int, T>> coeffs;  // sparse (column, value)
    RowSense sense = RowSense::LE;
    T rhs{};
};

// min c.x subject to rows, x >= 0
template <class T>
struct LpProblem {
    int nvars = 0;
    std::vector<T> objective;
    std::vector<LpRow<T>> rows;
};

template <class T>
struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    T objective{};
    std::vector<T> x;
    // duals for the rows as given: objective == dual.b at optimum, with
    // dual_i >= 0 on GE rows, <= 0 on LE rows, free on EQ rows
    std::vector<T> dual;
    // Farkas certificate on infeasibility, same sign convention, with
    // farkas.b > 0 and A^T.farkas <= 0
    std::vector<T> farkas;
    T gap{};  // |primal - dual objective|; exactly 0 in rational mode
    int pivots = 0;
};

namespace lp_detail {

template <class T>
struct Traits {
    static bool pos(const T& x) { return x > 1e-9; }
    static bool neg(const T& x) { return x < -1e-9; }
};
template <>
struct Traits<mpq_class> {
    static bool pos(const mpq_class& x) { return sgn(x) > 0; }
    static bool neg(const mpq_class& x) { return sgn(x) < 0; }
};

template <class T>
bool is_zero(const T& x) {
    return !Traits<T>::pos(x) && !Traits<T>::neg(x);
}

}  // namespace lp_detail

// Dense two-phase tableau simplex with Bland's lowest-index rule (both the
// entering and leaving choices), so runs are deterministic and cycling-free.
template <class T>
LpSolution<T> lp_solve(const LpProblem<T>& prob) {
    using lp_detail::Traits;
    const int m = static_cast<int>(prob.rows.size());
    const int n = prob.nvars;
    if (static_cast<int>(prob.objective.size()) != n)
        throw std::invalid_argument("lp_solve: objective size mismatch");

    // normalize rows to rhs >= 0, remembering sign flips
    std::vector<int> flip(static_cast<std::size_t>(m), 1);
    std::vector<RowSense> sense(static_cast<std::size_t>(m));
    std::vector<T> rhs(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        sense[i] = prob.rows[i].sense;
        rhs[i] = prob.rows[i].rhs;
        if (Traits<T>::neg(rhs[i])) {
            flip[i] = -1;
            rhs[i] = -rhs[i];
            if (sense[i] == RowSense::LE)
                sense[i] = RowSense::GE;
            else if (sense[i] == RowSense::GE)
                sense[i] = RowSense::LE;
        }
    }

    // columns: [0,n) structural, [n, n+m) slack/surplus, [n+m, ...) artificials
    int nart = 0;
    std::vector<int> art_col(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i)
        if (sense[i] != RowSense::LE) art_col[i] = n + m + nart++;
    const int ncols = n + m + nart;
    if (static_cast<std::int64_t>(m) * ncols > 60'000'000)
        throw std::runtime_error("lp_solve: tableau too large");

    std::vector<std::vector<T>> a(static_cast<std::size_t>(m),
                                  std::vector<T>(static_cast<std::size_t>(ncols), T(0)));
    std::vector<T> b = rhs;
    std::vector<int> basis(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
        for (const auto& [j, v] : prob.rows[i].coeffs) {
            if (j < 0 || j >= n) throw std::invalid_argument("lp_solve: column out of range");
            a[i][j] += flip[i] < 0 ? T(-v) : v;
        }
        if (sense[i] == RowSense::LE) {
            a[i][n + i] = T(1);
            basis[i] = n + i;
        } else if (sense[i] == RowSense::GE) {
            a[i][n + i] = T(-1);
            a[i][art_col[i]] = T(1);
            basis[i] = art_col[i];
        } else {
            a[i][art_col[i]] = T(1);
            basis[i] = art_col[i];
        }
    }

    LpSolution<T> sol;
    auto pivot = [&](int pr, int pc) {
        T inv = a[pr][pc];
        for (int j = 0; j < ncols; ++j) a[pr][j] /= inv;
        b[pr] /= inv;
        for (int i = 0; i < m; ++i) {
            if (i == pr || lp_detail::is_zero(a[i][pc])) continue;
            T f = a[i][pc];
            for (int j = 0; j < ncols; ++j) a[i][j] -= f * a[pr][j];
            a[i][pc] = T(0);
            b[i] -= f * b[pr];
        }
        basis[pr] = pc;
        ++sol.pivots;
    };

    // runs simplex on cost vector c (size ncols); returns false on unbounded
    auto run = [&](const std::vector<T>& c, bool allow_art) -> bool {
        for (int iter = 0;; ++iter) {
            if (iter > 2'000'000) throw std::runtime_error("lp_solve: pivot limit exceeded");
            // reduced costs via duals of current basis: zrow_j = c_j - y.A_j;
            // computed directly from the tableau: c_j - sum_i c_basis[i]*a[i][j]
            int enter = -1;
            for (int j = 0; j < ncols && enter < 0; ++j) {
                if (!allow_art && j >= n + m) continue;
                bool in_basis = false;
                for (int i = 0; i < m; ++i)
                    if (basis[i] == j) {
                        in_basis = true;
                        break;
                    }
                if (in_basis) continue;
                T red = c[j];
                for (int i = 0; i < m; ++i)
                    if (!lp_detail::is_zero(a[i][j])) red -= c[static_cast<std::size_t>(basis[i])] * a[i][j];
                if (Traits<T>::neg(red)) enter = j;
            }
            if (enter < 0) return true;  // optimal
            int leave = -1;
            T best_ratio{};
            for (int i = 0; i < m; ++i) {
                if (!Traits<T>::pos(a[i][enter])) continue;
                T ratio = b[i] / a[i][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (!(best_ratio < ratio) && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter);
        }
    };

    // duals for rows as given, from the initial-identity column of each row
    auto extract_row_duals = [&](const std::vector<T>& c) {
        std::vector<T> y(static_cast<std::size_t>(m), T(0));
        for (int i = 0; i < m; ++i) {
            int col = sense[i] == RowSense::LE ? n + i : art_col[i];
            T red = c[static_cast<std::size_t>(col)];
            for (int r = 0; r < m; ++r)
                if (!lp_detail::is_zero(a[r][col])) red -= c[static_cast<std::size_t>(basis[r])] * a[r][col];
            T yi = c[static_cast<std::size_t>(col)] - red;  // y.A_col with A_col = e_i
            y[i] = flip[i] < 0 ? T(-yi) : yi;
        }
        return y;
    };

    if (nart > 0) {
        std::vector<T> c1(static_cast<std::size_t>(ncols), T(0));
        for (int i = 0; i < m; ++i)
            if (art_col[i] >= 0) c1[static_cast<std::size_t>(art_col[i])] = T(1);
        if (!run(c1, true)) throw std::runtime_error("lp_solve: phase 1 unbounded (bug)");
        T w{};
        for (int i = 0; i < m; ++i) w += c1[static_cast<std::size_t>(basis[i])] * b[i];
        if (Traits<T>::pos(w)) {
            sol.status = LpStatus::Infeasible;
            sol.farkas = extract_row_duals(c1);
            return sol;
        }
        // drive any zero-level artificial out of the basis when possible
        for (int i = 0; i < m; ++i) {
            if (basis[i] < n + m) continue;
            for (int j = 0; j < n + m; ++j) {
                if (!lp_detail::is_zero(a[i][j])) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    std::vector<T> c2(static_cast<std::size_t>(ncols), T(0));
    for (int j = 0; j < n; ++j) c2[static_cast<std::size_t>(j)] = prob.objective[static_cast<std::size_t>(j)];
    if (!run(c2, false)) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.x.assign(static_cast<std::size_t>(n), T(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) sol.x[static_cast<std::size_t>(basis[i])] = b[i];
    sol.objective = T(0);
    for (int j = 0; j < n; ++j) sol.objective += prob.objective[static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
    sol.dual = extract_row_duals(c2);
    T dual_obj{};
    for (int i = 0; i < m; ++i) dual_obj += sol.dual[static_cast<std::size_t>(i)] * prob.rows[static_cast<std::size_t>(i)].rhs;
    sol.gap = sol.objective - dual_obj;
    if (Traits<T>::neg(sol.gap)) sol.gap = -sol.gap;
    return sol;
}

}  // namespace spreadlab
