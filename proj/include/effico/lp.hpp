// SPDX-License-Identifier: MIT
//
// Small dense linear programming: two-phase tableau simplex with Bland's
// anti-cycling rule. Templated on the scalar so the same code runs exactly
// over rationals or in binary64.
#pragma once

#include "effico/error.hpp"
#include "effico/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace effico {

template <class S>
struct VariableBound {
    std::optional<S> lower = S(0);
    std::optional<S> upper;

    static VariableBound free() { return {std::nullopt, std::nullopt}; }
    static VariableBound at_least(S lo) { return {std::move(lo), std::nullopt}; }
    static VariableBound between(S lo, S hi) { return {std::move(lo), std::move(hi)}; }
};

/// objective·x subject to A x <= b, E x = f and per-variable bounds
/// (default x >= 0).
template <class S>
struct LinearProgram {
    std::vector<S> objective;
    std::vector<std::vector<S>> ineq_lhs;
    std::vector<S> ineq_rhs;
    std::vector<std::vector<S>> eq_lhs;
    std::vector<S> eq_rhs;
    std::vector<VariableBound<S>> bounds;

    LinearProgram() = default;
    explicit LinearProgram(std::size_t num_vars)
        : objective(num_vars, S(0)), bounds(num_vars) {}

    [[nodiscard]] std::size_t num_vars() const { return objective.size(); }

    void add_le(std::vector<S> row, S rhs) {
        ineq_lhs.push_back(std::move(row));
        ineq_rhs.push_back(std::move(rhs));
    }
    void add_ge(std::vector<S> row, S rhs) {
        for (auto& v : row) v = -v;
        add_le(std::move(row), -rhs);
    }
    void add_eq(std::vector<S> row, S rhs) {
        eq_lhs.push_back(std::move(row));
        eq_rhs.push_back(std::move(rhs));
    }

    void validate() const {
        const auto n = num_vars();
        require(bounds.size() == n, ErrorCode::DimensionMismatch, "bounds size differs from variable count");
        require(ineq_lhs.size() == ineq_rhs.size(), ErrorCode::DimensionMismatch, "inequality rows/rhs mismatch");
        require(eq_lhs.size() == eq_rhs.size(), ErrorCode::DimensionMismatch, "equality rows/rhs mismatch");
        for (const auto& r : ineq_lhs) require(r.size() == n, ErrorCode::DimensionMismatch, "inequality row width");
        for (const auto& r : eq_lhs) require(r.size() == n, ErrorCode::DimensionMismatch, "equality row width");
        if constexpr (!is_exact_v<S>) {
            auto finite = [](const S& v) { return std::isfinite(v); };
            for (const auto& v : objective) require(finite(v), ErrorCode::InvalidArgument, "non-finite objective");
            for (const auto& r : ineq_lhs)
                for (const auto& v : r) require(finite(v), ErrorCode::InvalidArgument, "non-finite coefficient");
            for (const auto& r : eq_lhs)
                for (const auto& v : r) require(finite(v), ErrorCode::InvalidArgument, "non-finite coefficient");
        }
        for (const auto& b : bounds) {
            if (b.lower && b.upper) {
                require(!(*b.upper < *b.lower), ErrorCode::InvalidArgument, "empty variable bound");
            }
        }
    }
};

enum class Sense { Minimize, Maximize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class S>
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    S value{0};
    std::vector<S> x;
    std::vector<std::size_t> active_inequalities;
    std::vector<std::size_t> active_lower;
    std::vector<std::size_t> active_upper;

    [[nodiscard]] bool optimal() const { return status == LpStatus::Optimal; }
};

struct LpOptions {
    double feasibility_tol = 1e-9;
    double pivot_tol = 1e-11;
    std::size_t max_iterations = 100000;
};

namespace detail {

template <class S>
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols, const LpOptions& opt)
        : rows_(rows), cols_(cols), t_(rows, std::vector<S>(cols + 1, S(0))), basis_(rows, 0), opt_(opt) {}

    std::vector<S>& row(std::size_t i) { return t_[i]; }
    const std::vector<S>& row(std::size_t i) const { return t_[i]; }
    std::size_t& basic(std::size_t i) { return basis_[i]; }
    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] const S& rhs(std::size_t i) const { return t_[i][cols_]; }

    [[nodiscard]] bool positive(const S& v) const {
        if constexpr (is_exact_v<S>) return v > S(0);
        else return v > opt_.pivot_tol;
    }
    [[nodiscard]] bool negative_cost(const S& v) const {
        if constexpr (is_exact_v<S>) return v < S(0);
        else return v < -opt_.feasibility_tol;
    }

    void pivot(std::size_t r, std::size_t c, std::vector<S>& cost_row) {
        const S piv = t_[r][c];
        if constexpr (!is_exact_v<S>) {
            if (std::abs(piv) < 1e-13) {
                if (++tiny_pivots_ > 20) throw Error(ErrorCode::NumericalFailure, "simplex pivots below 1e-13");
            }
        }
        for (auto& v : t_[r]) v /= piv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            const S f = t_[i][c];
            if (f == S(0)) continue;
            for (std::size_t j = 0; j <= cols_; ++j) t_[i][j] -= f * t_[r][j];
        }
        const S f = cost_row[c];
        if (f != S(0)) {
            for (std::size_t j = 0; j <= cols_; ++j) cost_row[j] -= f * t_[r][j];
        }
        basis_[r] = c;
    }

    /// Minimizes cost over columns marked in `allowed`. Returns false when unbounded.
    bool minimize(const std::vector<S>& cost, const std::vector<bool>& allowed) {
        // reduced costs d_j = c_j - c_B B^-1 A_j; last entry holds -objective
        std::vector<S> d(cols_ + 1, S(0));
        for (std::size_t j = 0; j < cols_; ++j) d[j] = cost[j];
        for (std::size_t i = 0; i < rows_; ++i) {
            const S cb = cost[basis_[i]];
            if (cb == S(0)) continue;
            for (std::size_t j = 0; j <= cols_; ++j) d[j] -= cb * t_[i][j];
        }
        std::vector<bool> is_basic(cols_, false);
        for (std::size_t i = 0; i < rows_; ++i) is_basic[basis_[i]] = true;

        for (std::size_t iter = 0;; ++iter) {
            if (iter > opt_.max_iterations) throw Error(ErrorCode::NumericalFailure, "simplex iteration limit");
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (allowed[j] && !is_basic[j] && negative_cost(d[j])) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) return true;

            std::size_t leave = rows_;
            S best{0};
            for (std::size_t i = 0; i < rows_; ++i) {
                if (!positive(t_[i][enter])) continue;
                S ratio = t_[i][cols_] / t_[i][enter];
                if (leave == rows_) {
                    leave = i;
                    best = ratio;
                    continue;
                }
                // near-equal ratios are ties, broken by lowest basic index
                S tie = S(0);
                if constexpr (!is_exact_v<S>) tie = 1e-12 * std::max(1.0, std::abs(best));
                if (ratio < best - tie) {
                    leave = i;
                    best = ratio;
                } else if (!(ratio > best + tie) && basis_[i] < basis_[leave]) {
                    leave = i;
                    if (ratio < best) best = ratio;
                }
            }
            if (leave == rows_) return false;
            is_basic[basis_[leave]] = false;
            pivot(leave, enter, d);
            is_basic[enter] = true;
        }
    }

    void drop_row(std::size_t r) {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --rows_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::vector<S>> t_;
    std::vector<std::size_t> basis_;
    LpOptions opt_;
    int tiny_pivots_ = 0;
};

}  // namespace detail

/// Solves the program. On Optimal the primal point, its objective value and
/// the constraints holding with equality are reported.
template <class S>
LpResult<S> solve_lp(const LinearProgram<S>& lp, Sense sense, const LpOptions& opt = {}) {
    lp.validate();
    const std::size_t n = lp.num_vars();

    // x_j = offset_j + sum_k map[j][k] * y_k, y >= 0
    struct Term {
        std::size_t col;
        S coef;
    };
    std::vector<S> offset(n, S(0));
    std::vector<std::vector<Term>> map(n);
    std::size_t ny = 0;
    struct ExtraRow {
        std::size_t col;
        S rhs;
    };
    std::vector<ExtraRow> upper_rows;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& b = lp.bounds[j];
        if (b.lower) {
            offset[j] = *b.lower;
            map[j].push_back({ny, S(1)});
            if (b.upper) upper_rows.push_back({ny, *b.upper - *b.lower});
            ++ny;
        } else if (b.upper) {
            offset[j] = *b.upper;
            map[j].push_back({ny++, S(-1)});
        } else {
            map[j].push_back({ny++, S(1)});
            map[j].push_back({ny++, S(-1)});
        }
    }

    // rows: inequalities (slack), bound rows (slack), equalities
    struct Row {
        std::vector<S> coef;  // over y
        S rhs;
        bool has_slack;
    };
    std::vector<Row> rows;
    auto translate = [&](const std::vector<S>& a, const S& b, bool slack) {
        Row r{std::vector<S>(ny, S(0)), b, slack};
        for (std::size_t j = 0; j < n; ++j) {
            if (a[j] == S(0)) continue;
            r.rhs -= a[j] * offset[j];
            for (const auto& t : map[j]) r.coef[t.col] += a[j] * t.coef;
        }
        rows.push_back(std::move(r));
    };
    for (std::size_t i = 0; i < lp.ineq_lhs.size(); ++i) translate(lp.ineq_lhs[i], lp.ineq_rhs[i], true);
    for (const auto& ur : upper_rows) {
        Row r{std::vector<S>(ny, S(0)), ur.rhs, true};
        r.coef[ur.col] = S(1);
        rows.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < lp.eq_lhs.size(); ++i) translate(lp.eq_lhs[i], lp.eq_rhs[i], false);

    std::size_t num_slack = 0;
    for (const auto& r : rows) num_slack += r.has_slack ? 1 : 0;
    const std::size_t m = rows.size();
    const std::size_t slack0 = ny;
    const std::size_t art0 = ny + num_slack;
    const std::size_t total = art0 + m;

    detail::Tableau<S> tab(m, total, opt);
    std::vector<bool> is_artificial(total, false);
    std::size_t slack_idx = slack0;
    for (std::size_t i = 0; i < m; ++i) {
        auto& tr = tab.row(i);
        const bool flip = rows[i].rhs < S(0);
        const S sgn = flip ? S(-1) : S(1);
        for (std::size_t k = 0; k < ny; ++k) tr[k] = sgn * rows[i].coef[k];
        tr[total] = sgn * rows[i].rhs;
        std::optional<std::size_t> basic_slack;
        if (rows[i].has_slack) {
            tr[slack_idx] = sgn;
            if (!flip) basic_slack = slack_idx;
            ++slack_idx;
        }
        if (basic_slack) {
            tab.basic(i) = *basic_slack;
        } else {
            tr[art0 + i] = S(1);
            tab.basic(i) = art0 + i;
            is_artificial[art0 + i] = true;
        }
    }

    LpResult<S> result;
    std::vector<bool> allowed(total, true);
    bool any_artificial = false;
    for (std::size_t j = art0; j < total; ++j) {
        if (!is_artificial[j]) allowed[j] = false;
        any_artificial = any_artificial || is_artificial[j];
    }

    if (any_artificial) {
        std::vector<S> cost1(total, S(0));
        for (std::size_t j = art0; j < total; ++j)
            if (is_artificial[j]) cost1[j] = S(1);
        tab.minimize(cost1, allowed);
        S infeas{0};
        for (std::size_t i = 0; i < tab.rows(); ++i)
            if (is_artificial[tab.basic(i)]) infeas += tab.rhs(i);
        bool infeasible;
        if constexpr (is_exact_v<S>) infeasible = infeas > S(0);
        else infeasible = infeas > opt.feasibility_tol;
        if (infeasible) {
            result.status = LpStatus::Infeasible;
            return result;
        }
        // drive remaining artificials out of the basis
        std::vector<S> dummy(total + 1, S(0));
        for (std::size_t i = 0; i < tab.rows();) {
            if (!is_artificial[tab.basic(i)]) {
                ++i;
                continue;
            }
            std::size_t col = total;
            S best{0};
            for (std::size_t j = 0; j < art0; ++j) {
                if (!allowed[j]) continue;
                S mag = abs_value<S>(tab.row(i)[j]);
                if (mag > best) {
                    best = mag;
                    col = j;
                }
            }
            bool usable;
            if constexpr (is_exact_v<S>) usable = col != total;
            else usable = col != total && best > opt.pivot_tol;
            if (usable) {
                tab.pivot(i, col, dummy);
                ++i;
            } else {
                tab.drop_row(i);
            }
        }
        for (std::size_t j = art0; j < total; ++j) allowed[j] = false;
    }

    std::vector<S> cost2(total, S(0));
    for (std::size_t j = 0; j < n; ++j) {
        S c = sense == Sense::Minimize ? lp.objective[j] : S(-lp.objective[j]);
        for (const auto& t : map[j]) cost2[t.col] += c * t.coef;
    }
    if (!tab.minimize(cost2, allowed)) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    std::vector<S> y(total, S(0));
    for (std::size_t i = 0; i < tab.rows(); ++i) y[tab.basic(i)] = tab.rhs(i);
    result.x.assign(n, S(0));
    for (std::size_t j = 0; j < n; ++j) {
        S v = offset[j];
        for (const auto& t : map[j]) v += t.coef * y[t.col];
        result.x[j] = v;
    }
    result.status = LpStatus::Optimal;
    result.value = S(0);
    for (std::size_t j = 0; j < n; ++j) result.value += lp.objective[j] * result.x[j];

    Tolerance<S> tol{opt.feasibility_tol};
    for (std::size_t i = 0; i < lp.ineq_lhs.size(); ++i) {
        S lhs{0};
        for (std::size_t j = 0; j < n; ++j) lhs += lp.ineq_lhs[i][j] * result.x[j];
        if (tol.eq(lhs, lp.ineq_rhs[i], lp.ineq_rhs[i])) result.active_inequalities.push_back(i);
    }
    for (std::size_t j = 0; j < n; ++j) {
        const auto& b = lp.bounds[j];
        if (b.lower && tol.eq(result.x[j], *b.lower, *b.lower)) result.active_lower.push_back(j);
        if (b.upper && tol.eq(result.x[j], *b.upper, *b.upper)) result.active_upper.push_back(j);
    }
    return result;
}

}  // namespace effico
