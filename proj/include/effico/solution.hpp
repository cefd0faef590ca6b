// SPDX-License-Identifier: MIT
#pragma once

#include "effico/lp.hpp"
#include "effico/market.hpp"
#include "effico/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace effico {

enum class ProblemKind { MaximinDF, MinimaxDF, ConvexifiedMinimax, ConvexifiedMaximin };

inline constexpr ProblemKind kAllProblems[] = {ProblemKind::MaximinDF, ProblemKind::MinimaxDF,
                                               ProblemKind::ConvexifiedMinimax, ProblemKind::ConvexifiedMaximin};

constexpr std::string_view to_string(ProblemKind k) noexcept {
    switch (k) {
        case ProblemKind::MaximinDF: return "maximin";
        case ProblemKind::MinimaxDF: return "minimax";
        case ProblemKind::ConvexifiedMinimax: return "cvx-minimax";
        case ProblemKind::ConvexifiedMaximin: return "cvx-maximin";
    }
    return "?";
}

template <class S>
struct Interval {
    S lo;
    S hi;

    [[nodiscard]] bool contains(const S& v, Tolerance<S> tol = {1e-12}) const {
        return tol.le(lo, v) && tol.le(v, hi);
    }
    [[nodiscard]] bool degenerate() const { return lo == hi; }
    friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

/// Convex hull of the listed payoffs: one vertex is a point, two a segment.
template <class S>
struct PayoffSet {
    std::vector<Payoff<S>> vertices;

    [[nodiscard]] bool is_point() const { return vertices.size() == 1; }
    [[nodiscard]] bool is_segment() const { return vertices.size() == 2; }

    /// Segment length in the max-norm; the segment is start + t * direction, t in [0, length].
    [[nodiscard]] S length() const {
        if (!is_segment()) return S(0);
        S len{0};
        for (std::size_t i = 0; i < vertices[0].size(); ++i)
            len = std::max<S>(len, abs_value<S>(vertices[1][i] - vertices[0][i]));
        return len;
    }
    [[nodiscard]] Payoff<S> direction() const {
        Payoff<S> d(vertices[0].size(), S(0));
        if (!is_segment()) return d;
        const S len = length();
        if (len == S(0)) return d;
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = (vertices[1][i] - vertices[0][i]) / len;
        return d;
    }
    [[nodiscard]] Payoff<S> at(const S& t) const {
        auto d = direction();
        Payoff<S> z = vertices[0];
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += t * d[i];
        return z;
    }

    [[nodiscard]] bool contains(const Payoff<S>& z, Tolerance<S> tol = {1e-10}) const {
        auto same = [&](const Payoff<S>& a) {
            for (std::size_t i = 0; i < a.size(); ++i)
                if (!tol.eq(a[i], z[i], a[i])) return false;
            return true;
        };
        if (is_point()) return same(vertices[0]);
        if (is_segment()) {
            // project onto the segment, then compare
            const auto& a = vertices[0];
            const auto& b = vertices[1];
            S num{0}, den{0};
            for (std::size_t i = 0; i < a.size(); ++i) {
                num += (z[i] - a[i]) * (b[i] - a[i]);
                den += (b[i] - a[i]) * (b[i] - a[i]);
            }
            if (den == S(0)) return same(a);
            S lam = num / den;
            if (lam < S(0)) lam = S(0);
            if (lam > S(1)) lam = S(1);
            for (std::size_t i = 0; i < a.size(); ++i) {
                S p = a[i] + lam * (b[i] - a[i]);
                if (!tol.eq(p, z[i], p)) return false;
            }
            return true;
        }
        // feasibility of z = sum lambda_k v_k, lambda in the simplex
        const std::size_t m = vertices.size();
        LinearProgram<S> lp(m);
        for (std::size_t i = 0; i < z.size(); ++i) {
            std::vector<S> row(m);
            for (std::size_t k = 0; k < m; ++k) row[k] = vertices[k][i];
            lp.add_eq(std::move(row), z[i]);
        }
        lp.add_eq(std::vector<S>(m, S(1)), S(1));
        return solve_lp(lp, Sense::Minimize).optimal();
    }
};

/// Either a single kernel or the sub-family kernel_at(u), u in u_range.
template <class S>
struct KernelSet {
    Kernel<S> at_lo;
    Kernel<S> at_hi;
    std::optional<Interval<S>> u_range;

    static KernelSet point(Kernel<S> k, std::optional<S> u = std::nullopt) {
        KernelSet ks{k, k, std::nullopt};
        if (u) ks.u_range = Interval<S>{*u, *u};
        return ks;
    }
    static KernelSet range(const Parametric1D<S>& line, const S& lo, const S& hi) {
        return {line.kernel_at(lo), line.kernel_at(hi), Interval<S>{lo, hi}};
    }

    [[nodiscard]] bool is_point() const { return !u_range || u_range->degenerate(); }
    [[nodiscard]] bool boundary() const { return is_boundary_kernel(at_lo) || is_boundary_kernel(at_hi); }

    [[nodiscard]] bool contains(const Kernel<S>& k, Tolerance<S> tol = {1e-10}) const {
        PayoffSet<S> seg{is_point() ? std::vector<Payoff<S>>{at_lo} : std::vector<Payoff<S>>{at_lo, at_hi}};
        return seg.contains(k, tol);
    }
};

template <class S>
struct Optimizer {
    PayoffSet<S> payoff;
    KernelSet<S> kernel;

    [[nodiscard]] bool boundary() const { return kernel.boundary(); }
};

template <class S>
struct SolutionSet {
    ProblemKind kind{};
    S value{0};
    std::vector<Optimizer<S>> optimizers;

    [[nodiscard]] bool contains(const Payoff<S>& z, const Kernel<S>& k, Tolerance<S> tol = {1e-10}) const {
        return std::any_of(optimizers.begin(), optimizers.end(), [&](const Optimizer<S>& o) {
            return o.kernel.contains(k, tol) && o.payoff.contains(z, tol);
        });
    }
    [[nodiscard]] bool any_boundary() const {
        return std::any_of(optimizers.begin(), optimizers.end(), [](const auto& o) { return o.boundary(); });
    }
};

}  // namespace effico
