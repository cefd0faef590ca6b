// SPDX-License-Identifier: MIT
//
// Generic solvers for the four cost-efficiency problems on an n-state
// equiprobable market:
//
//   maximin            sup_xi  inf_{Z in D(F)}    E[xi Z]
//   minimax            inf_{Z in D(F)}    sup_xi  E[xi Z]
//   convexified minimax inf_{Z in conv F} sup_xi  E[xi Z]
//   convexified maximin sup_xi  inf_{Z in conv F} E[xi Z]
//
// One-parameter kernel families are handled by breakpoint enumeration (exact
// over rationals); larger polytopes go through the simplex solver.
#pragma once

#include "effico/distribution.hpp"
#include "effico/error.hpp"
#include "effico/lp.hpp"
#include "effico/market.hpp"
#include "effico/solution.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace effico {

inline constexpr std::size_t kMaxPermutationStates = 7;

namespace detail {

template <class S>
void check_states(const KernelFamily<S>& family, const DiscreteDistribution<S>& dist) {
    require(family.states() == dist.size(), ErrorCode::DimensionMismatch, "distribution size differs from state count");
    require(dist.size() <= kMaxPermutationStates, ErrorCode::TooManyStates,
            "permutation enumeration supports at most 7 states");
}

template <class S>
bool same_vector(const std::vector<S>& a, const std::vector<S>& b, Tolerance<S> tol) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!tol.eq(a[i], b[i], a[i])) return false;
    return true;
}

/// Every distinct rearrangement of the atoms.
template <class S>
std::vector<Payoff<S>> arrangements(const DiscreteDistribution<S>& dist) {
    std::vector<Payoff<S>> out;
    auto v = dist.values();
    do {
        out.push_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

/// All payoffs in D(F) minimizing E[kernel * Z]: states with smaller kernel
/// weight receive larger atoms; within a tie every assignment is optimal.
template <class S>
std::vector<Payoff<S>> minimizing_arrangements(const Kernel<S>& kernel, const DiscreteDistribution<S>& dist,
                                               Tolerance<S> tol) {
    const std::size_t n = kernel.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return kernel[a] < kernel[b]; });

    // groups of tied states, kernel ascending
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0 && tol.eq(kernel[order[k]], kernel[order[k - 1]], kernel[order[k]]))
            groups.back().push_back(order[k]);
        else
            groups.push_back({order[k]});
    }
    // atoms descending, dealt to groups in order
    std::vector<std::vector<S>> dealt;
    std::size_t pos = n;
    for (const auto& g : groups) {
        std::vector<S> vals;
        for (std::size_t k = 0; k < g.size(); ++k) vals.push_back(dist[--pos]);
        std::sort(vals.begin(), vals.end());
        dealt.push_back(std::move(vals));
    }

    std::vector<Payoff<S>> out;
    Payoff<S> z(n, S(0));
    auto recurse = [&](auto&& self, std::size_t gi) -> void {
        if (gi == groups.size()) {
            out.push_back(z);
            return;
        }
        auto vals = dealt[gi];
        do {
            for (std::size_t k = 0; k < vals.size(); ++k) z[groups[gi][k]] = vals[k];
            self(self, gi + 1);
        } while (std::next_permutation(vals.begin(), vals.end()));
    };
    recurse(recurse, 0);
    return out;
}

/// inf over D(F) of E[kernel Z] by the rearrangement pairing.
template <class S>
S floor_price(const Kernel<S>& kernel, const DiscreteDistribution<S>& dist) {
    std::vector<S> k = kernel;
    std::sort(k.begin(), k.end());
    S acc{0};
    const std::size_t n = k.size();
    for (std::size_t i = 0; i < n; ++i) acc += k[i] * dist[n - 1 - i];
    return acc / S(static_cast<long long>(n));
}

/// Parameters where two kernel coordinates cross, plus the endpoints.
template <class S>
std::vector<S> breakpoints(const Parametric1D<S>& line, Tolerance<S> tol) {
    std::vector<S> pts{line.u_lo, line.u_hi};
    const std::size_t n = line.base.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            S dd = line.direction[i] - line.direction[j];
            if (tol.is_zero(dd)) continue;
            S u = (line.base[j] - line.base[i]) / dd;
            if (line.u_lo < u && u < line.u_hi) pts.push_back(u);
        }
    }
    std::sort(pts.begin(), pts.end());
    std::vector<S> out;
    for (const auto& p : pts)
        if (out.empty() || !tol.eq(out.back(), p, p)) out.push_back(p);
    return out;
}

template <class S>
S payoff_scale(const DiscreteDistribution<S>& dist) {
    return std::max<S>(S(1), std::max<S>(abs_value<S>(dist.values().front()), abs_value<S>(dist.values().back())));
}

enum class FaceMode { Points, Faces };

/// Shared outer maximization for both maximin variants on a one-parameter family.
template <class S>
SolutionSet<S> maximin_parametric(const Parametric1D<S>& line, const DiscreteDistribution<S>& dist, FaceMode mode,
                                  Tolerance<S> tol) {
    const auto bps = breakpoints(line, tol);
    std::vector<S> phi;
    phi.reserve(bps.size());
    for (const auto& u : bps) phi.push_back(floor_price(line.kernel_at(u), dist));
    SolutionSet<S> sol;
    sol.kind = mode == FaceMode::Points ? ProblemKind::MaximinDF : ProblemKind::ConvexifiedMaximin;
    sol.value = *std::max_element(phi.begin(), phi.end());
    const S scale = payoff_scale(dist);
    std::vector<bool> opt(bps.size());
    for (std::size_t k = 0; k < bps.size(); ++k) opt[k] = tol.eq(phi[k], sol.value, scale);

    // maximal segments with a fixed interior arrangement
    struct Piece {
        S lo, hi;
        std::vector<Payoff<S>> arrangements;
    };
    std::vector<Piece> pieces;
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        if (!(opt[k] && opt[k + 1])) continue;
        S mid = (bps[k] + bps[k + 1]) / S(2);
        auto arr = minimizing_arrangements(line.kernel_at(mid), dist, tol);
        if (!pieces.empty() && pieces.back().hi == bps[k] && pieces.back().arrangements.size() == arr.size() &&
            std::equal(arr.begin(), arr.end(), pieces.back().arrangements.begin(),
                       [&](const auto& a, const auto& b) { return same_vector(a, b, tol); })) {
            pieces.back().hi = bps[k + 1];
        } else {
            pieces.push_back({bps[k], bps[k + 1], std::move(arr)});
        }
    }

    auto covered = [&](const Payoff<S>& z, const S& u) {
        return std::any_of(pieces.begin(), pieces.end(), [&](const Piece& p) {
            if (u < p.lo || p.hi < u) return false;
            return std::any_of(p.arrangements.begin(), p.arrangements.end(),
                               [&](const auto& a) { return same_vector(a, z, tol); });
        });
    };

    for (std::size_t k = 0; k < bps.size(); ++k) {
        if (!opt[k]) continue;
        auto arr = minimizing_arrangements(line.kernel_at(bps[k]), dist, tol);
        auto ks = KernelSet<S>::point(line.kernel_at(bps[k]), bps[k]);
        if (mode == FaceMode::Points) {
            for (auto& z : arr)
                if (!covered(z, bps[k])) sol.optimizers.push_back({PayoffSet<S>{{std::move(z)}}, ks});
        } else {
            if (arr.size() == 1 && covered(arr.front(), bps[k])) continue;
            sol.optimizers.push_back({PayoffSet<S>{std::move(arr)}, ks});
        }
    }
    for (auto& p : pieces) {
        auto ks = KernelSet<S>::range(line, p.lo, p.hi);
        if (mode == FaceMode::Points) {
            for (auto& z : p.arrangements) sol.optimizers.push_back({PayoffSet<S>{{std::move(z)}}, ks});
        } else {
            sol.optimizers.push_back({PayoffSet<S>{std::move(p.arrangements)}, ks});
        }
    }
    return sol;
}

/// Outer maximization over a kernel polytope: max t s.t. t <= E[xi Z] for every
/// arrangement Z, xi a convex combination of the vertices. Reports the optimal
/// kernel found by the simplex.
template <class S>
SolutionSet<S> maximin_polytope(const PolytopeVertices<S>& poly, const DiscreteDistribution<S>& dist, FaceMode mode,
                                Tolerance<S> tol) {
    const auto& verts = poly.vertices;
    const std::size_t m = verts.size();
    const auto arr = arrangements(dist);
    LinearProgram<S> lp(m + 1);
    lp.objective[m] = S(1);
    lp.bounds[m] = VariableBound<S>::free();
    for (const auto& z : arr) {
        std::vector<S> row(m + 1);
        for (std::size_t k = 0; k < m; ++k) row[k] = -price(verts[k], z);
        row[m] = S(1);
        lp.add_le(std::move(row), S(0));
    }
    std::vector<S> ones(m + 1, S(1));
    ones[m] = S(0);
    lp.add_eq(std::move(ones), S(1));
    auto res = solve_lp(lp, Sense::Maximize);
    require(res.optimal(), ErrorCode::NumericalFailure, "maximin LP did not reach an optimum");

    Kernel<S> xi(dist.size(), S(0));
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < xi.size(); ++i) xi[i] += res.x[k] * verts[k][i];
    for (auto& v : xi)
        if (tol.is_zero(v)) v = S(0);

    SolutionSet<S> sol;
    sol.kind = mode == FaceMode::Points ? ProblemKind::MaximinDF : ProblemKind::ConvexifiedMaximin;
    sol.value = floor_price(xi, dist);
    auto best = minimizing_arrangements(xi, dist, tol);
    auto ks = KernelSet<S>::point(xi);
    if (mode == FaceMode::Points) {
        for (auto& z : best) sol.optimizers.push_back({PayoffSet<S>{{std::move(z)}}, ks});
    } else {
        sol.optimizers.push_back({PayoffSet<S>{std::move(best)}, ks});
    }
    return sol;
}

template <class S>
Tolerance<S> solver_tolerance() {
    return Tolerance<S>{1e-9};
}

}  // namespace detail

template <class S>
SolutionSet<S> maximin_df(const KernelFamily<S>& family, const DiscreteDistribution<S>& dist) {
    detail::check_states(family, dist);
    auto tol = detail::solver_tolerance<S>();
    if (family.parametric()) return detail::maximin_parametric(family.line(), dist, detail::FaceMode::Points, tol);
    return detail::maximin_polytope(family.polytope(), dist, detail::FaceMode::Points, tol);
}

template <class S>
SolutionSet<S> convexified_maximin(const KernelFamily<S>& family, const DiscreteDistribution<S>& dist) {
    detail::check_states(family, dist);
    auto tol = detail::solver_tolerance<S>();
    if (family.parametric()) return detail::maximin_parametric(family.line(), dist, detail::FaceMode::Faces, tol);
    return detail::maximin_polytope(family.polytope(), dist, detail::FaceMode::Faces, tol);
}

namespace detail {

template <class S>
std::vector<Optimizer<S>> optimizers_for_payoff(const KernelFamily<S>& family, const Payoff<S>& z,
                                                const SuperhedgeResult<S>& sh) {
    std::vector<Optimizer<S>> out;
    if (family.parametric()) {
        out.push_back({PayoffSet<S>{{z}}, KernelSet<S>::range(family.line(), sh.u_range->first, sh.u_range->second)});
    } else {
        for (const auto& m : sh.maximizers) out.push_back({PayoffSet<S>{{z}}, KernelSet<S>::point(m.kernel)});
    }
    return out;
}

}  // namespace detail

/// Superhedging cost of every rearrangement; keeps all minimizers.
template <class S>
SolutionSet<S> minimax_df(const KernelFamily<S>& family, const DiscreteDistribution<S>& dist) {
    detail::check_states(family, dist);
    auto tol = detail::solver_tolerance<S>();
    const S scale = detail::payoff_scale(dist);
    std::vector<std::pair<Payoff<S>, SuperhedgeResult<S>>> costs;
    for (auto& z : detail::arrangements(dist)) {
        auto sh = superhedge_cost(family, z, tol);
        costs.emplace_back(std::move(z), std::move(sh));
    }
    SolutionSet<S> sol;
    sol.kind = ProblemKind::MinimaxDF;
    sol.value = costs.front().second.value;
    for (const auto& c : costs) sol.value = std::min(sol.value, c.second.value);
    for (const auto& [z, sh] : costs) {
        if (!tol.eq(sh.value, sol.value, scale)) continue;
        for (auto& o : detail::optimizers_for_payoff(family, z, sh)) sol.optimizers.push_back(std::move(o));
    }
    return sol;
}

namespace detail {

/// Feasible set {(Z, t) : price(v, Z) <= t for every vertex v, Z in conv F},
/// with the sum-of-k-largest constraints lifted through auxiliaries.
/// Variable layout: Z[0..n), t, then per k: tau_k, w_k[0..n).
template <class S>
LinearProgram<S> cvx_minimax_program(const std::vector<Kernel<S>>& verts, const DiscreteDistribution<S>& dist) {
    const std::size_t n = dist.size();
    const std::size_t t_idx = n;
    const std::size_t blocks = n - 1;
    const std::size_t nv = n + 1 + blocks * (n + 1);
    LinearProgram<S> lp(nv);
    for (std::size_t i = 0; i <= n; ++i) lp.bounds[i] = VariableBound<S>::free();
    for (const auto& v : verts) {
        std::vector<S> row(nv, S(0));
        for (std::size_t i = 0; i < n; ++i) row[i] = v[i] / S(static_cast<long long>(n));
        row[t_idx] = S(-1);
        lp.add_le(std::move(row), S(0));
    }
    std::vector<S> sum_row(nv, S(0));
    for (std::size_t i = 0; i < n; ++i) sum_row[i] = S(1);
    lp.add_eq(std::move(sum_row), dist.sum());

    S top{0};
    for (std::size_t k = 1; k <= blocks; ++k) {
        top += dist[n - k];
        const std::size_t tau = n + 1 + (k - 1) * (n + 1);
        lp.bounds[tau] = VariableBound<S>::free();
        std::vector<S> row(nv, S(0));
        row[tau] = S(static_cast<long long>(k));
        for (std::size_t i = 0; i < n; ++i) row[tau + 1 + i] = S(1);
        lp.add_le(std::move(row), top);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<S> r(nv, S(0));
            r[i] = S(1);
            r[tau] = S(-1);
            r[tau + 1 + i] = S(-1);
            lp.add_le(std::move(r), S(0));
        }
    }
    return lp;
}

}  // namespace detail

/// One LP for the value; 2n follow-up LPs probe whether the minimizing payoff is unique.
template <class S>
SolutionSet<S> convexified_minimax(const KernelFamily<S>& family, const DiscreteDistribution<S>& dist) {
    detail::check_states(family, dist);
    auto tol = detail::solver_tolerance<S>();
    const std::size_t n = dist.size();
    const auto verts = family.vertices();
    auto lp = detail::cvx_minimax_program(verts, dist);
    lp.objective[n] = S(1);
    auto res = solve_lp(lp, Sense::Minimize);
    require(res.optimal(), ErrorCode::NumericalFailure, "convexified minimax LP did not reach an optimum");

    SolutionSet<S> sol;
    sol.kind = ProblemKind::ConvexifiedMinimax;
    sol.value = res.x[n];

    // probe each coordinate over the optimal face
    const S scale = detail::payoff_scale(dist);
    // probe solutions sit within the LP tolerance of each other
    const Tolerance<S> same_tol{1e-7};
    std::vector<Payoff<S>> extremes{Payoff<S>(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(n))};
    auto probe = lp;
    probe.bounds[n] = VariableBound<S>{std::nullopt, sol.value + tol.slack(scale)};
    for (std::size_t i = 0; i < n; ++i) {
        for (Sense s : {Sense::Minimize, Sense::Maximize}) {
            probe.objective.assign(probe.num_vars(), S(0));
            probe.objective[i] = S(1);
            auto r = solve_lp(probe, s);
            if (!r.optimal()) continue;
            Payoff<S> z(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n));
            bool seen = std::any_of(extremes.begin(), extremes.end(), [&](const auto& e) {
                for (std::size_t j = 0; j < n; ++j)
                    if (!same_tol.eq(e[j], z[j], scale)) return false;
                return true;
            });
            if (!seen) extremes.push_back(std::move(z));
        }
    }
    if (extremes.size() > 1) {
        // the optimal face is not a single point: report it as the hull of the probes
        auto sh = superhedge_cost(family, extremes.front(), tol);
        for (auto& o : detail::optimizers_for_payoff(family, extremes.front(), sh)) {
            o.payoff = PayoffSet<S>{extremes};
            sol.optimizers.push_back(std::move(o));
        }
        return sol;
    }
    auto& z = extremes.front();
    for (auto& v : z)
        if (tol.is_zero(v, scale)) v = S(0);
    auto sh = superhedge_cost(family, z, tol);
    sol.optimizers = detail::optimizers_for_payoff(family, z, sh);
    return sol;
}

template <class S>
SolutionSet<S> solve_problem(ProblemKind kind, const KernelFamily<S>& family, const DiscreteDistribution<S>& dist) {
    switch (kind) {
        case ProblemKind::MaximinDF: return maximin_df(family, dist);
        case ProblemKind::MinimaxDF: return minimax_df(family, dist);
        case ProblemKind::ConvexifiedMinimax: return convexified_minimax(family, dist);
        case ProblemKind::ConvexifiedMaximin: return convexified_maximin(family, dist);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown problem kind");
}

template <class S>
SolutionSet<S> solve_problem(ProblemKind kind, const DiscreteMarket<S>& market, const DiscreteDistribution<S>& dist) {
    return solve_problem(kind, kernel_family(market), dist);
}

/// Perfect cost-efficiency: the minimax and maximin values coincide.
template <class S>
bool is_perfectly_cost_efficient(const KernelFamily<S>& family, const DiscreteDistribution<S>& dist) {
    auto hi = minimax_df(family, dist).value;
    auto lo = maximin_df(family, dist).value;
    return Tolerance<S>{1e-9}.eq(hi, lo, detail::payoff_scale(dist));
}

/// Parameters u for which Z is ordered opposite to kernel_at(u), i.e. Z is
/// F^{-1}(1 - U) of that kernel or a randomization of it.
template <class S>
std::optional<Interval<S>> ce_parameter_range(const Parametric1D<S>& line, const Payoff<S>& z) {
    S lo = line.u_lo, hi = line.u_hi;
    const std::size_t n = z.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!(z[i] > z[j])) continue;
            // need kernel_i(u) <= kernel_j(u)
            S b = line.base[i] - line.base[j];
            S d = line.direction[i] - line.direction[j];
            if (d == S(0)) {
                if (b > S(0)) return std::nullopt;
                continue;
            }
            S root = -b / d;
            if (d > S(0)) hi = std::min(hi, root);
            else lo = std::max(lo, root);
        }
    }
    if (hi < lo) return std::nullopt;
    return Interval<S>{lo, hi};
}

}  // namespace effico
