// SPDX-License-Identifier: MIT
//
// Closed forms for the canonical trinomial market (s0 = 2, sT = (4, 2, 1))
// with kernels xi^u = (3u, 3 - 9u, 6u), u in [0, 1/3], and a target law with
// atoms x < y < z.
#pragma once

#include "effico/distribution.hpp"
#include "effico/efficiency.hpp"
#include "effico/error.hpp"
#include "effico/market.hpp"
#include "effico/solution.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

namespace effico {

template <class S>
Parametric1D<S> canonical_line() {
    return {{S(0), S(3), S(0)}, {S(3), S(-9), S(6)}, S(0), ratio<S>(1, 3)};
}

template <class S>
KernelFamily<S> canonical_family() {
    return KernelFamily<S>(canonical_line<S>());
}

template <class S>
class ThreeStateInput {
public:
    ThreeStateInput(S x, S y, S z) : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
        require(x_ < y_ && y_ < z_, ErrorCode::OrderingViolated, "three-state input needs strictly x < y < z");
    }

    [[nodiscard]] const S& x() const { return x_; }
    [[nodiscard]] const S& y() const { return y_; }
    [[nodiscard]] const S& z() const { return z_; }
    /// 2x - 3y + z
    [[nodiscard]] S delta1() const { return S(2) * x_ - S(3) * y_ + z_; }
    /// x - 3y + 2z
    [[nodiscard]] S delta2() const { return x_ - S(3) * y_ + S(2) * z_; }
    [[nodiscard]] DiscreteDistribution<S> distribution() const { return DiscreteDistribution<S>({x_, y_, z_}); }

private:
    S x_, y_, z_;
};

namespace detail {

template <class S>
int three_state_sign(const S& v) {
    return Tolerance<S>{1e-12}.sign(v);
}

}  // namespace detail

template <class S>
SolutionSet<S> three_state_closed_form(const ThreeStateInput<S>& in, ProblemKind kind) {
    const S& x = in.x();
    const S& y = in.y();
    const S& z = in.z();
    const auto line = canonical_line<S>();
    const int d1 = detail::three_state_sign(in.delta1());
    const S fifth = ratio<S>(1, 5), quarter = ratio<S>(1, 4), third = ratio<S>(1, 3);
    const Payoff<S> zyx{z, y, x}, yzx{y, z, x}, zxy{z, x, y}, xyz{x, y, z};

    auto at = [&](const S& u) { return KernelSet<S>::point(line.kernel_at(u), u); };
    auto over = [&](const S& lo, const S& hi) { return KernelSet<S>::range(line, lo, hi); };
    auto pt = [](const Payoff<S>& p) { return PayoffSet<S>{{p}}; };
    auto seg = [](const Payoff<S>& a, const Payoff<S>& b) { return PayoffSet<S>{{a, b}}; };

    SolutionSet<S> sol;
    sol.kind = kind;
    const S maximin_value = d1 > 0 ? (S(2) * x + y + z) / S(4) : d1 == 0 ? y : (S(2) * x + S(2) * y + z) / S(5);

    switch (kind) {
        case ProblemKind::MaximinDF:
            sol.value = maximin_value;
            if (d1 > 0) {
                sol.optimizers = {{pt(zyx), at(quarter)}, {pt(yzx), at(quarter)}};
            } else if (d1 == 0) {
                sol.optimizers = {{pt(zxy), at(fifth)}, {pt(yzx), at(quarter)}, {pt(zyx), over(fifth, quarter)}};
            } else {
                sol.optimizers = {{pt(zxy), at(fifth)}, {pt(zyx), at(fifth)}};
            }
            break;
        case ProblemKind::ConvexifiedMaximin:
            sol.value = maximin_value;
            if (d1 > 0) {
                sol.optimizers = {{seg(zyx, yzx), at(quarter)}};
            } else if (d1 == 0) {
                sol.optimizers = {{pt(zyx), over(fifth, quarter)},
                                  {seg(zyx, yzx), at(quarter)},
                                  {seg(zyx, zxy), at(fifth)}};
            } else {
                sol.optimizers = {{seg(zyx, zxy), at(fifth)}};
            }
            break;
        case ProblemKind::ConvexifiedMinimax: {
            sol.value = maximin_value;
            Payoff<S> best;
            if (d1 > 0) best = {(S(-2) * x + S(3) * y + S(3) * z) / S(4), (S(2) * x + y + z) / S(4), x};
            else if (d1 == 0) best = zyx;
            else best = {z, (S(2) * x + S(2) * y + z) / S(5), (S(3) * x + S(3) * y - z) / S(5)};
            sol.optimizers = {{pt(best), over(S(0), third)}};
            break;
        }
        case ProblemKind::MinimaxDF:
            if (d1 > 0) {
                sol.value = (S(2) * x + z) / S(3);
                sol.optimizers = {{pt(zyx), at(third)}};
            } else if (d1 == 0) {
                sol.value = y;
                sol.optimizers = {{pt(zyx), over(S(0), third)}};
            } else {
                sol.value = y;
                const int d2 = detail::three_state_sign(in.delta2());
                if (d2 > 0) sol.optimizers = {{pt(zyx), at(S(0))}};
                else if (d2 == 0) sol.optimizers = {{pt(xyz), over(S(0), third)}, {pt(zyx), at(S(0))}};
                else sol.optimizers = {{pt(xyz), at(S(0))}, {pt(zyx), at(S(0))}};
            }
            break;
    }
    return sol;
}

/// z = 3y - 2x.
template <class S>
bool is_perfectly_cost_efficient(const ThreeStateInput<S>& in) {
    return detail::three_state_sign(in.delta1()) == 0;
}

/// Replicable in the canonical market: x1 - 3 x2 + 2 x3 = 0.
template <class S>
bool is_attainable(const Payoff<S>& payoff) {
    require(payoff.size() == 3, ErrorCode::DimensionMismatch, "attainability test expects three states");
    S scale{1};
    for (const auto& v : payoff) scale = std::max<S>(scale, abs_value<S>(v));
    return Tolerance<S>{1e-12}.is_zero(payoff[0] - S(3) * payoff[1] + S(2) * payoff[2], scale);
}

template <class S>
struct CostEfficientPayoff {
    Payoff<S> payoff;
    Interval<S> u_range;
};

/// Rearrangements of (x, y, z) that are attainable.
template <class S>
std::vector<Payoff<S>> attainable_permutations(const ThreeStateInput<S>& in) {
    std::vector<Payoff<S>> out;
    for (auto& p : detail::arrangements(in.distribution()))
        if (is_attainable(p)) out.push_back(std::move(p));
    return out;
}

/// Attainable rearrangements of the form F^{-1}(1 - U_{xi^u}), with their parameter ranges.
template <class S>
std::vector<CostEfficientPayoff<S>> attainable_ce_payoffs(const ThreeStateInput<S>& in) {
    std::vector<CostEfficientPayoff<S>> out;
    const auto line = canonical_line<S>();
    for (auto& p : attainable_permutations(in)) {
        if (auto r = ce_parameter_range(line, p)) out.push_back({std::move(p), *r});
    }
    return out;
}

/// Price under xi^s of the cost-efficient candidate built from xi^u, and the
/// response sets {u : that price is at most the candidate's own price}, closed.
template <class S>
class KkmDiagnostics {
public:
    explicit KkmDiagnostics(ThreeStateInput<S> in) : in_(std::move(in)) {
        // s grid with denominator 120 hits 1/5 and 1/4 exactly
        std::optional<Interval<S>> acc;
        for (int k = 1; k < 40; ++k) {
            auto r = response_set(ratio<S>(k, 120));
            require(r.size() == 1, ErrorCode::NumericalFailure, "response set is not an interval");
            if (!acc) {
                acc = r.front();
            } else {
                acc->lo = std::max(acc->lo, r.front().lo);
                acc->hi = std::min(acc->hi, r.front().hi);
            }
        }
        require(acc && !(acc->hi < acc->lo), ErrorCode::NumericalFailure, "empty response intersection");
        intersection_ = *acc;
    }

    [[nodiscard]] const ThreeStateInput<S>& input() const { return in_; }

    /// u in (0, 1/3); s in [0, 1/3].
    [[nodiscard]] S e(const S& s, const S& u) const {
        require(u > S(0) && u < ratio<S>(1, 3), ErrorCode::InvalidArgument, "u must lie in (0, 1/3)");
        const S& x = in_.x();
        const S& y = in_.y();
        const S& z = in_.z();
        const S fifth = ratio<S>(1, 5), quarter = ratio<S>(1, 4);
        if (u < fifth) return x + (S(-3) * x + S(2) * y + z) * s;
        if (u == fifth) return (x + y) / S(2) + (z - (x + y) / S(2)) * s;
        if (u < quarter) return y + (S(2) * x - S(3) * y + z) * s;
        if (u == quarter) return (y + z) / S(2) + (S(2) * x - y - z) * s;
        return z + (S(2) * x + y - S(3) * z) * s;
    }

    /// Closure of {u in (0, 1/3) : e(s, u) <= e(u, u)} as disjoint closed intervals.
    [[nodiscard]] std::vector<Interval<S>> response_set(const S& s) const {
        const S fifth = ratio<S>(1, 5), quarter = ratio<S>(1, 4), third = ratio<S>(1, 3);
        std::vector<Interval<S>> parts;
        // open branch (lo, hi): e(s, u) is constant c, e(u, u) = a + b u
        auto branch = [&](const S& lo, const S& hi) {
            const S mid = (lo + hi) / S(2);
            const S c = e(s, mid);
            const S a = e(S(0), mid);
            const S b = e(S(1), mid) - a;
            const S alpha = a - c;  // need alpha + b u >= 0
            if (b == S(0)) {
                if (!(alpha < S(0))) parts.push_back({lo, hi});
                return;
            }
            const S r = -alpha / b;
            if (b > S(0)) {
                const S left = std::max(lo, r);
                if (left < hi) parts.push_back({left, hi});
            } else {
                const S right = std::min(hi, r);
                if (lo < right) parts.push_back({lo, right});
            }
        };
        auto point = [&](const S& p) {
            if (!(e(p, p) < e(s, p))) parts.push_back({p, p});
        };
        branch(S(0), fifth);
        point(fifth);
        branch(fifth, quarter);
        point(quarter);
        branch(quarter, third);

        std::vector<Interval<S>> merged;
        for (const auto& p : parts) {
            if (!merged.empty() && !(merged.back().hi < p.lo)) merged.back().hi = std::max(merged.back().hi, p.hi);
            else merged.push_back(p);
        }
        return merged;
    }

    /// Common point(s) of all response sets over s in (0, 1/3).
    [[nodiscard]] const Interval<S>& intersection() const { return intersection_; }

private:
    ThreeStateInput<S> in_;
    Interval<S> intersection_{S(0), S(0)};
};

template <class S>
KkmDiagnostics<S> kkm_diagnostics(const ThreeStateInput<S>& in) {
    return KkmDiagnostics<S>(in);
}

}  // namespace effico
