// SPDX-License-Identifier: MIT
//
// Distributions on n equiprobable atoms: step cdfs, the left-continuous
// quantile, the distributional transform and convex order via majorization.
#pragma once

#include "effico/error.hpp"
#include "effico/market.hpp"
#include "effico/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <random>
#include <variant>
#include <vector>

namespace effico {

template <class S>
class DiscreteDistribution {
public:
    explicit DiscreteDistribution(std::vector<S> values) : values_(std::move(values)) {
        require(!values_.empty(), ErrorCode::InvalidArgument, "distribution needs at least one atom");
        if constexpr (!is_exact_v<S>) {
            for (const auto& v : values_) require(std::isfinite(v), ErrorCode::InvalidArgument, "non-finite atom");
        }
        std::sort(values_.begin(), values_.end());
    }

    [[nodiscard]] std::size_t size() const { return values_.size(); }
    /// Sorted ascending.
    [[nodiscard]] const std::vector<S>& values() const { return values_; }
    [[nodiscard]] const S& operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] S sum() const {
        S acc{0};
        for (const auto& v : values_) acc += v;
        return acc;
    }
    [[nodiscard]] S mean() const { return sum() / S(static_cast<long long>(size())); }

    /// P(X <= t)
    [[nodiscard]] S cdf(const S& t) const {
        auto k = std::upper_bound(values_.begin(), values_.end(), t) - values_.begin();
        return S(static_cast<long long>(k)) / S(static_cast<long long>(size()));
    }
    /// P(X < t)
    [[nodiscard]] S left_cdf(const S& t) const {
        auto k = std::lower_bound(values_.begin(), values_.end(), t) - values_.begin();
        return S(static_cast<long long>(k)) / S(static_cast<long long>(size()));
    }
    /// inf{t : F(t) >= p} for p in (0, 1].
    [[nodiscard]] S quantile(const S& p) const {
        require(p > S(0) && !(p > S(1)), ErrorCode::InvalidArgument, "quantile level must lie in (0, 1]");
        const auto n = static_cast<long long>(size());
        // smallest k with k/n >= p
        for (long long k = 1; k <= n; ++k) {
            if (!(S(k) / S(n) < p)) return values_[static_cast<std::size_t>(k - 1)];
        }
        return values_.back();
    }

private:
    std::vector<S> values_;
};

/// Midpoint mode: U = (F(xi) + F^-(xi)) / 2.
struct MidpointTransform {};

/// Randomized mode: U_i = F^-(xi_i) + V_i (F(xi_i) - F^-(xi_i)) on tied
/// states; untied states use the midpoint.
template <class S>
struct RandomizedTransform {
    std::vector<S> draws;
};

template <class S>
using Randomizer = std::variant<MidpointTransform, RandomizedTransform<S>>;

/// Per-state uniform draws from a caller-owned generator.
template <class S, class Rng>
RandomizedTransform<S> uniform_draws(std::size_t n, Rng& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    RandomizedTransform<S> r;
    r.draws.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.draws.push_back(ScalarTraits<S>::from_double(unif(rng)));
    return r;
}

template <class S>
struct TransformValue {
    std::vector<S> u;
    /// True when a tie in the kernel was resolved by the randomizer.
    bool randomized = false;
};

template <class S>
TransformValue<S> distributional_transform(const std::vector<S>& kernel_values, const Randomizer<S>& randomizer) {
    const std::size_t n = kernel_values.size();
    require(n > 0, ErrorCode::InvalidArgument, "empty kernel");
    DiscreteDistribution<S> law(kernel_values);
    const auto* random = std::get_if<RandomizedTransform<S>>(&randomizer);
    if (random) require(random->draws.size() == n, ErrorCode::DimensionMismatch, "one draw per state required");
    const S step = S(1) / S(static_cast<long long>(n));

    TransformValue<S> out;
    out.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const S hi = law.cdf(kernel_values[i]);
        const S lo = law.left_cdf(kernel_values[i]);
        const bool tied = hi - lo > step;
        if (random && tied) {
            const S& v = random->draws[i];
            require(!(v < S(0)) && !(v > S(1)), ErrorCode::InvalidArgument, "draws must lie in [0, 1]");
            out.u[i] = lo + v * (hi - lo);
            out.randomized = true;
        } else {
            out.u[i] = (hi + lo) / S(2);
        }
    }
    return out;
}

/// F^{-1}(1 - U_xi) per state: the payoff with law `dist` ordered opposite to the kernel.
template <class S>
Payoff<S> cost_efficient_candidate(const DiscreteDistribution<S>& dist, const std::vector<S>& kernel_values,
                                   const Randomizer<S>& randomizer = MidpointTransform{}) {
    require(dist.size() == kernel_values.size(), ErrorCode::DimensionMismatch, "distribution and kernel sizes differ");
    auto t = distributional_transform(kernel_values, randomizer);
    Payoff<S> z(kernel_values.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        S level = S(1) - t.u[i];
        // U = 1 can only come from a randomized draw at the top of a jump
        if (!(level > S(0))) level = S(1) / S(static_cast<long long>(2 * z.size()));
        z[i] = dist.quantile(level);
    }
    return z;
}

namespace detail {

template <class S>
std::vector<S> descending(std::vector<S> v) {
    std::sort(v.begin(), v.end(), std::greater<S>());
    return v;
}

}  // namespace detail

/// A <=_cx B via majorization: equal sums and every sum of the k largest
/// A-values at most the corresponding B-sum.
template <class S>
bool is_convex_dominated(const std::vector<S>& a, const std::vector<S>& b, Tolerance<S> tol = {1e-12}) {
    require(a.size() == b.size(), ErrorCode::DimensionMismatch, "convex order needs equal atom counts");
    auto da = detail::descending(a);
    auto db = detail::descending(b);
    S scale{1};
    for (std::size_t i = 0; i < a.size(); ++i) {
        scale = std::max<S>(scale, abs_value<S>(da[i]));
        scale = std::max<S>(scale, abs_value<S>(db[i]));
    }
    scale *= S(static_cast<long long>(a.size()));
    S sa{0}, sb{0};
    for (std::size_t k = 0; k < a.size(); ++k) {
        sa += da[k];
        sb += db[k];
        if (!tol.le(sa, sb, scale)) return false;
    }
    return tol.eq(sa, sb, scale);
}

template <class S>
bool is_convex_dominated(const DiscreteDistribution<S>& a, const DiscreteDistribution<S>& b, Tolerance<S> tol = {1e-12}) {
    return is_convex_dominated(a.values(), b.values(), tol);
}

/// Z in the convex hull of the permutations of F's atoms.
template <class S>
bool conv_membership(const Payoff<S>& z, const DiscreteDistribution<S>& dist, Tolerance<S> tol = {1e-12}) {
    return is_convex_dominated(z, dist.values(), tol);
}

/// Moves the extreme atoms toward each other by t: (v_1 + t, v_n - t).
template <class S>
DiscreteDistribution<S> mean_preserving_contraction(const DiscreteDistribution<S>& dist, const S& t) {
    const auto& v = dist.values();
    require(!(t < S(0)) && !(S(2) * t > v.back() - v.front()), ErrorCode::InvalidArgument,
            "contraction amount must lie in [0, (max - min) / 2]");
    auto out = v;
    out.front() += t;
    out.back() -= t;
    return DiscreteDistribution<S>(std::move(out));
}

}  // namespace effico
