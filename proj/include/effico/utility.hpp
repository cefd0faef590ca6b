// SPDX-License-Identifier: MIT
//
// Expected-utility maximization in the canonical trinomial market. The
// optimal terminal wealth is perfectly cost-efficient, so it has the form
// (3 x0 - 2 x, x0, x) and x solves u'(x) = 2 u'(3 x0 - 2 x).
#pragma once

#include "effico/distribution.hpp"
#include "effico/efficiency.hpp"
#include "effico/error.hpp"
#include "effico/three_state.hpp"

#include <boost/math/tools/roots.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>

namespace effico {

enum class UtilityKind { Log, Exp, Power, Custom };

class Utility {
public:
    using Fn = std::function<double(double)>;

    static Utility log() { return Utility(UtilityKind::Log); }
    static Utility exp() { return Utility(UtilityKind::Exp); }
    /// u(x) = x^alpha / alpha with alpha < 1, alpha != 0.
    static Utility power(double alpha) {
        require(std::isfinite(alpha) && alpha < 1.0 && alpha != 0.0, ErrorCode::InvalidArgument,
                "power utility needs alpha < 1 and alpha != 0");
        Utility u(UtilityKind::Power);
        u.alpha_ = alpha;
        u.beta_ = alpha / (alpha - 1.0);
        return u;
    }
    /// Increasing concave u with derivative du on (domain_lo, inf).
    static Utility custom(Fn u, Fn du, double domain_lo = 0.0) {
        require(static_cast<bool>(u) && static_cast<bool>(du), ErrorCode::InvalidArgument,
                "custom utility needs u and u'");
        Utility out(UtilityKind::Custom);
        out.u_ = std::move(u);
        out.du_ = std::move(du);
        out.domain_lo_ = domain_lo;
        return out;
    }

    [[nodiscard]] UtilityKind kind() const { return kind_; }
    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] double beta() const { return beta_; }
    [[nodiscard]] bool closed_form() const { return kind_ != UtilityKind::Custom; }

    [[nodiscard]] double value(double x) const {
        switch (kind_) {
            case UtilityKind::Log: return x > 0 ? std::log(x) : -std::numeric_limits<double>::infinity();
            case UtilityKind::Exp: return -std::exp(-x);
            case UtilityKind::Power:
                if (x < 0) return -std::numeric_limits<double>::infinity();
                return std::pow(x, alpha_) / alpha_;
            case UtilityKind::Custom: return u_(x);
        }
        return 0.0;
    }
    [[nodiscard]] double derivative(double x) const {
        switch (kind_) {
            case UtilityKind::Log: return 1.0 / x;
            case UtilityKind::Exp: return std::exp(-x);
            case UtilityKind::Power: return std::pow(x, alpha_ - 1.0);
            case UtilityKind::Custom: return du_(x);
        }
        return 0.0;
    }

    /// Analytic maximizer x* for the closed-form kinds.
    [[nodiscard]] std::optional<double> analytic_x_star(double x0) const {
        switch (kind_) {
            case UtilityKind::Log: return 3.0 * x0 / 4.0;
            case UtilityKind::Exp: return x0 - std::log(2.0) / 3.0;
            case UtilityKind::Power: return 3.0 * x0 * std::pow(2.0, beta_ - 1.0) / (1.0 + std::pow(2.0, beta_));
            case UtilityKind::Custom: return std::nullopt;
        }
        return std::nullopt;
    }

    [[nodiscard]] std::string name() const {
        switch (kind_) {
            case UtilityKind::Log: return "log";
            case UtilityKind::Exp: return "exp";
            case UtilityKind::Power: return "power";
            case UtilityKind::Custom: return "custom";
        }
        return "?";
    }

private:
    explicit Utility(UtilityKind k) : kind_(k) {}

    UtilityKind kind_;
    double alpha_ = 0.0;
    double beta_ = 0.0;
    double domain_lo_ = 0.0;
    Fn u_;
    Fn du_;

    friend std::pair<double, double> foc_bracket(const Utility&, double);
};

struct WealthSolution {
    double x_star = 0.0;
    std::array<double, 3> payoff{};
    /// (1/3) sum of u over the three states.
    double value = 0.0;
    /// u'(x*) - 2 u'(3 x0 - 2 x*)
    double foc_residual = 0.0;
    std::optional<double> analytic_x_star;
};

inline std::pair<double, double> foc_bracket(const Utility& u, double x0) {
    constexpr double eps = 1e-12;
    switch (u.kind()) {
        case UtilityKind::Exp: return {x0 - 10.0, x0 - eps};
        case UtilityKind::Custom: {
            const double scale = std::max(1.0, std::abs(x0));
            return {u.domain_lo_ + eps * scale, x0 - eps * scale};
        }
        default: return {eps * x0, x0 - eps * x0};
    }
}

inline double foc(const Utility& u, double x0, double x) {
    return u.derivative(x) - 2.0 * u.derivative(3.0 * x0 - 2.0 * x);
}

inline WealthSolution wealth_from_x_star(const Utility& u, double x0, double x_star) {
    WealthSolution w;
    w.x_star = x_star;
    w.payoff = {3.0 * x0 - 2.0 * x_star, x0, x_star};
    w.value = (u.value(w.payoff[0]) + u.value(w.payoff[1]) + u.value(w.payoff[2])) / 3.0;
    w.foc_residual = foc(u, x0, x_star);
    return w;
}

/// Bisection on the first-order condition; closed-form kinds are checked against
/// their analytic maximizer.
inline WealthSolution optimal_wealth(const Utility& u, double x0) {
    require(std::isfinite(x0) && x0 > 0.0, ErrorCode::InvalidArgument, "x0 must be positive");
    auto [lo, hi] = foc_bracket(u, x0);
    auto g = [&](double x) { return foc(u, x0, x); };
    const double g_lo = g(lo), g_hi = g(hi);
    require(std::isfinite(g_lo) && std::isfinite(g_hi) && g_lo > 0.0 && g_hi < 0.0, ErrorCode::BracketFailure,
            "first-order condition has no sign change on the search bracket");
    boost::uintmax_t max_iter = 2000;
    auto r = boost::math::tools::bisect(g, lo, hi, boost::math::tools::eps_tolerance<double>(), max_iter);
    const double x = std::abs(g(r.first)) <= std::abs(g(r.second)) ? r.first : r.second;

    auto w = wealth_from_x_star(u, x0, x);
    w.analytic_x_star = u.analytic_x_star(x0);
    if (w.analytic_x_star) {
        require(std::abs(*w.analytic_x_star - x) <= 1e-10 * std::max(1.0, std::abs(x)), ErrorCode::NumericalFailure,
                "numeric maximizer disagrees with the analytic one");
    }
    return w;
}

/// Trinomial terminal wealth (x0 + h u~, x0, x0 + h d~) with u~ = 1, d~ = -1/2, q = 1/3.
inline WealthSolution trinomial_closed_form(const Utility& u, double x0) {
    require(std::isfinite(x0) && x0 > 0.0, ErrorCode::InvalidArgument, "x0 must be positive");
    constexpr double up = 1.0, down = -0.5, q = 1.0 / 3.0;
    double h = 0.0;
    switch (u.kind()) {
        case UtilityKind::Log: h = x0 * (down + up) / (-2.0 * down * up); break;
        case UtilityKind::Exp: h = std::log(up / -down) / (up - down); break;
        case UtilityKind::Power: {
            const double b = u.beta();
            const double cv = 0.5 * (std::pow(2.0 * q, b) + std::pow(2.0 * (1.0 - q), b));
            h = (x0 / up) * (std::pow(2.0 * q, b - 1.0) / cv - 1.0);
            break;
        }
        case UtilityKind::Custom: throw Error(ErrorCode::InvalidArgument, "no closed form for a custom utility");
    }
    auto w = wealth_from_x_star(u, x0, x0 + h * down);
    w.payoff[0] = x0 + h * up;
    w.value = (u.value(w.payoff[0]) + u.value(w.payoff[1]) + u.value(w.payoff[2])) / 3.0;
    w.analytic_x_star = u.analytic_x_star(x0);
    return w;
}

enum class ThetaRange {
    /// theta in [-x0/2, x0]: every state's wealth is nonnegative
    Nonnegative,
    /// theta in [-x0, x0/2]
    Alternative,
};

struct ThetaSearch {
    double theta = 0.0;
    std::array<double, 3> payoff{};
    double value = 0.0;
    std::optional<double> reference_value;  // objective at theta = -1/5
    double theta_lo = 0.0;
    double theta_hi = 0.0;
    std::size_t evaluations = 0;
};

inline std::array<double, 3> theta_payoff(double x0, double theta) {
    return {x0 + 2.0 * theta, x0, x0 - theta};
}

/// Exhaustive grid search over holdings theta of the risky asset. `utility`
/// may return -inf outside its domain.
inline ThetaSearch brute_force_theta(const std::function<double(double)>& utility, double x0, double step,
                                     ThetaRange range = ThetaRange::Nonnegative, bool with_reference = false) {
    require(std::isfinite(step) && step > 0.0, ErrorCode::EmptyFeasibleRange, "grid step must be positive");
    require(std::isfinite(x0) && x0 > 0.0, ErrorCode::EmptyFeasibleRange, "x0 must be positive");
    ThetaSearch out;
    out.theta_lo = range == ThetaRange::Nonnegative ? -x0 / 2.0 : -x0;
    out.theta_hi = range == ThetaRange::Nonnegative ? x0 : x0 / 2.0;
    auto objective = [&](double theta) {
        auto p = theta_payoff(x0, theta);
        return (utility(p[0]) + utility(p[1]) + utility(p[2])) / 3.0;
    };
    const auto count = static_cast<std::size_t>(std::floor((out.theta_hi - out.theta_lo) / step + 1e-9)) + 1;
    out.value = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < count; ++k) {
        const double theta = k + 1 == count ? out.theta_hi : out.theta_lo + static_cast<double>(k) * step;
        const double v = objective(theta);
        if (v > out.value) {
            out.value = v;
            out.theta = theta;
        }
    }
    out.evaluations = count;
    require(std::isfinite(out.value), ErrorCode::EmptyFeasibleRange, "objective is -inf on the whole grid");
    out.payoff = theta_payoff(x0, out.theta);
    if (with_reference) out.reference_value = objective(-0.2);
    return out;
}

template <class S>
struct CeCheck {
    bool perfectly_cost_efficient = false;
    Payoff<S> optimizer;
    /// optimizer <=_cx payoff
    bool optimizer_dominated = false;
};

/// Is a 3-state payoff the cheapest way to obtain its own distribution?
template <class S>
CeCheck<S> ce_check_of_payoff(const Payoff<S>& payoff) {
    require(payoff.size() == 3, ErrorCode::DimensionMismatch, "payoff must have three states");
    CeCheck<S> out;
    DiscreteDistribution<S> dist(payoff);
    if (dist[0] == dist[2]) {
        out.perfectly_cost_efficient = true;
        out.optimizer = payoff;
        out.optimizer_dominated = true;
        return out;
    }
    const auto family = canonical_family<S>();
    out.perfectly_cost_efficient = is_perfectly_cost_efficient(family, dist);
    auto sol = convexified_minimax(family, dist);
    out.optimizer = sol.optimizers.front().payoff.vertices.front();
    out.optimizer_dominated = is_convex_dominated(out.optimizer, payoff);
    return out;
}

}  // namespace effico
