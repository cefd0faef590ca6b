// SPDX-License-Identifier: MIT
//
// Regime-switching Black-Scholes market: the volatility is sigma_H with
// probability p and sigma_L otherwise, independent of the Brownian driver.
// Stock and pricing kernels xi^q are both two-component lognormal mixtures.
#pragma once

#include "effico/error.hpp"
#include "effico/normal.hpp"
#include "effico/quadrature.hpp"
#include "effico/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

namespace effico {

struct RegimeSwitchModel {
    double mu = 0.05;
    double sigma_h = 0.3;
    double sigma_l = 0.15;
    double p = 0.5;
    double T = 1.0;
    double s0 = 1.0;

    /// Equal volatilities are accepted: the market is then complete.
    void validate() const {
        auto finite = [](double v) { return std::isfinite(v); };
        require(finite(mu) && finite(sigma_h) && finite(sigma_l) && finite(p) && finite(T) && finite(s0),
                ErrorCode::InvalidArgument, "model parameters must be finite");
        require(sigma_l > 0.0 && sigma_h >= sigma_l, ErrorCode::InvalidArgument, "need sigma_h >= sigma_l > 0");
        require(p > 0.0 && p < 1.0, ErrorCode::InvalidArgument, "p must lie in (0, 1)");
        require(T > 0.0, ErrorCode::InvalidArgument, "T must be positive");
        require(s0 > 0.0, ErrorCode::InvalidArgument, "s0 must be positive");
        require(mu > 0.0, ErrorCode::InvalidArgument, "mu must be positive");
    }
    [[nodiscard]] double theta_h() const { return mu / sigma_h; }
    [[nodiscard]] double theta_l() const { return mu / sigma_l; }
    /// E[S_T]
    [[nodiscard]] double forward() const { return s0 * std::exp(mu * T); }
    /// Var[S_T]
    [[nodiscard]] double variance() const {
        return s0 * s0 * std::exp(2.0 * mu * T) *
               (p * std::expm1(sigma_h * sigma_h * T) + (1.0 - p) * std::expm1(sigma_l * sigma_l * T));
    }
};

/// p * LN(a_h, b_h^2) + (1 - p) * LN(a_l, b_l^2).
class LogNormalMixture {
public:
    LogNormalMixture(double p, double a_h, double b_h, double a_l, double b_l)
        : p_(p), a_h_(a_h), b_h_(b_h), a_l_(a_l), b_l_(b_l) {}

    [[nodiscard]] double cdf(double x) const {
        require(x > 0.0, ErrorCode::InvalidArgument, "cdf argument must be positive");
        const double lx = std::log(x);
        return p_ * normal_cdf((lx - a_h_) / b_h_) + (1.0 - p_) * normal_cdf((lx - a_l_) / b_l_);
    }

    /// Mixture quantile. The root is taken in y = log x, bracketed by the two
    /// component quantiles, on log of the tail mass of the nearer side so that
    /// deep tails keep relative precision.
    [[nodiscard]] double quantile(Level lv) const { return std::exp(log_quantile(lv)); }

    [[nodiscard]] double log_quantile(Level lv) const {
        require(lv.u > 0.0 && lv.v > 0.0, ErrorCode::InvalidArgument, "quantile level must lie in (0, 1)");
        const double zq = normal_quantile(lv);
        const double yh = a_h_ + b_h_ * zq, yl = a_l_ + b_l_ * zq;
        double lo = std::min(yh, yl), hi = std::max(yh, yl);
        if (hi - lo <= 1e-15 * std::max(1.0, std::abs(lo))) return 0.5 * (lo + hi);
        const bool lower = lv.u <= lv.v;
        const double target = std::log(lower ? lv.u : lv.v);
        auto excess = [&](double y) {
            const double zh = (y - a_h_) / b_h_, zl = (y - a_l_) / b_l_;
            if (lower) return std::log(p_ * normal_cdf(zh) + (1.0 - p_) * normal_cdf(zl)) - target;
            return target - std::log(p_ * normal_cdf(-zh) + (1.0 - p_) * normal_cdf(-zl));
        };
        return bracketed_root(excess, lo, hi, RootOptions{1e-13, 1e-13, 400}).x;
    }

    /// Share alpha of the level carried by the high component at the quantile:
    /// Q_H(alpha) = Q_L((u - alpha p) / (1 - p)).
    [[nodiscard]] double high_share(Level lv) const {
        return normal_cdf((log_quantile(lv) - a_h_) / b_h_);
    }

    [[nodiscard]] double quantile(double u) const { return quantile(Level::of(u)); }

    /// P(X <= e^y) and P(X > e^y), each summed from its own tails.
    [[nodiscard]] Level levels_at_log(double y) const {
        const double zh = (y - a_h_) / b_h_, zl = (y - a_l_) / b_l_;
        return {p_ * normal_cdf(zh) + (1.0 - p_) * normal_cdf(zl), p_ * normal_cdf(-zh) + (1.0 - p_) * normal_cdf(-zl)};
    }

    [[nodiscard]] double p() const { return p_; }
    [[nodiscard]] double a_high() const { return a_h_; }
    [[nodiscard]] double b_high() const { return b_h_; }
    [[nodiscard]] double a_low() const { return a_l_; }
    [[nodiscard]] double b_low() const { return b_l_; }

    [[nodiscard]] double mean() const {
        return p_ * std::exp(a_h_ + 0.5 * b_h_ * b_h_) + (1.0 - p_) * std::exp(a_l_ + 0.5 * b_l_ * b_l_);
    }

private:
    double p_, a_h_, b_h_, a_l_, b_l_;
};

inline LogNormalMixture stock_law(const RegimeSwitchModel& m) {
    m.validate();
    const double rt = std::sqrt(m.T);
    const double base = std::log(m.s0) + m.mu * m.T;
    return {m.p, base - 0.5 * m.sigma_h * m.sigma_h * m.T, m.sigma_h * rt, base - 0.5 * m.sigma_l * m.sigma_l * m.T,
            m.sigma_l * rt};
}

/// Law of xi^q = (q/p) E(-theta_H W)_T on the high regime and ((1-q)/(1-p)) E(-theta_L W)_T on the low one.
inline LogNormalMixture kernel_law(const RegimeSwitchModel& m, double q) {
    m.validate();
    require(q > 0.0 && q < 1.0, ErrorCode::InvalidArgument, "kernel parameter q must lie in (0, 1)");
    const double rt = std::sqrt(m.T);
    const double th = m.theta_h(), tl = m.theta_l();
    return {m.p, std::log(q / m.p) - 0.5 * th * th * m.T, th * rt, std::log((1.0 - q) / (1.0 - m.p)) - 0.5 * tl * tl * m.T,
            tl * rt};
}

inline double cdf_stock(const RegimeSwitchModel& m, double x) {
    require(x > 0.0, ErrorCode::InvalidArgument, "cdf argument must be positive");
    return stock_law(m).cdf(x);
}
inline double cdf_kernel(const RegimeSwitchModel& m, double q, double x) {
    require(x > 0.0, ErrorCode::InvalidArgument, "cdf argument must be positive");
    return kernel_law(m, q).cdf(x);
}
inline double quantile_stock(const RegimeSwitchModel& m, double u) {
    require(u > 0.0 && u < 1.0, ErrorCode::InvalidArgument, "quantile level must lie in (0, 1)");
    return stock_law(m).quantile(u);
}
inline double quantile_kernel(const RegimeSwitchModel& m, double q, double u) {
    require(u > 0.0 && u < 1.0, ErrorCode::InvalidArgument, "quantile level must lie in (0, 1)");
    return kernel_law(m, q).quantile(u);
}

struct MixtureStock {
    RegimeSwitchModel model;
};
struct NormalTarget {
    double m;
    double variance;
};
struct LogNormalTarget {
    double M;
    double s2;
};
struct PointMass {
    double m;
};

class TargetDistribution {
public:
    using Descriptor = std::variant<MixtureStock, NormalTarget, LogNormalTarget, PointMass>;

    template <class T>
        requires(!std::is_same_v<std::decay_t<T>, TargetDistribution> && std::is_constructible_v<Descriptor, T>)
    TargetDistribution(T&& d) : TargetDistribution(Descriptor(std::forward<T>(d)), 0) {}  // NOLINT

private:
    TargetDistribution(Descriptor d, int) : d_(std::move(d)) {
        if (auto* s = std::get_if<MixtureStock>(&d_)) {
            stock_ = stock_law(s->model);
        } else if (auto* n = std::get_if<NormalTarget>(&d_)) {
            require(std::isfinite(n->m) && std::isfinite(n->variance) && n->variance >= 0.0,
                    ErrorCode::InvalidArgument, "normal target needs a finite mean and variance >= 0");
        } else if (auto* l = std::get_if<LogNormalTarget>(&d_)) {
            require(std::isfinite(l->M) && std::isfinite(l->s2) && l->s2 >= 0.0, ErrorCode::InvalidArgument,
                    "lognormal target needs finite M and s^2 >= 0");
        } else {
            require(std::isfinite(std::get<PointMass>(d_).m), ErrorCode::InvalidArgument, "point mass must be finite");
        }
    }

public:
    [[nodiscard]] const Descriptor& descriptor() const { return d_; }

    [[nodiscard]] double quantile(Level lv) const {
        if (stock_) return stock_->quantile(lv);
        if (auto* n = std::get_if<NormalTarget>(&d_)) return n->m + std::sqrt(n->variance) * normal_quantile(lv);
        if (auto* l = std::get_if<LogNormalTarget>(&d_)) return std::exp(l->M + std::sqrt(l->s2) * normal_quantile(lv));
        return std::get<PointMass>(d_).m;
    }
    [[nodiscard]] double quantile(double u) const { return quantile(Level::of(u)); }

    [[nodiscard]] std::string name() const {
        switch (d_.index()) {
            case 0: return "mixture-stock";
            case 1: return "normal";
            case 2: return "lognormal";
            default: return "point-mass";
        }
    }

private:
    Descriptor d_;
    std::optional<LogNormalMixture> stock_;
};

struct MomentMatched {
    NormalTarget normal;
    LogNormalTarget lognormal;
};

/// Normal and lognormal laws with mean m and variance V.
inline MomentMatched targets_with_moments(double m, double variance) {
    require(m > 0.0 && variance >= 0.0, ErrorCode::InvalidArgument, "need m > 0 and variance >= 0");
    const double s2 = std::log1p(variance / (m * m));
    return {NormalTarget{m, variance}, LogNormalTarget{std::log(m) - 0.5 * s2, s2}};
}

/// Targets sharing the mean and variance of S_T.
inline MomentMatched moment_matched_targets(const RegimeSwitchModel& m) {
    m.validate();
    return targets_with_moments(m.forward(), m.variance());
}

struct StochvolOptions {
    std::size_t nodes = 400;
    double t_max = 8.0;
    std::size_t coarse_grid = 33;
    double q_tol = 1e-8;
    double endpoint_warning = 1e-6;
    /// Curve workers; 0 defers to EFFICO_THREADS / hardware concurrency.
    std::size_t threads = 0;
};

namespace detail {

inline const QuadratureRule& normal_rule(std::size_t nodes, double t_max) {
    static std::mutex mu;
    // deque keeps references stable while other threads append
    static std::deque<std::pair<std::pair<std::size_t, double>, QuadratureRule>> cache;
    std::lock_guard lock(mu);
    for (const auto& [key, rule] : cache)
        if (key.first == nodes && key.second == t_max) return rule;
    cache.emplace_back(std::pair{nodes, t_max}, gauss_legendre(nodes).on(-t_max, t_max));
    return cache.back().second;
}

}  // namespace detail

/// g(q) = E[xi^q F^{-1}(1 - F_{xi^q}(xi^q))], the cost of the payoff with law F
/// ordered opposite to xi^q. Integrated regime by regime over the Brownian
/// normal score t in [-t_max, t_max]; unlike the quantile-product form the
/// integrands stay smooth when the two kernel regimes separate.
inline double maximin_value_g(const RegimeSwitchModel& m, double q, const TargetDistribution& target,
                              const StochvolOptions& opt = {}) {
    const auto law = kernel_law(m, q);
    const auto& rule = detail::normal_rule(opt.nodes, opt.t_max);
    auto regime = [&](double a, double b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double t = rule.nodes[i];
            const double y = a + b * t;
            const Level above = law.levels_at_log(y).complement();
            const double f = std::exp(y) * target.quantile(above) * normal_pdf(t);
            require(std::isfinite(f), ErrorCode::IntegrationDivergence, "cost integrand is not finite");
            acc += rule.weights[i] * f;
        }
        return acc;
    };
    const double acc =
        law.p() * regime(law.a_high(), law.b_high()) + (1.0 - law.p()) * regime(law.a_low(), law.b_low());
    require(std::isfinite(acc), ErrorCode::IntegrationDivergence, "cost integral diverges");
    return acc;
}

struct SuperhedgeDistribution {
    double value = 0.0;
    double q_star = 0.0;
    /// argmax within the warning distance of 0 or 1
    bool endpoint_warning = false;
    std::size_t evaluations = 0;
};

/// sup over q of g(q): coarse grid, then golden section around the best grid point.
inline SuperhedgeDistribution superhedge_cost_distribution(const RegimeSwitchModel& m, const TargetDistribution& target,
                                                           const StochvolOptions& opt = {}) {
    m.validate();
    SuperhedgeDistribution out;
    auto g = [&](double q) {
        ++out.evaluations;
        return maximin_value_g(m, q, target, opt);
    };
    const std::size_t k = opt.coarse_grid;
    const double step = 1.0 / static_cast<double>(k + 1);
    std::size_t best = 1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= k; ++i) {
        const double v = g(static_cast<double>(i) * step);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = static_cast<double>(best - 1) * step;
    double b = static_cast<double>(best + 1) * step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double gc = g(c), gd = g(d);
    while (b - a > opt.q_tol) {
        if (gc >= gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    out.q_star = gc >= gd ? c : d;
    out.value = std::max(gc, gd);
    if (best_val > out.value) {
        out.value = best_val;
        out.q_star = static_cast<double>(best) * step;
    }
    out.endpoint_warning = out.q_star < opt.endpoint_warning || out.q_star > 1.0 - opt.endpoint_warning;
    return out;
}

struct CurveRow {
    double variance = 0.0;
    double cost_normal = 0.0;
    double cost_lognormal = 0.0;
};

/// {1e-8} together with V k / 10 for k = 1..19, V the model variance.
inline std::vector<double> default_variance_grid(const RegimeSwitchModel& m) {
    const double v = m.variance();
    std::vector<double> grid{1e-8};
    for (int k = 1; k <= 19; ++k) grid.push_back(v * k / 10.0);
    return grid;
}

/// Worker count: the explicit request, else EFFICO_THREADS, else the hardware concurrency.
inline std::size_t worker_count(std::size_t tasks, std::size_t requested = 0) {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (requested > 0) {
        n = requested;
    } else if (const char* env = std::getenv("EFFICO_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) n = static_cast<std::size_t>(v);
    }
    return std::max<std::size_t>(1, std::min(n, tasks));
}

/// Costs of the moment-matched normal and lognormal targets along a variance
/// grid, mean fixed at the model forward. Rows follow the grid order.
inline std::vector<CurveRow> variance_curve(const RegimeSwitchModel& m, const std::vector<double>& grid,
                                           const StochvolOptions& opt = {}) {
    m.validate();
    require(!grid.empty(), ErrorCode::InvalidArgument, "variance grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require(std::isfinite(grid[i]) && grid[i] > 0.0, ErrorCode::InvalidArgument, "variances must be positive");
        require(i == 0 || grid[i - 1] < grid[i], ErrorCode::InvalidArgument, "variance grid must be increasing");
    }
    const double mean = m.forward();
    std::vector<CurveRow> rows(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());
    auto run = [&](std::size_t i) {
        try {
            const auto t = targets_with_moments(mean, grid[i]);
            rows[i].variance = grid[i];
            rows[i].cost_normal = superhedge_cost_distribution(m, t.normal, opt).value;
            rows[i].cost_lognormal = superhedge_cost_distribution(m, t.lognormal, opt).value;
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const std::size_t workers = worker_count(grid.size(), opt.threads);
    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) run(i);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < grid.size(); i += workers) run(i);
            });
        }
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

/// Fixed-format CSV; identical rows give identical bytes.
inline std::string curve_csv(const std::vector<CurveRow>& rows) {
    std::string out = "variance,cost_normal,cost_lognormal\n";
    char buf[96];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.10e,%.12f,%.12f\n", r.variance, r.cost_normal, r.cost_lognormal);
        out += buf;
    }
    return out;
}

}  // namespace effico
