// SPDX-License-Identifier: MIT
#pragma once

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace effico {

/// A probability level carried together with its complement so that both
/// tails keep full relative precision.
struct Level {
    double u;
    double v;  // 1 - u

    static Level of(double u) { return {u, 1.0 - u}; }
    /// u = Phi(t), v = Phi(-t)
    static Level from_normal(double t);
    [[nodiscard]] Level complement() const { return {v, u}; }
};

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

inline Level Level::from_normal(double t) {
    return {normal_cdf(t), normal_cdf(-t)};
}

/// Phi^{-1}(u); -inf at 0 and +inf at 1.
inline double normal_quantile(double u) {
    if (u <= 0.0) return -std::numeric_limits<double>::infinity();
    if (u >= 1.0) return std::numeric_limits<double>::infinity();
    if (u <= 0.5) return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
    return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * (1.0 - u));
}

/// Phi^{-1} evaluated from whichever side of the level is small.
inline double normal_quantile(Level p) {
    if (p.u <= 0.0) return -std::numeric_limits<double>::infinity();
    if (p.v <= 0.0) return std::numeric_limits<double>::infinity();
    if (p.u <= p.v) return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p.u);
    return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p.v);
}

}  // namespace effico
