// SPDX-License-Identifier: MIT
#pragma once

#include "effico/error.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace effico {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    /// Rule mapped from [-1, 1] to [a, b].
    [[nodiscard]] QuadratureRule on(double a, double b) const {
        QuadratureRule r;
        const double half = 0.5 * (b - a), centre = 0.5 * (a + b);
        r.nodes.reserve(nodes.size());
        r.weights.reserve(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            r.nodes.push_back(centre + half * nodes[i]);
            r.weights.push_back(half * weights[i]);
        }
        return r;
    }

    template <class F>
    [[nodiscard]] double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

/// n-point Gauss-Legendre rule on [-1, 1]; Newton iteration on P_n from the
/// Chebyshev-like initial guesses.
inline QuadratureRule gauss_legendre(std::size_t n) {
    require(n >= 1, ErrorCode::InvalidArgument, "quadrature needs at least one node");
    QuadratureRule r;
    r.nodes.assign(n, 0.0);
    r.weights.assign(n, 0.0);
    const auto nd = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const auto kd = static_cast<double>(k);
                const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
                p0 = p1;
                p1 = p2;
            }
            dp = nd * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 4e-16) break;
        }
        // derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const auto kd = static_cast<double>(k);
            const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
            p0 = p1;
            p1 = p2;
        }
        dp = nd * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

}  // namespace effico
