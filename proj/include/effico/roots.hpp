// SPDX-License-Identifier: MIT
//
// Bracketed root finding that tolerates infinite function values at the
// bracket ends (quantile functions diverge at 0 and 1).
#pragma once

#include "effico/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace effico {

struct RootOptions {
    double abs_tol = 1e-13;
    /// Tightens the stopping width near zero.
    double rel_tol = 1e-11;
    int max_iterations = 400;
};

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
};

/// Root of an increasing or decreasing f on [a, b] given sign(f(a)) != sign(f(b)).
/// Illinois-modified false position, falling back to bisection whenever the
/// bracket fails to halve or a value is not finite.
template <class F>
RootResult bracketed_root(F&& f, double a, double b, double fa, double fb, const RootOptions& opt = {}) {
    require(a < b, ErrorCode::RootBracketFailure, "root bracket is empty");
    require(!std::isnan(fa) && !std::isnan(fb), ErrorCode::RootBracketFailure, "NaN at the root bracket");
    if (fa == 0.0) return {a, fa, 0};
    if (fb == 0.0) return {b, fb, 0};
    require((fa < 0.0) != (fb < 0.0), ErrorCode::RootBracketFailure, "no sign change on the root bracket");

    int side = 0;
    double width_before = b - a;
    RootResult r;
    for (r.iterations = 1; r.iterations <= opt.max_iterations; ++r.iterations) {
        const double mid = 0.5 * (a + b);
        const double tol =
            std::max(4.0 * std::numeric_limits<double>::epsilon() * std::abs(mid),
                     std::min(opt.abs_tol, opt.rel_tol * std::abs(mid)));
        if (b - a <= tol || mid <= a || mid >= b) break;  // second test: adjacent doubles

        double x = mid;
        const bool finite = std::isfinite(fa) && std::isfinite(fb);
        // bisect every other step unless false position is shrinking fast
        if (finite && (r.iterations % 3 != 0 || b - a < 0.5 * width_before)) {
            x = (a * fb - b * fa) / (fb - fa);
            if (!(x > a && x < b)) x = mid;
        }
        if (r.iterations % 3 == 0) width_before = b - a;

        const double fx = f(x);
        require(!std::isnan(fx), ErrorCode::RootBracketFailure, "NaN inside the root bracket");
        if (fx == 0.0) return {x, fx, r.iterations};
        if ((fx < 0.0) == (fa < 0.0)) {
            a = x;
            fa = fx;
            if (side == -1) fb *= 0.5;
            side = -1;
        } else {
            b = x;
            fb = fx;
            if (side == 1) fa *= 0.5;
            side = 1;
        }
    }
    require(r.iterations <= opt.max_iterations, ErrorCode::RootBracketFailure, "root finder did not converge");
    r.x = 0.5 * (a + b);
    r.fx = std::abs(fa) < std::abs(fb) ? fa : fb;
    return r;
}

template <class F>
RootResult bracketed_root(F&& f, double a, double b, const RootOptions& opt = {}) {
    const double fa = f(a);
    const double fb = f(b);
    return bracketed_root(f, a, b, fa, fb, opt);
}

}  // namespace effico
