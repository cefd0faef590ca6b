// SPDX-License-Identifier: MIT
//
// Self-checks shared by `effico verify` and the acceptance binary. Module
// suites replay hand-derived examples; the acceptance suite runs the ten
// numbered criteria, each with a runtime budget.
#pragma once

#include "effico/distribution.hpp"
#include "effico/efficiency.hpp"
#include "effico/lp.hpp"
#include "effico/market.hpp"
#include "effico/stochvol.hpp"
#include "effico/three_state.hpp"
#include "effico/utility.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace effico {

struct CheckResult {
    std::string id;
    std::string title;
    bool pass = false;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    double seconds = 0.0;
    double budget = 0.0;  // 0: unbounded
};

/// Collects failed expectations inside one check.
class Findings {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    void note(std::string what) { notes_.push_back(std::move(what)); }
    [[nodiscard]] const std::vector<std::string>& failures() const { return failures_; }
    [[nodiscard]] const std::vector<std::string>& notes() const { return notes_; }

private:
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

inline CheckResult run_check(std::string id, std::string title, double budget, const std::function<void(Findings&)>& body) {
    CheckResult r;
    r.id = std::move(id);
    r.title = std::move(title);
    r.budget = budget;
    Findings f;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(f);
    } catch (const Error& e) {
        f.expect(false, std::string("unexpected error ") + std::string(to_string(e.code())) + ": " + e.what());
    } catch (const std::exception& e) {
        f.expect(false, std::string("unexpected exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.failures = f.failures();
    r.notes = f.notes();
    if (budget > 0.0 && r.seconds > budget) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "runtime %.3f s exceeds the %.3g s budget", r.seconds, budget);
        r.failures.emplace_back(buf);
    }
    r.pass = r.failures.empty();
    return r;
}

inline std::string format_check(const CheckResult& r) {
    char head[64];
    std::snprintf(head, sizeof head, "%s  %-14s ", r.pass ? "PASS" : "FAIL", r.id.c_str());
    std::string out = head + r.title;
    char tail[64];
    std::snprintf(tail, sizeof tail, "  (%.3f s)", r.seconds);
    out += tail;
    for (const auto& f : r.failures) out += "\n      - " + f;
    for (const auto& n : r.notes) out += "\n      note: " + n;
    return out;
}

inline bool all_passed(const std::vector<CheckResult>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const CheckResult& r) { return r.pass; });
}

namespace detail {

using R = Rational;

inline R q(long long a, long long b = 1) { return R(a, b); }

template <class S>
std::string text(const S& v) {
    if constexpr (is_exact_v<S>) {
        return ScalarTraits<S>::to_string(v);
    } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }
}

template <class S>
std::string text(const std::vector<S>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + text(v[i]);
    return out + ")";
}

template <class S>
std::vector<S> vec(std::initializer_list<S> xs) {
    return std::vector<S>(xs);
}

inline std::vector<R> rv(std::initializer_list<R> xs) { return std::vector<R>(xs); }

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

inline std::vector<R> xi(const R& u) { return canonical_line<R>().kernel_at(u); }

template <class S>
void expect_eq(Findings& f, const S& got, const S& want, const std::string& what) {
    f.expect(got == want, what + ": got " + text(got) + ", want " + text(want));
}

}  // namespace detail

// ---------------------------------------------------------------- modules

inline std::vector<CheckResult> market_suite() {
    using namespace detail;
    std::vector<CheckResult> out;
    out.push_back(run_check("market.1", "canonical market gives u -> (3u, 3-9u, 6u) on [0, 1/3]", 0, [](Findings& f) {
        auto fam = kernel_family(DiscreteMarket<R>::canonical());
        f.expect(fam.parametric(), "family is not one-parameter");
        const auto& l = fam.line();
        expect_eq(f, l.base, rv({0, 3, 0}), "base");
        expect_eq(f, l.direction, rv({3, -9, 6}), "direction");
        expect_eq(f, l.u_lo, q(0), "u_lo");
        expect_eq(f, l.u_hi, q(1, 3), "u_hi");
    }));
    out.push_back(run_check("market.2", "two-state market has the unique kernel (2/3, 4/3)", 0, [](Findings& f) {
        auto fam = kernel_family(DiscreteMarket<R>({q(1)}, {{q(2), q(1, 2)}}));
        auto v = fam.vertices();
        f.expect(!fam.parametric() && v.size() == 1, "expected a single-vertex family");
        if (!v.empty()) expect_eq(f, v.front(), rv({q(2, 3), q(4, 3)}), "kernel");
    }));
    out.push_back(run_check("market.3", "a redundant asset leaves the family unchanged", 0, [](Findings& f) {
        auto fam = kernel_family(DiscreteMarket<R>({q(2), q(4)}, {{q(4), q(2), q(1)}, {q(8), q(4), q(2)}}));
        f.expect(fam.parametric(), "family is not one-parameter");
        if (fam.parametric()) {
            expect_eq(f, fam.line().kernel_at(fam.line().u_lo), rv({0, 3, 0}), "lower end");
            expect_eq(f, fam.line().kernel_at(fam.line().u_hi), rv({1, 0, 2}), "upper end");
        }
    }));
    out.push_back(run_check("market.4", "prices: 7/4, constants, the traded asset", 0, [](Findings& f) {
        expect_eq(f, price(xi(q(1, 4)), rv({3, 2, 1})), q(7, 4), "price of (3,2,1) under xi^(1/4)");
        expect_eq(f, price(xi(q(1, 8)), rv({q(5, 2), q(5, 2), q(5, 2)})), q(5, 2), "price of a constant");
        for (auto u : {q(0), q(1, 7), q(1, 3)}) expect_eq(f, price(xi(u), rv({4, 2, 1})), q(2), "price of sT at u=" + text(u));
    }));
    out.push_back(run_check("market.5", "superhedging costs of (3,2,1), (4,2,1), (1,2,3)", 0, [](Findings& f) {
        auto fam = canonical_family<R>();
        auto a = superhedge_cost(fam, rv({3, 2, 1}));
        expect_eq(f, a.value, q(2), "(3,2,1) value");
        f.expect(a.maximizers.size() == 1 && a.maximizers[0].kernel == rv({0, 3, 0}) && a.boundary(),
                 "(3,2,1) should be attained only at the boundary kernel (0,3,0)");
        auto b = superhedge_cost(fam, rv({4, 2, 1}));
        expect_eq(f, b.value, q(2), "(4,2,1) value");
        f.expect(b.u_range && b.u_range->first == q(0) && b.u_range->second == q(1, 3), "(4,2,1) should be attained on [0,1/3]");
        auto c = superhedge_cost(fam, rv({1, 2, 3}));
        expect_eq(f, c.value, q(7, 3), "(1,2,3) value");
        f.expect(c.u_range && c.u_range->first == q(1, 3) && c.u_range->second == q(1, 3), "(1,2,3) should be attained at u=1/3");
    }));
    return out;
}

inline std::vector<CheckResult> distribution_suite() {
    using namespace detail;
    std::vector<CheckResult> out;
    out.push_back(run_check("distribution.1", "cdf, left cdf and quantile", 0, [](Findings& f) {
        DiscreteDistribution<R> d(rv({1, 2, 3}));
        expect_eq(f, d.cdf(q(2)), q(2, 3), "cdf(2)");
        expect_eq(f, d.left_cdf(q(2)), q(1, 3), "left_cdf(2)");
        expect_eq(f, d.quantile(q(1, 2)), q(2), "quantile(1/2)");
        expect_eq(f, DiscreteDistribution<R>(rv({1, 1, 3})).quantile(q(2, 3)), q(1), "(1,1,3) quantile(2/3)");
    }));
    out.push_back(run_check("distribution.2", "distributional transform: midpoint, distinct, randomized", 0, [](Findings& f) {
        auto k = rv({q(3, 5), q(6, 5), q(6, 5)});
        expect_eq(f, distributional_transform<R>(k, MidpointTransform{}).u, rv({q(1, 6), q(2, 3), q(2, 3)}), "midpoint");
        expect_eq(f, distributional_transform<R>(xi(q(9, 40)), MidpointTransform{}).u, rv({q(1, 6), q(1, 2), q(5, 6)}),
                  "distinct kernel values");
        auto r = distributional_transform<R>(k, RandomizedTransform<R>{rv({q(1, 2), 0, 1})});
        expect_eq(f, r.u, rv({q(1, 6), q(1, 3), q(1)}), "randomized draws (.,0,1)");
        f.expect(r.randomized, "randomized flag not set");
    }));
    out.push_back(run_check("distribution.3", "cost-efficient candidates", 0, [](Findings& f) {
        DiscreteDistribution<R> d(rv({1, 2, 3}));
        expect_eq(f, cost_efficient_candidate(d, xi(q(9, 40))), rv({3, 2, 1}), "u in (1/5,1/4)");
        expect_eq(f, cost_efficient_candidate(d, xi(q(1, 10))), rv({3, 1, 2}), "u in (0,1/5)");
        DiscreteDistribution<R> c(rv({q(7, 2), q(7, 2), q(7, 2)}));
        expect_eq(f, cost_efficient_candidate(c, xi(q(1, 6))), rv({q(7, 2), q(7, 2), q(7, 2)}), "constant law");
    }));
    out.push_back(run_check("distribution.4", "convex order, hull membership, contraction", 0, [](Findings& f) {
        f.expect(is_convex_dominated(rv({q(3, 2), 2, q(7, 2)}), rv({1, 2, 4})), "(3/2,2,7/2) <=cx (1,2,4)");
        f.expect(is_convex_dominated(rv({1, 2, 4}), rv({1, 2, 4})), "reflexivity");
        f.expect(!is_convex_dominated(rv({0, 2, 4}), rv({1, 2, 3})), "(0,2,4) is not <=cx (1,2,3)");
        DiscreteDistribution<R> d(rv({1, 2, 3}));
        f.expect(conv_membership(rv({q(5, 2), q(3, 2), 2}), d), "(5/2,3/2,2) in conv");
        f.expect(conv_membership(rv({2, 3, 1}), d), "a permutation is in conv");
        f.expect(!conv_membership(rv({4, 2, 0}), d), "(z+1,y,x-1) is outside conv");
        expect_eq(f, mean_preserving_contraction(DiscreteDistribution<R>(rv({1, 2, 4})), q(1, 2)).values(),
                  rv({q(3, 2), 2, q(7, 2)}), "(1,2,4) by 1/2");
        expect_eq(f, mean_preserving_contraction(d, q(0)).values(), d.values(), "t = 0");
        expect_eq(f, mean_preserving_contraction(DiscreteDistribution<R>(rv({0, 0, 6})), q(3)).values(), rv({0, 3, 3}),
                  "(0,0,6) by 3");
    }));
    return out;
}

inline std::vector<CheckResult> lp_suite() {
    using namespace detail;
    std::vector<CheckResult> out;
    out.push_back(run_check("lp.1", "trivial programs: zero objective, unbounded, infeasible", 0, [](Findings& f) {
        LinearProgram<R> box(2);
        box.bounds[0] = VariableBound<R>::between(q(0), q(1));
        box.bounds[1] = VariableBound<R>::between(q(-1), q(1));
        auto a = solve_lp(box, Sense::Minimize);
        f.expect(a.optimal() && a.value == q(0), "min 0 over a box");
        LinearProgram<R> ray(1);
        ray.objective[0] = q(1);
        f.expect(solve_lp(ray, Sense::Maximize).status == LpStatus::Unbounded, "max x over x >= 0");
        LinearProgram<R> empty(1);
        empty.add_ge({q(1)}, q(2));
        empty.add_le({q(1)}, q(1));
        f.expect(solve_lp(empty, Sense::Minimize).status == LpStatus::Infeasible, "x >= 2 and x <= 1");
    }));
    // min b over x <= a,b <= z, x+y <= a+b <= y+z, a + 5b >= 2(x+y+z)
    auto second = [](const R& x, const R& y, const R& z) {
        LinearProgram<R> lp(2);
        lp.objective[1] = q(1);
        lp.bounds[0] = VariableBound<R>::between(x, z);
        lp.bounds[1] = VariableBound<R>::between(x, z);
        lp.add_ge({q(1), q(1)}, x + y);
        lp.add_le({q(1), q(1)}, y + z);
        lp.add_ge({q(1), q(5)}, q(2) * (x + y + z));
        return solve_lp(lp, Sense::Minimize);
    };
    out.push_back(run_check("lp.2", "corner solution of the payoff-hull program", 0, [second](Findings& f) {
        auto r = second(q(1), q(2), q(5));
        f.expect(r.optimal(), "(1,2,5) not optimal");
        if (r.optimal()) {
            expect_eq(f, r.value, q(9, 4), "(1,2,5) value (2x+y+z)/4");
            expect_eq(f, r.x, rv({q(19, 4), q(9, 4)}), "(1,2,5) corner");
        }
        auto s = second(q(1), q(2), q(3));
        f.expect(s.optimal(), "(1,2,3) not optimal");
        if (s.optimal()) {
            expect_eq(f, s.value, q(9, 5), "(1,2,3) value (2x+2y+z)/5");
            expect_eq(f, s.x, rv({q(3), q(9, 5)}), "(1,2,3) corner");
        }
    }));
    return out;
}

inline std::vector<CheckResult> efficiency_suite() {
    using namespace detail;
    std::vector<CheckResult> out;
    const auto market = DiscreteMarket<R>::canonical();
    auto solve = [market](ProblemKind k, std::initializer_list<R> d) {
        return solve_problem(k, market, DiscreteDistribution<R>(rv(d)));
    };
    out.push_back(run_check("efficiency.1", "maximin optimizers for (1,2,3) and (1,2,4)", 0, [solve](Findings& f) {
        auto a = solve(ProblemKind::MaximinDF, {1, 2, 3});
        expect_eq(f, a.value, q(9, 5), "(1,2,3) value");
        f.expect(a.contains(rv({3, 1, 2}), xi(q(1, 5))) && a.contains(rv({3, 2, 1}), xi(q(1, 5))),
                 "(1,2,3) optimizers ((3,1,2),xi^(1/5)) and ((3,2,1),xi^(1/5))");
        auto b = solve(ProblemKind::MaximinDF, {1, 2, 4});
        expect_eq(f, b.value, q(2), "(1,2,4) value");
        for (auto u : {q(1, 5), q(9, 40), q(1, 4)})
            f.expect(b.contains(rv({4, 2, 1}), xi(u)), "(1,2,4) missing ((4,2,1), xi^" + text(u) + ")");
        auto c = solve(ProblemKind::MaximinDF, {q(5, 2), q(5, 2), q(5, 2)});
        expect_eq(f, c.value, q(5, 2), "constant law value");
    }));
    out.push_back(run_check("efficiency.2", "minimax values and boundary optimizers", 0, [solve](Findings& f) {
        auto a = solve(ProblemKind::MinimaxDF, {1, 2, 3});
        expect_eq(f, a.value, q(2), "(1,2,3) value");
        f.expect(a.contains(rv({3, 2, 1}), rv({0, 3, 0})) && a.any_boundary(), "(1,2,3) at ((3,2,1),(0,3,0)), boundary");
        auto b = solve(ProblemKind::MinimaxDF, {1, 2, 5});
        expect_eq(f, b.value, q(7, 3), "(1,2,5) value");
        f.expect(b.contains(rv({5, 2, 1}), xi(q(1, 3))), "(1,2,5) at ((5,2,1), xi^(1/3))");
        auto c = solve(ProblemKind::MinimaxDF, {1, 2, 4});
        expect_eq(f, c.value, q(2), "(1,2,4) value");
        for (auto u : {q(0), q(1, 6), q(1, 3)}) f.expect(c.contains(rv({4, 2, 1}), xi(u)), "(1,2,4) at u=" + text(u));
    }));
    out.push_back(run_check("efficiency.3", "convexified minimax optimizers", 0, [solve](Findings& f) {
        auto a = solve(ProblemKind::ConvexifiedMinimax, {1, 2, 3});
        expect_eq(f, a.value, q(9, 5), "(1,2,3) value");
        for (auto u : {q(0), q(1, 5), q(1, 3)})
            f.expect(a.contains(rv({3, q(9, 5), q(6, 5)}), xi(u)), "(1,2,3) Z*=(3,9/5,6/5) with u=" + text(u));
        auto b = solve(ProblemKind::ConvexifiedMinimax, {q(3, 2), 2, q(7, 2)});
        expect_eq(f, b.value, q(17, 8), "(3/2,2,7/2) value");
        f.expect(b.contains(rv({q(27, 8), q(17, 8), q(3, 2)}), xi(q(1, 4))), "(3/2,2,7/2) Z*=(27/8,17/8,3/2)");
        auto c = solve(ProblemKind::ConvexifiedMinimax, {1, 2, 4});
        expect_eq(f, c.value, q(2), "(1,2,4) value");
        f.expect(c.contains(rv({4, 2, 1}), xi(q(1, 5))), "(1,2,4) Z*=(4,2,1)");
    }));
    out.push_back(run_check("efficiency.4", "convexified maximin segments", 0, [solve](Findings& f) {
        auto a = solve(ProblemKind::ConvexifiedMaximin, {1, 2, 5});
        expect_eq(f, a.value, q(9, 4), "(1,2,5) value (2x+y+z)/4");
        for (auto t : {q(0), q(3, 2), q(3)})
            f.expect(a.contains(rv({5 - t, 2 + t, 1}), xi(q(1, 4))), "(1,2,5) segment point t=" + text(t));
        auto b = solve(ProblemKind::ConvexifiedMaximin, {1, 2, 3});
        expect_eq(f, b.value, q(9, 5), "(1,2,3) value");
        for (auto t : {q(0), q(1, 2), q(1)})
            f.expect(b.contains(rv({3, 2 - t, 1 + t}), xi(q(1, 5))), "(1,2,3) segment point t=" + text(t));
    }));
    out.push_back(run_check("efficiency.5", "closed form, perfect cost-efficiency, attainability", 0, [](Findings& f) {
        ThreeStateInput<R> a(q(1), q(2), q(3)), b(q(1), q(2), q(4)), c(q(1), q(2), q(5));
        auto mm = three_state_closed_form(a, ProblemKind::MinimaxDF);
        f.expect(mm.value == q(2) && mm.contains(rv({3, 2, 1}), rv({0, 3, 0})), "(1,2,3) minimax at ((3,2,1), xi^0)");
        for (auto k : kAllProblems) expect_eq(f, three_state_closed_form(b, k).value, q(2), "(1,2,4) " + std::string(to_string(k)));
        auto mx = three_state_closed_form(c, ProblemKind::MaximinDF);
        f.expect(mx.contains(rv({5, 2, 1}), xi(q(1, 4))) && mx.contains(rv({2, 5, 1}), xi(q(1, 4))),
                 "(1,2,5) maximin at ((5,2,1), xi^(1/4)) and ((2,5,1), xi^(1/4))");
        f.expect(is_perfectly_cost_efficient(b) && !is_perfectly_cost_efficient(a), "perfect cost-efficiency flags");
        f.expect(is_perfectly_cost_efficient(ThreeStateInput<R>(q(-1, 3), q(2, 7), q(3 * 2, 7) + q(2, 3))),
                 "(x, y, 3y-2x) is perfectly cost-efficient");
        f.expect(is_attainable(rv({4, 2, 1})) && !is_attainable(rv({3, 2, 1})), "attainability of (4,2,1) and (3,2,1)");
        f.expect(is_attainable(rv({3 * q(7, 3) - 2 * q(1, 9), q(7, 3), q(1, 9)})), "(3x0-2x, x0, x) is attainable");
        auto ce = attainable_ce_payoffs(b);
        f.expect(ce.size() == 1 && ce[0].payoff == rv({4, 2, 1}) && ce[0].u_range == Interval<R>{q(1, 5), q(1, 4)},
                 "(1,2,4) attainable cost-efficient payoffs");
        f.expect(attainable_ce_payoffs(a).empty() && attainable_ce_payoffs(c).empty(), "(1,2,3), (1,2,5) have none");
    }));
    return out;
}

inline std::vector<CheckResult> utility_suite() {
    using namespace detail;
    std::vector<CheckResult> out;
    out.push_back(run_check("utility.1", "optimal wealth for log, exp and power", 0, [](Findings& f) {
        auto l = optimal_wealth(Utility::log(), 1.0);
        f.expect(close(l.payoff[0], 1.5, 1e-10) && close(l.payoff[2], 0.75, 1e-10), "log payoff (3/2,1,3/4)");
        auto e = optimal_wealth(Utility::exp(), 1.0);
        f.expect(close(e.x_star, 1.0 - std::log(2.0) / 3.0, 1e-10), "exp x* = 1 - ln 2 / 3");
        auto p = optimal_wealth(Utility::power(0.5), 1.0);
        f.expect(close(p.x_star, 0.5, 1e-10) && close(p.payoff[0], 2.0, 1e-10), "power 1/2 payoff (2,1,1/2)");
    }));
    out.push_back(run_check("utility.2", "trinomial closed forms", 0, [](Findings& f) {
        auto l = trinomial_closed_form(Utility::log(), 1.0);
        f.expect(close(l.payoff[0], 1.5, 1e-12) && close(l.payoff[2], 0.75, 1e-12), "log (3/2,1,3/4)");
        auto e = trinomial_closed_form(Utility::exp(), 1.0);
        f.expect(close(e.payoff[0], 1.0 + 2.0 * std::log(2.0) / 3.0, 1e-12) &&
                     close(e.payoff[2], 1.0 - std::log(2.0) / 3.0, 1e-12),
                 "exp (1 + 2 ln2/3, 1, 1 - ln2/3)");
        auto p = trinomial_closed_form(Utility::power(0.5), 1.0);
        f.expect(close(p.payoff[0], 2.0, 1e-12) && close(p.payoff[2], 0.5, 1e-12), "power 1/2 (2,1,1/2)");
    }));
    out.push_back(run_check("utility.3", "grid search over holdings", 0, [](Findings& f) {
        auto sq = [](double x) { return x >= 0.0 ? x * x : -std::numeric_limits<double>::infinity(); };
        auto a = brute_force_theta(sq, 1.0, 1e-3, ThetaRange::Nonnegative, true);
        f.expect(a.reference_value && close(*a.reference_value, 14.0 / 15.0, 1e-12), "objective 14/15 at theta=-1/5");
        auto ln = [](double x) { return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity(); };
        auto b = brute_force_theta(ln, 1.0, 1e-3);
        f.expect(std::abs(b.theta - 0.25) <= 1e-3, "log argmax theta = 1/4, got " + text(b.theta));
        auto c = brute_force_theta([](double x) { return x; }, 1.0, 1e-3);
        f.expect(close(c.theta, 1.0, 1e-12) && close(c.value, 1.0 + 1.0 / 3.0, 1e-12), "linear objective at the right end");
    }));
    out.push_back(run_check("utility.4", "cost-efficiency check of payoffs", 0, [](Findings& f) {
        auto a = ce_check_of_payoff(rv({q(3, 5), 1, q(6, 5)}));
        f.expect(!a.perfectly_cost_efficient, "(3/5,1,6/5) is not perfectly cost-efficient");
        expect_eq(f, a.optimizer, rv({q(6, 5), q(22, 25), q(18, 25)}), "optimizer");
        f.expect(a.optimizer_dominated, "optimizer <=cx payoff");
        auto w = optimal_wealth(Utility::log(), 1.0);
        auto b = ce_check_of_payoff(std::vector<double>(w.payoff.begin(), w.payoff.end()));
        f.expect(b.perfectly_cost_efficient, "optimal wealth is perfectly cost-efficient");
        f.expect(!ce_check_of_payoff(rv({3, 2, 1})).perfectly_cost_efficient, "(3,2,1) is not perfectly cost-efficient");
    }));
    return out;
}

namespace detail {

/// Stand-alone mixture for the oracle: the log of the variable is
/// N(ah, bh^2) w.p. p and N(al, bl^2) otherwise.
struct OracleMixture {
    double p, ah, bh, al, bl;

    static double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
    [[nodiscard]] double below(double y) const { return p * phi((y - ah) / bh) + (1 - p) * phi((y - al) / bl); }
    [[nodiscard]] double above(double y) const { return p * phi((ah - y) / bh) + (1 - p) * phi((al - y) / bl); }

    /// log-quantile at level u (complement v) by plain bisection on the cdf.
    [[nodiscard]] double log_quantile(double u, double v) const {
        double lo = std::min(ah, al) - 40.0 * std::max(bh, bl);
        double hi = std::max(ah, al) + 40.0 * std::max(bh, bl);
        for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
            const double mid = 0.5 * (lo + hi);
            const bool left = u <= v ? below(mid) < u : above(mid) > v;
            (left ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }
};

/// sup_q of the cost of S_T computed as the integral over levels of the
/// kernel quantile times the reversed stock quantile: Simpson in the normal
/// score, a uniform q grid and a parabola through the best three points.
struct GapOracle {
    double value = 0.0;
    double q_star = 0.0;
};

inline GapOracle stochvol_gap_oracle(const RegimeSwitchModel& m, int intervals = 800, int q_points = 201) {
    const double t_max = 8.0, h = 2.0 * t_max / intervals;
    const double sq = std::sqrt(m.T);
    const double mean_log = std::log(m.s0) + m.mu * m.T;
    OracleMixture stock{m.p, mean_log - 0.5 * m.sigma_h * m.sigma_h * m.T, m.sigma_h * sq,
                        mean_log - 0.5 * m.sigma_l * m.sigma_l * m.T, m.sigma_l * sq};
    std::vector<double> t(intervals + 1), w(intervals + 1), phi_t(intervals + 1), stock_rev(intervals + 1);
    for (int i = 0; i <= intervals; ++i) {
        t[i] = -t_max + i * h;
        w[i] = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        phi_t[i] = std::exp(-0.5 * t[i] * t[i]) / std::sqrt(2.0 * 3.141592653589793238);
        // level 1 - Phi(t) = Phi(-t)
        stock_rev[i] = std::exp(stock.log_quantile(OracleMixture::phi(-t[i]), OracleMixture::phi(t[i])));
    }
    auto g = [&](double qq) {
        const double th = m.mu / m.sigma_h, tl = m.mu / m.sigma_l;
        OracleMixture k{m.p, std::log(qq / m.p) - 0.5 * th * th * m.T, th * sq,
                        std::log((1 - qq) / (1 - m.p)) - 0.5 * tl * tl * m.T, tl * sq};
        double acc = 0.0;
        for (int i = 0; i <= intervals; ++i) {
            const double kq = std::exp(k.log_quantile(OracleMixture::phi(t[i]), OracleMixture::phi(-t[i])));
            acc += w[i] * kq * stock_rev[i] * phi_t[i];
        }
        return acc * h / 3.0;
    };
    std::vector<double> qs(q_points), gs(q_points);
    std::size_t best = 0;
    for (int i = 0; i < q_points; ++i) {
        qs[i] = (i + 1.0) / (q_points + 1.0);
        gs[i] = g(qs[i]);
        if (gs[i] > gs[best]) best = i;
    }
    GapOracle out{gs[best], qs[best]};
    if (best > 0 && best + 1 < gs.size()) {
        const double d = qs[1] - qs[0];
        const double a = gs[best - 1], b = gs[best], c = gs[best + 1];
        const double denom = a - 2 * b + c;
        if (denom < 0.0) {
            const double shift = 0.5 * d * (a - c) / denom;
            out.q_star = qs[best] + shift;
            out.value = g(out.q_star);
        }
    }
    return out;
}

}  // namespace detail

inline std::vector<CheckResult> stochvol_suite() {
    using namespace detail;
    std::vector<CheckResult> out;
    const RegimeSwitchModel model{};
    out.push_back(run_check("stochvol.1", "single-regime median and moment matching", 0, [model](Findings& f) {
        const double med = model.s0 * std::exp(model.mu * model.T - 0.5 * model.sigma_h * model.sigma_h * model.T);
        auto law = stock_law(model);
        LogNormalMixture single(1.0, law.a_high(), law.b_high(), law.a_low(), law.b_low());
        f.expect(close(single.cdf(med), 0.5, 1e-14), "p = 1 median has cdf 1/2");
        auto mm = moment_matched_targets(model);
        f.expect(close(mm.normal.m, std::exp(0.05), 1e-14), "m = e^0.05");
        const double v = (0.5 * std::exp(0.09) + 0.5 * std::exp(0.0225) - 1.0) * std::exp(0.1);
        f.expect(close(mm.normal.variance, v, 1e-12), "V by plug-in");
        RegimeSwitchModel flat = model;
        flat.sigma_h = flat.sigma_l = 0.2;
        f.expect(close(flat.variance(), std::expm1(0.04) * std::exp(0.1), 1e-12), "single-lognormal variance");
    }));
    out.push_back(run_check("stochvol.2", "quantiles agree with cdf inversion", 0, [model](Findings& f) {
        auto inv = [](const LogNormalMixture& l, double u) {
            double lo = 1e-6, hi = 1e6;
            for (int i = 0; i < 200; ++i) {
                const double mid = std::sqrt(lo * hi);
                (l.cdf(mid) < u ? lo : hi) = mid;
            }
            return std::sqrt(lo * hi);
        };
        f.expect(std::abs(quantile_stock(model, 0.5) - inv(stock_law(model), 0.5)) < 1e-8, "stock quantile at 0.5");
        f.expect(std::abs(quantile_kernel(model, 0.5, 0.9) - inv(kernel_law(model, 0.5), 0.9)) < 1e-8,
                 "kernel quantile at q=0.5, u=0.9");
        double prev = 0.0;
        bool increasing = true;
        for (int i = 1; i < 10000; ++i) {
            const double v = quantile_stock(model, i / 10000.0);
            increasing = increasing && v > prev;
            prev = v;
        }
        f.expect(increasing, "stock quantile strictly increasing on a 10^4 grid");
    }));
    out.push_back(run_check("stochvol.3", "cost functional: degenerate cases and interior maximum", 0, [model](Findings& f) {
        RegimeSwitchModel flat = model;
        flat.sigma_h = flat.sigma_l = 0.2;
        f.expect(std::abs(maximin_value_g(flat, flat.p, MixtureStock{flat}) - flat.s0) < 1e-9, "g(p) = S0 when complete");
        for (double qq : {0.1, 0.5, 0.9})
            f.expect(std::abs(maximin_value_g(model, qq, PointMass{1.5}) - 1.5) < 1e-9, "point mass at q=" + text(qq));
        std::vector<double> gs;
        for (int i = 1; i <= 101; ++i) gs.push_back(maximin_value_g(model, i / 102.0, MixtureStock{model}));
        const auto top = std::max_element(gs.begin(), gs.end());
        f.expect(top != gs.begin() && top + 1 != gs.end(), "grid maximum is interior");
        auto sup = superhedge_cost_distribution(model, MixtureStock{model});
        f.expect(sup.value < model.s0 - 1e-4, "sup g below S0 by at least 1e-4");
        f.expect(std::abs(superhedge_cost_distribution(model, PointMass{model.forward()}).value - model.forward()) < 1e-9,
                 "point-mass superhedge cost");
    }));
    return out;
}

// ------------------------------------------------------------- acceptance

namespace detail {

template <class S>
std::vector<SolutionSet<S>> both_sources(const ThreeStateInput<R>& in, ProblemKind k) {
    return {three_state_closed_form(in, k), solve_problem(k, DiscreteMarket<R>::canonical(), in.distribution())};
}

inline const char* source_name(std::size_t i) { return i == 0 ? "closed form" : "generic"; }

}  // namespace detail

inline CheckResult acceptance_1() {
    using namespace detail;
    return run_check("criterion 1", "3-state (1,2,3): values 9/5 and 2, optimizers, boundary flag", 0.1, [](Findings& f) {
        ThreeStateInput<R> in(q(1), q(2), q(3));
        for (auto k : {ProblemKind::MaximinDF, ProblemKind::ConvexifiedMaximin, ProblemKind::ConvexifiedMinimax}) {
            auto s = both_sources<R>(in, k);
            for (std::size_t i = 0; i < s.size(); ++i)
                expect_eq(f, s[i].value, q(9, 5), std::string(source_name(i)) + " " + std::string(to_string(k)));
        }
        auto mm = both_sources<R>(in, ProblemKind::MinimaxDF);
        for (std::size_t i = 0; i < mm.size(); ++i) {
            const std::string src = source_name(i);
            expect_eq(f, mm[i].value, q(2), src + " minimax");
            const bool flagged = std::any_of(mm[i].optimizers.begin(), mm[i].optimizers.end(), [](const auto& o) {
                return o.payoff.contains(rv({3, 2, 1})) && o.kernel.contains(rv({0, 3, 0})) && o.boundary();
            });
            f.expect(flagged, src + " minimax lacks ((3,2,1),(0,3,0)) with the boundary flag");
        }
        auto mx = both_sources<R>(in, ProblemKind::MaximinDF);
        const auto k = rv({q(3, 5), q(6, 5), q(6, 5)});
        for (std::size_t i = 0; i < mx.size(); ++i) {
            f.expect(mx[i].contains(rv({3, 1, 2}), k), std::string(source_name(i)) + " maximin lacks ((3,1,2),(3/5,6/5,6/5))");
            f.expect(mx[i].contains(rv({3, 2, 1}), k), std::string(source_name(i)) + " maximin lacks ((3,2,1),(3/5,6/5,6/5))");
        }
    });
}

inline CheckResult acceptance_2() {
    using namespace detail;
    return run_check("criterion 2", "3-state (1,2,4): all values 2, shared optimizer family, CE payoffs", 0.1, [](Findings& f) {
        ThreeStateInput<R> in(q(1), q(2), q(4));
        for (auto k : kAllProblems) {
            auto s = both_sources<R>(in, k);
            for (std::size_t i = 0; i < s.size(); ++i) {
                const std::string what = std::string(source_name(i)) + " " + std::string(to_string(k));
                expect_eq(f, s[i].value, q(2), what);
                for (auto u : {q(1, 5), q(9, 40), q(7, 30), q(1, 4)})
                    f.expect(s[i].contains(rv({4, 2, 1}), xi(u)), what + " lacks ((4,2,1), xi^" + text(u) + ")");
            }
        }
        f.expect(is_perfectly_cost_efficient(in), "closed-form perfect cost-efficiency is false");
        f.expect(is_perfectly_cost_efficient(kernel_family(DiscreteMarket<R>::canonical()), in.distribution()),
                 "generic perfect cost-efficiency is false");
        auto ce = attainable_ce_payoffs(in);
        f.expect(ce.size() == 1, "expected exactly one attainable cost-efficient payoff, got " + std::to_string(ce.size()));
        if (!ce.empty()) {
            expect_eq(f, ce[0].payoff, rv({4, 2, 1}), "attainable CE payoff");
            f.expect(ce[0].u_range == Interval<R>{q(1, 5), q(1, 4)}, "parameter range [" + text(ce[0].u_range.lo) + "," +
                                                                         text(ce[0].u_range.hi) + "], want [1/5,1/4]");
        }
    });
}

inline CheckResult acceptance_3() {
    using namespace detail;
    return run_check("criterion 3", "3-state (1,2,5): values and Z* by formula substitution", 0.1, [](Findings& f) {
        const R x = q(1), y = q(2), z = q(5);
        ThreeStateInput<R> in(x, y, z);
        f.expect(in.delta1() > q(0), "2x - 3y + z should be positive");
        const R maximin = (2 * x + y + z) / 4, minimax = (2 * x + z) / 3;
        const auto z_star = rv({(-2 * x + 3 * y + 3 * z) / 4, (2 * x + y + z) / 4, x});
        for (auto k : kAllProblems) {
            auto s = both_sources<R>(in, k);
            const R want = k == ProblemKind::MinimaxDF ? minimax : maximin;
            for (std::size_t i = 0; i < s.size(); ++i)
                expect_eq(f, s[i].value, want, std::string(source_name(i)) + " " + std::string(to_string(k)));
        }
        auto cm = both_sources<R>(in, ProblemKind::ConvexifiedMinimax);
        for (std::size_t i = 0; i < cm.size(); ++i) {
            const auto& opts = cm[i].optimizers;
            const bool unique = !opts.empty() && std::all_of(opts.begin(), opts.end(), [&](const auto& o) {
                return o.payoff.is_point() && o.payoff.vertices[0] == z_star;
            });
            f.expect(unique, std::string(source_name(i)) + " convexified minimax optimizer is not Z* = " + text(z_star));
        }
        const auto literal = rv({q(19, 4), q(2), q(1)});
        f.note("formula values: maximin " + text(maximin) + ", minimax " + text(minimax) + ", Z* " + text(z_star));
        f.note("stated maximin 2 differs from (2x+y+z)/4 = " + text(maximin) + "; the formula value is checked");
        f.note("stated Z* (19/4,2,1) has total " + text(literal[0] + literal[1] + literal[2]) +
               " != 8 and lies in the payoff hull: " + (conv_membership(literal, in.distribution()) ? "yes" : "no"));
    });
}

inline CheckResult acceptance_4(std::uint64_t seed = 20240607) {
    using namespace detail;
    return run_check("criterion 4", "1000 random rational triples: generic = closed form, CEFF chain", 60.0, [seed](Findings& f) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> den(1, 12);
        const auto fam = kernel_family(DiscreteMarket<double>::canonical());
        auto draw = [&]() {
            const int d = den(rng);
            std::uniform_int_distribution<int> num(-10 * d, 10 * d);
            return q(num(rng), d);
        };
        int on_line = 0, failures = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            R x, y, z;
            const bool inject = trial % 10 == 0;
            for (;;) {
                x = draw();
                y = draw();
                z = draw();
                if (inject) {
                    if (x > y) std::swap(x, y);
                    z = 3 * y - 2 * x;
                } else {
                    std::array<R, 3> v{x, y, z};
                    std::sort(v.begin(), v.end());
                    x = v[0];
                    y = v[1];
                    z = v[2];
                }
                if (x < y && y < z && !(z > q(10))) break;
            }
            ThreeStateInput<R> in(x, y, z);
            const bool line = z == 3 * y - 2 * x;
            on_line += line;
            const std::string tag = "(" + text(x) + "," + text(y) + "," + text(z) + ")";
            std::array<R, 4> exact{};
            std::array<double, 4> generic{};
            DiscreteDistribution<double> dist(to_doubles(in.distribution().values()));
            for (std::size_t i = 0; i < 4; ++i) {
                exact[i] = three_state_closed_form(in, kAllProblems[i]).value;
                generic[i] = solve_problem(kAllProblems[i], fam, dist).value;
                const bool ok = close(generic[i], to_double(exact[i]), 1e-9);
                if (!ok && ++failures <= 5)
                    f.expect(false, tag + " " + std::string(to_string(kAllProblems[i])) + ": generic " + text(generic[i]) +
                                        " vs closed form " + text(exact[i]));
            }
            // order in kAllProblems: maximin, minimax, cvx-minimax, cvx-maximin
            const bool chain_exact = exact[0] == exact[2] && exact[2] == exact[3] && exact[1] >= exact[2] &&
                                     (exact[1] == exact[2]) == line;
            const bool chain_generic = close(generic[0], generic[2], 1e-10) && close(generic[2], generic[3], 1e-10) &&
                                       generic[1] >= generic[2] - 1e-10 * std::max(1.0, std::abs(generic[2])) &&
                                       close(generic[1], generic[2], 1e-10) == line;
            if (!(chain_exact && chain_generic) && ++failures <= 5)
                f.expect(false, tag + ": CEFF chain broken (exact " + (chain_exact ? "ok" : "broken") + ", generic " +
                                    (chain_generic ? "ok" : "broken") + ")");
        }
        f.expect(failures == 0, std::to_string(failures) + " failing triples in total");
        f.note(std::to_string(on_line) + " of 1000 triples satisfy z = 3y - 2x");
    });
}

inline CheckResult acceptance_5(std::uint64_t seed = 20240607) {
    using namespace detail;
    return run_check("criterion 5", "convex-order monotonicity of the convexified minimax cost", 30.0, [seed](Findings& f) {
        std::mt19937_64 rng(seed + 5);
        std::uniform_real_distribution<double> val(-10.0, 10.0), frac(0.0, 1.0);
        const auto fam = canonical_family<double>();
        int bad = 0;
        for (int i = 0; i < 500; ++i) {
            std::vector<double> v{val(rng), val(rng), val(rng)};
            std::sort(v.begin(), v.end());
            if (v[2] - v[0] < 1e-6) v[2] += 1.0;
            DiscreteDistribution<double> d(v);
            const double t = frac(rng) * 0.5 * (d[2] - d[0]);
            auto c = mean_preserving_contraction(d, t);
            const double before = convexified_minimax(fam, d).value;
            const double after = convexified_minimax(fam, c).value;
            if (after < before - 1e-10 * std::max(1.0, std::abs(before)) && ++bad <= 5)
                f.expect(false, "contraction " + text(d.values()) + " by " + text(t) + " lowered the cost " + text(before) +
                                    " -> " + text(after));
        }
        f.expect(bad == 0, std::to_string(bad) + " of 500 contraction pairs decreased the cost");

        const auto family = canonical_family<R>();
        auto wide = convexified_minimax(family, DiscreteDistribution<R>(rv({1, 2, 4})));
        auto narrow = convexified_minimax(family, DiscreteDistribution<R>(rv({q(3, 2), 2, q(7, 2)})));
        expect_eq(f, wide.value, q(2), "cost of (1,2,4)");
        expect_eq(f, narrow.value, q(17, 8), "cost of (3/2,2,7/2)");
        const auto z1 = wide.optimizers.front().payoff.vertices.front();
        const auto z2 = narrow.optimizers.front().payoff.vertices.front();
        expect_eq(f, z1, rv({4, 2, 1}), "optimizer for (1,2,4)");
        expect_eq(f, z2, rv({q(27, 8), q(17, 8), q(3, 2)}), "optimizer for (3/2,2,7/2)");
        const bool fwd = is_convex_dominated(z2, z1), back = is_convex_dominated(z1, z2);
        f.expect(!fwd && !back, "optimizers are comparable: " + text(z2) + (fwd ? " <=cx " : " >=cx ") + text(z1) +
                                    " (descending partial sums 27/8 <= 4, 11/2 <= 6, totals 7 = 7)");
    });
}

inline CheckResult acceptance_6() {
    using namespace detail;
    return run_check("criterion 6", "utility closed forms, numeric first-order condition, attainability", 1.0, [](Findings& f) {
        struct Case {
            Utility u;
            std::function<double(double)> x_star;
        };
        std::vector<Case> cases{{Utility::log(), [](double x0) { return 0.75 * x0; }},
                                {Utility::exp(), [](double x0) { return x0 - std::log(2.0) / 3.0; }}};
        for (double alpha : {-1.0, 0.5, 0.9}) {
            const double beta = alpha / (alpha - 1.0);
            cases.push_back({Utility::power(alpha), [beta](double x0) {
                                 return 3.0 * x0 * std::pow(2.0, beta - 1.0) / (1.0 + std::pow(2.0, beta));
                             }});
        }
        const auto line = canonical_line<double>();
        for (const auto& c : cases) {
            for (double x0 : {0.5, 1.0, 2.0}) {
                const std::string tag = c.u.name() + " x0=" + text(x0);
                const double want = c.x_star(x0);
                auto num = optimal_wealth(c.u, x0);
                auto ds = trinomial_closed_form(c.u, x0);
                f.expect(std::abs(num.x_star - want) <= 1e-10, tag + ": numeric x* " + text(num.x_star) + " vs " + text(want));
                f.expect(std::abs(ds.x_star - want) <= 1e-10, tag + ": trinomial x* " + text(ds.x_star) + " vs " + text(want));
                for (const auto* w : {&num, &ds}) {
                    std::vector<double> z(w->payoff.begin(), w->payoff.end());
                    f.expect(is_attainable(z), tag + ": payoff " + text(z) + " not attainable");
                    for (double u : {0.0, 1.0 / 8, 1.0 / 5, 1.0 / 4, 1.0 / 3}) {
                        const double p = price(line.kernel_at(u), z);
                        f.expect(std::abs(p - x0) <= 1e-12 * std::max(1.0, x0),
                                 tag + ": price " + text(p) + " under xi^" + text(u));
                    }
                }
            }
        }
    });
}

inline CheckResult acceptance_7() {
    using namespace detail;
    return run_check("criterion 7", "KKM response-set intersections", 0.1, [](Findings& f) {
        const std::pair<int, Interval<R>> cases[] = {
            {5, {q(1, 4), q(1, 4)}}, {4, {q(1, 5), q(1, 4)}}, {3, {q(1, 5), q(1, 5)}}};
        for (const auto& [zv, want] : cases) {
            auto d = kkm_diagnostics(ThreeStateInput<R>(q(1), q(2), q(zv)));
            const auto& got = d.intersection();
            f.expect(got == want, "(1,2," + std::to_string(zv) + "): [" + text(got.lo) + "," + text(got.hi) + "], want [" +
                                      text(want.lo) + "," + text(want.hi) + "]");
        }
    });
}

inline CheckResult acceptance_8() {
    using namespace detail;
    return run_check("criterion 8", "stochastic volatility degenerate cases", 5.0, [](Findings& f) {
        for (double sigma : {0.1, 0.2, 0.35}) {
            RegimeSwitchModel m;
            m.sigma_h = m.sigma_l = sigma;
            for (double p : {0.3, 0.5}) {
                m.p = p;
                const double g = maximin_value_g(m, p, MixtureStock{m});
                f.expect(std::abs(g - m.s0) <= 1e-6, "sigma=" + text(sigma) + " p=" + text(p) + ": g(p)=" + text(g));
            }
        }
        const RegimeSwitchModel m;
        for (double mass : {m.forward(), 0.7, 2.5}) {
            for (double qq : {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
                const double g = maximin_value_g(m, qq, PointMass{mass});
                f.expect(std::abs(g - mass) <= 1e-9, "point mass " + text(mass) + " at q=" + text(qq) + ": " + text(g));
            }
            const double sup = superhedge_cost_distribution(m, PointMass{mass}).value;
            f.expect(std::abs(sup - mass) <= 1e-9, "point mass " + text(mass) + " superhedge cost " + text(sup));
        }
    });
}

inline CheckResult acceptance_9() {
    using namespace detail;
    return run_check("criterion 9", "stochastic volatility gap: sup g < S0, interior argmax, oracle", 60.0, [](Findings& f) {
        const RegimeSwitchModel m;
        auto lib = superhedge_cost_distribution(m, MixtureStock{m});
        f.expect(m.s0 - lib.value >= 1e-4, "gap " + text(m.s0 - lib.value) + " below 1e-4");
        f.expect(lib.q_star > 0.01 && lib.q_star < 0.99, "argmax q " + text(lib.q_star) + " not interior");
        auto ora = stochvol_gap_oracle(m);
        f.expect(std::abs(lib.value - ora.value) <= 1e-5, "library " + text(lib.value) + " vs oracle " + text(ora.value));
        char buf[160];
        std::snprintf(buf, sizeof buf, "sup g = %.10f at q = %.6f; oracle %.10f at q = %.6f", lib.value, lib.q_star,
                      ora.value, ora.q_star);
        f.note(buf);
    });
}

inline CheckResult acceptance_10() {
    using namespace detail;
    return run_check("criterion 10", "variance curve: monotone columns, small-variance limit, stable CSV", 120.0, [](Findings& f) {
        const RegimeSwitchModel m;
        const auto grid = default_variance_grid(m);
        f.expect(grid.size() == 20, "grid has " + std::to_string(grid.size()) + " points");
        StochvolOptions one;
        one.threads = 1;
        StochvolOptions many;
        many.threads = 3;
        const auto rows = variance_curve(m, grid, one);
        const auto csv1 = curve_csv(rows);
        const auto csv2 = curve_csv(variance_curve(m, grid, many));
        f.expect(csv1 == csv2, "CSV differs between a serial and a threaded run");
        for (std::size_t i = 1; i < rows.size(); ++i) {
            f.expect(rows[i].cost_normal <= rows[i - 1].cost_normal + 1e-7, "normal column rises at row " + std::to_string(i));
            f.expect(rows[i].cost_lognormal <= rows[i - 1].cost_lognormal + 1e-7,
                     "lognormal column rises at row " + std::to_string(i));
        }
        const double fwd = m.forward();
        f.expect(std::abs(rows.front().cost_normal - fwd) <= 1e-3 && std::abs(rows.front().cost_lognormal - fwd) <= 1e-3,
                 "smallest-variance costs " + text(rows.front().cost_normal) + ", " + text(rows.front().cost_lognormal) +
                     " vs " + text(fwd));
    });
}

inline std::vector<CheckResult> acceptance_suite(std::uint64_t seed = 20240607) {
    return {acceptance_1(),     acceptance_2(), acceptance_3(), acceptance_4(seed), acceptance_5(seed),
            acceptance_6(),     acceptance_7(), acceptance_8(), acceptance_9(),     acceptance_10()};
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"market", "distribution", "lp", "efficiency", "utility", "stochvol",
                                                "all", "acceptance"};
    return names;
}

/// "all" runs every module suite; "acceptance" runs the numbered criteria.
inline std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed = 20240607) {
    if (name == "market") return market_suite();
    if (name == "distribution") return distribution_suite();
    if (name == "lp") return lp_suite();
    if (name == "efficiency") return efficiency_suite();
    if (name == "utility") return utility_suite();
    if (name == "stochvol") return stochvol_suite();
    if (name == "acceptance") return acceptance_suite(seed);
    if (name == "all") {
        std::vector<CheckResult> out;
        for (auto* fn : {market_suite, distribution_suite, lp_suite, efficiency_suite, utility_suite, stochvol_suite}) {
            auto part = fn();
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace effico
