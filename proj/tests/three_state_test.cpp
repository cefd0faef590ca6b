// SPDX-License-Identifier: MIT
#include "effico/three_state.hpp"

#include <gtest/gtest.h>

#include <random>

using effico::ErrorCode;
using effico::Interval;
using effico::ProblemKind;
using effico::Rational;
using effico::ThreeStateInput;

namespace {

Rational q(long long a, long long b = 1) { return Rational(a, b); }
using RV = std::vector<Rational>;
using In = ThreeStateInput<Rational>;

RV xi(const Rational& u) { return RV{3 * u, 3 - 9 * u, 6 * u}; }

Rational value(const In& in, ProblemKind k) { return effico::three_state_closed_form(in, k).value; }

}  // namespace

TEST(ThreeStateInputTest, RejectsNonStrictOrdering) {
    for (auto [x, y, z] : {std::tuple{1, 2, 2}, std::tuple{1, 1, 2}, std::tuple{3, 2, 1}}) {
        try {
            In(q(x), q(y), q(z));
            FAIL();
        } catch (const effico::Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::OrderingViolated);
        }
    }
}

TEST(ThreeStateInputTest, Deltas) {
    In in(q(1), q(2), q(5));
    EXPECT_EQ(in.delta1(), q(1));
    EXPECT_EQ(in.delta2(), q(5));
}

TEST(ClosedForm, OneTwoThree) {
    In in(q(1), q(2), q(3));
    EXPECT_EQ(value(in, ProblemKind::MaximinDF), q(9, 5));
    EXPECT_EQ(value(in, ProblemKind::ConvexifiedMaximin), q(9, 5));
    EXPECT_EQ(value(in, ProblemKind::ConvexifiedMinimax), q(9, 5));
    auto mm = effico::three_state_closed_form(in, ProblemKind::MinimaxDF);
    EXPECT_EQ(mm.value, q(2));
    EXPECT_TRUE(mm.contains(RV{q(3), q(2), q(1)}, RV{q(0), q(3), q(0)}));
    EXPECT_TRUE(mm.any_boundary());
    auto cm = effico::three_state_closed_form(in, ProblemKind::ConvexifiedMinimax);
    EXPECT_TRUE(cm.contains(RV{q(3), q(9, 5), q(6, 5)}, xi(q(1, 9))));
}

TEST(ClosedForm, OneTwoFourSharesOptimizers) {
    In in(q(1), q(2), q(4));
    for (auto k : effico::kAllProblems) {
        auto s = effico::three_state_closed_form(in, k);
        EXPECT_EQ(s.value, q(2));
        for (int j = 48; j <= 60; j += 3) EXPECT_TRUE(s.contains(RV{q(4), q(2), q(1)}, xi(q(j, 240))));
    }
}

TEST(ClosedForm, OneTwoFiveBySubstitution) {
    In in(q(1), q(2), q(5));
    EXPECT_EQ(value(in, ProblemKind::MaximinDF), q(9, 4));           // (2x+y+z)/4
    EXPECT_EQ(value(in, ProblemKind::MinimaxDF), q(7, 3));           // (2x+z)/3
    EXPECT_EQ(value(in, ProblemKind::ConvexifiedMinimax), q(9, 4));
    auto mx = effico::three_state_closed_form(in, ProblemKind::MaximinDF);
    EXPECT_TRUE(mx.contains(RV{q(5), q(2), q(1)}, xi(q(1, 4))));
    EXPECT_TRUE(mx.contains(RV{q(2), q(5), q(1)}, xi(q(1, 4))));
    auto cm = effico::three_state_closed_form(in, ProblemKind::ConvexifiedMinimax);
    ASSERT_FALSE(cm.optimizers.empty());
    EXPECT_EQ(cm.optimizers[0].payoff.vertices[0], (RV{q(19, 4), q(9, 4), q(1)}));
    // (19/4, 2, 1) sums to 31/4, so it cannot rearrange the law (1, 2, 5)
    EXPECT_FALSE(effico::conv_membership(RV{q(19, 4), q(2), q(1)}, in.distribution()));
}

TEST(ClosedForm, MatchesGenericSolverExactly) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> v(-20, 20);
    const auto market = effico::DiscreteMarket<Rational>::canonical();
    int done = 0;
    while (done < 80) {
        RV a{q(v(rng), 2), q(v(rng), 2), q(v(rng), 2)};
        std::sort(a.begin(), a.end());
        if (!(a[0] < a[1] && a[1] < a[2])) continue;
        if (done % 8 == 0) a[2] = 3 * a[1] - 2 * a[0];
        In in(a[0], a[1], a[2]);
        for (auto k : effico::kAllProblems) {
            auto c = effico::three_state_closed_form(in, k);
            auto g = effico::solve_problem(k, market, in.distribution());
            EXPECT_EQ(c.value, g.value) << to_string(k) << " " << a[0] << "," << a[1] << "," << a[2];
            // every closed-form optimizer attains the generic value
            for (const auto& o : c.optimizers)
                for (const auto& z : o.payoff.vertices)
                    EXPECT_TRUE(effico::conv_membership(z, in.distribution()));
        }
        ++done;
    }
}

TEST(PerfectCostEfficiency, OnTheLineZEqualsThreeYMinusTwoX) {
    EXPECT_TRUE(effico::is_perfectly_cost_efficient(In(q(1), q(2), q(4))));
    EXPECT_FALSE(effico::is_perfectly_cost_efficient(In(q(1), q(2), q(3))));
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> v(-30, 30);
    for (int i = 0; i < 50; ++i) {
        Rational x = q(v(rng), 3), y = x + q(1 + (v(rng) + 30), 7);
        EXPECT_TRUE(effico::is_perfectly_cost_efficient(In(x, y, 3 * y - 2 * x)));
        EXPECT_FALSE(effico::is_perfectly_cost_efficient(In(x, y, 3 * y - 2 * x + q(1, 11))));
    }
}

TEST(Attainability, LinearCondition) {
    EXPECT_TRUE(effico::is_attainable(RV{q(4), q(2), q(1)}));
    EXPECT_FALSE(effico::is_attainable(RV{q(3), q(2), q(1)}));
    for (int k = 1; k < 10; ++k) {
        const Rational x0 = q(k, 3), xs = q(k, 5);
        EXPECT_TRUE(effico::is_attainable(RV{3 * x0 - 2 * xs, x0, xs}));
    }
}

TEST(Attainability, CostEfficientPayoffs) {
    auto ce = effico::attainable_ce_payoffs(In(q(1), q(2), q(4)));
    ASSERT_EQ(ce.size(), 1u);
    EXPECT_EQ(ce[0].payoff, (RV{q(4), q(2), q(1)}));
    EXPECT_EQ(ce[0].u_range, (Interval<Rational>{q(1, 5), q(1, 4)}));
    EXPECT_TRUE(effico::attainable_ce_payoffs(In(q(1), q(2), q(3))).empty());
    EXPECT_TRUE(effico::attainable_ce_payoffs(In(q(1), q(2), q(5))).empty());
}

TEST(Kkm, CandidatePriceBranches) {
    auto d = effico::kkm_diagnostics(In(q(1), q(2), q(3)));
    // u in (0, 1/5): (z, x, y); u in (1/5, 1/4): (z, y, x); u in (1/4, 1/3): (y, z, x)
    EXPECT_EQ(d.e(q(1, 10), q(1, 10)), effico::price(xi(q(1, 10)), RV{q(3), q(1), q(2)}));
    EXPECT_EQ(d.e(q(1, 7), q(9, 40)), effico::price(xi(q(1, 7)), RV{q(3), q(2), q(1)}));
    EXPECT_EQ(d.e(q(1, 3), q(3, 10)), effico::price(xi(q(1, 3)), RV{q(2), q(3), q(1)}));
    EXPECT_THROW((void)d.e(q(1, 5), q(0)), effico::Error);
    EXPECT_THROW((void)d.e(q(1, 5), q(1, 3)), effico::Error);
}

TEST(Kkm, Intersections) {
    EXPECT_EQ(effico::kkm_diagnostics(In(q(1), q(2), q(5))).intersection(), (Interval<Rational>{q(1, 4), q(1, 4)}));
    EXPECT_EQ(effico::kkm_diagnostics(In(q(1), q(2), q(4))).intersection(), (Interval<Rational>{q(1, 5), q(1, 4)}));
    EXPECT_EQ(effico::kkm_diagnostics(In(q(1), q(2), q(3))).intersection(), (Interval<Rational>{q(1, 5), q(1, 5)}));
}

TEST(Kkm, ResponseSetsContainTheirOwnPoint) {
    auto d = effico::kkm_diagnostics(In(q(1), q(2), q(3)));
    for (int k = 1; k < 40; ++k) {
        const Rational s = q(k, 120);
        auto parts = d.response_set(s);
        // brute force: u on a fine grid with e(s,u) <= e(u,u)
        for (int j = 1; j < 400; ++j) {
            const Rational u = q(j, 1200);
            const bool inside = !(d.e(u, u) < d.e(s, u));
            const bool listed = std::any_of(parts.begin(), parts.end(), [&](const auto& p) { return p.contains(u); });
            if (inside) {
                EXPECT_TRUE(listed) << "s=" << s << " u=" << u;
            }
        }
    }
}
