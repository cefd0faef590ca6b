// SPDX-License-Identifier: MIT
#include "effico/utility.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using effico::ErrorCode;
using effico::Utility;

namespace {

std::vector<Utility> kinds() { return {Utility::log(), Utility::exp(), Utility::power(0.5), Utility::power(-1.0)}; }

/// price of a payoff under the canonical kernel at u
double price_at(const std::array<double, 3>& z, double u) {
    return (3 * u * z[0] + (3 - 9 * u) * z[1] + 6 * u * z[2]) / 3.0;
}

}  // namespace

TEST(OptimalWealth, FirstOrderConditionOnRandomBudgets) {
    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> budget(0.05, 50.0);
    for (const auto& u : kinds()) {
        for (int i = 0; i < 100; ++i) {
            const double x0 = budget(rng);
            const auto w = effico::optimal_wealth(u, x0);
            EXPECT_LE(std::abs(w.foc_residual), 1e-10 * std::max(1.0, u.derivative(w.x_star))) << u.name() << " " << x0;
            EXPECT_LT(w.x_star, x0);
            EXPECT_NEAR(w.payoff[0], 3 * x0 - 2 * w.x_star, 1e-12 * x0);
            for (double s : {0.0, 0.1, 0.2, 0.3, 1.0 / 3.0})
                EXPECT_NEAR(price_at(w.payoff, s), x0, 1e-12 * std::max(1.0, x0));
        }
    }
}

TEST(OptimalWealth, AnalyticMaximizers) {
    EXPECT_NEAR(effico::optimal_wealth(Utility::log(), 1.0).x_star, 0.75, 1e-13);
    EXPECT_NEAR(effico::optimal_wealth(Utility::exp(), 1.0).x_star, 1.0 - std::log(2.0) / 3.0, 1e-13);
    const auto w = effico::optimal_wealth(Utility::log(), 1.0);
    EXPECT_NEAR(w.payoff[0], 1.5, 1e-13);
    EXPECT_NEAR(w.payoff[1], 1.0, 0.0);
    EXPECT_NEAR(w.payoff[2], 0.75, 1e-13);
}

TEST(OptimalWealth, PowerUtilityIsHomogeneous) {
    for (double alpha : {-2.0, -0.5, 0.3, 0.5, 0.9}) {
        const auto u = Utility::power(alpha);
        const double base = effico::optimal_wealth(u, 1.0).x_star;
        for (double c : {0.1, 2.0, 7.5, 40.0})
            EXPECT_NEAR(effico::optimal_wealth(u, c).x_star, c * base, 1e-10 * c) << alpha << " " << c;
    }
}

TEST(OptimalWealth, CustomUtilityMatchesBuiltIn) {
    const auto custom = Utility::custom([](double x) { return 2.0 * std::sqrt(x); }, [](double x) { return 1.0 / std::sqrt(x); });
    for (double x0 : {0.5, 1.0, 3.0})
        EXPECT_NEAR(effico::optimal_wealth(custom, x0).x_star, effico::optimal_wealth(Utility::power(0.5), x0).x_star,
                    1e-10 * x0);
}

TEST(OptimalWealth, TrinomialClosedFormAgrees) {
    for (const auto& u : kinds()) {
        for (double x0 : {0.5, 1.0, 4.0}) {
            const auto a = effico::optimal_wealth(u, x0);
            const auto b = effico::trinomial_closed_form(u, x0);
            for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(a.payoff[i], b.payoff[i], 1e-10 * x0) << u.name();
            EXPECT_NEAR(a.value, b.value, 1e-10);
        }
    }
}

TEST(BruteForceTheta, WithinGridErrorOfTheOptimum) {
    for (const auto& u : kinds()) {
        const auto best = effico::optimal_wealth(u, 1.0);
        const auto grid = effico::brute_force_theta([&](double x) { return u.value(x); }, 1.0, 1e-4);
        EXPECT_LE(grid.value, best.value + 1e-12) << u.name();
        EXPECT_NEAR(grid.value, best.value, 1e-6) << u.name();
        EXPECT_NEAR(grid.theta, 1.0 - best.x_star, 2e-3) << u.name();
    }
}

TEST(BruteForceTheta, ConvexSquareUtilityPicksAnEndpoint) {
    const auto r = effico::brute_force_theta([](double x) { return x * x; }, 1.0, 1e-4, effico::ThetaRange::Nonnegative, true);
    EXPECT_DOUBLE_EQ(r.theta, 1.0);
    EXPECT_NEAR(r.value, 10.0 / 3.0, 1e-12);
    ASSERT_TRUE(r.reference_value.has_value());
    EXPECT_NEAR(*r.reference_value, 14.0 / 15.0, 1e-12);
    const auto alt = effico::brute_force_theta([](double x) { return x * x; }, 1.0, 1e-4, effico::ThetaRange::Alternative);
    EXPECT_DOUBLE_EQ(alt.theta_lo, -1.0);
    EXPECT_DOUBLE_EQ(alt.theta_hi, 0.5);
}

TEST(CeCheck, RecognizesPerfectlyCostEfficientPayoffs) {
    using effico::Rational;
    auto yes = effico::ce_check_of_payoff<Rational>({Rational(4), Rational(2), Rational(1)});
    EXPECT_TRUE(yes.perfectly_cost_efficient);
    auto no = effico::ce_check_of_payoff<Rational>({Rational(3), Rational(2), Rational(1)});
    EXPECT_FALSE(no.perfectly_cost_efficient);
    EXPECT_TRUE(no.optimizer_dominated);
    auto flat = effico::ce_check_of_payoff<Rational>({Rational(1), Rational(1), Rational(1)});
    EXPECT_TRUE(flat.perfectly_cost_efficient);
}

TEST(UtilityErrors, InvalidParameters) {
    for (double a : {0.0, 1.0, 2.0, std::nan("")}) {
        try {
            (void)Utility::power(a);
            FAIL() << a;
        } catch (const effico::Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
        }
    }
    EXPECT_THROW((void)effico::optimal_wealth(Utility::log(), 0.0), effico::Error);
    EXPECT_THROW((void)effico::optimal_wealth(Utility::log(), -1.0), effico::Error);
    try {
        (void)effico::brute_force_theta([](double x) { return x; }, 1.0, 0.0);
        FAIL();
    } catch (const effico::Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyFeasibleRange);
    }
    EXPECT_THROW((void)effico::ce_check_of_payoff<double>({1.0, 2.0}), effico::Error);
}
