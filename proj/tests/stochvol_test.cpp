// SPDX-License-Identifier: MIT
#include "effico/stochvol.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>

using effico::RegimeSwitchModel;
using effico::StochvolOptions;

namespace {

/// integral of the quantile over (0, 1), written in normal scores
double integrate_quantile(const effico::LogNormalMixture& law) {
    auto f = [&](double t) { return law.quantile(effico::Level::from_normal(t)) * effico::normal_pdf(t); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -9.0, 9.0, 20, 1e-13);
}

}  // namespace

TEST(MixtureLaws, QuantileInvertsCdf) {
    const RegimeSwitchModel m;
    const auto stock = effico::stock_law(m);
    const auto kernel = effico::kernel_law(m, 0.3);
    for (int k = 1; k <= 1000; ++k) {
        const double u = k / 1001.0;
        EXPECT_NEAR(stock.cdf(stock.quantile(u)), u, 1e-9) << u;
        EXPECT_NEAR(kernel.cdf(kernel.quantile(u)), u, 1e-9) << u;
    }
}

TEST(MixtureLaws, DeepTailLevels) {
    const auto stock = effico::stock_law(RegimeSwitchModel{});
    for (double t : {-30.0, -12.0, 12.0, 30.0}) {
        const auto lv = effico::Level::from_normal(t);
        const double y = stock.log_quantile(lv);
        const auto back = stock.levels_at_log(y);
        const double want = t < 0 ? lv.u : lv.v;
        const double got = t < 0 ? back.u : back.v;
        EXPECT_NEAR(got / want, 1.0, 1e-8) << t;
    }
}

TEST(MixtureLaws, KernelsHaveUnitMeanAndPriceTheStock) {
    const RegimeSwitchModel m;
    for (double q : {0.05, 0.3, 0.5, 0.8, 0.95}) {
        const auto law = effico::kernel_law(m, q);
        EXPECT_NEAR(law.mean(), 1.0, 1e-12);
        EXPECT_NEAR(integrate_quantile(law), 1.0, 1e-6) << q;
    }
    EXPECT_NEAR(integrate_quantile(effico::stock_law(m)), m.forward(), 1e-6);
}

TEST(MaximinValue, BelowTheStockPrice) {
    const RegimeSwitchModel m;
    const effico::TargetDistribution stock{effico::MixtureStock{m}};
    for (int k = 1; k < 20; ++k) EXPECT_LE(effico::maximin_value_g(m, k / 20.0, stock), m.s0 + 1e-12);
}

TEST(MaximinValue, StableUnderNodeDoubling) {
    const RegimeSwitchModel m;
    const effico::TargetDistribution stock{effico::MixtureStock{m}};
    const auto n = effico::moment_matched_targets(m);
    for (const auto& target : {stock, effico::TargetDistribution{n.normal}, effico::TargetDistribution{n.lognormal}}) {
        for (double q : {0.1, 0.5, 0.9}) {
            StochvolOptions a, b;
            a.nodes = 400;
            b.nodes = 800;
            EXPECT_NEAR(effico::maximin_value_g(m, q, target, a), effico::maximin_value_g(m, q, target, b), 1e-7);
        }
    }
}

TEST(SuperhedgeCost, DefaultModelHasAGap) {
    const RegimeSwitchModel m;
    const auto r = effico::superhedge_cost_distribution(m, effico::MixtureStock{m});
    EXPECT_NEAR(r.value, 0.9877217197, 1e-8);
    EXPECT_NEAR(r.q_star, 0.50488, 1e-4);
    EXPECT_LT(r.value, m.s0);
    EXPECT_FALSE(r.endpoint_warning);
}

TEST(SuperhedgeCost, EqualVolatilitiesCloseTheGap) {
    RegimeSwitchModel m;
    m.sigma_h = m.sigma_l = 0.2;
    const auto r = effico::superhedge_cost_distribution(m, effico::MixtureStock{m});
    EXPECT_NEAR(r.value, m.s0, 1e-9);
    EXPECT_NEAR(r.q_star, m.p, 1e-6);
}

TEST(SuperhedgeCost, PointMassCostsItsValue) {
    const RegimeSwitchModel m;
    const auto r = effico::superhedge_cost_distribution(m, effico::PointMass{2.5});
    EXPECT_NEAR(r.value, 2.5, 1e-9);
}

TEST(Curve, DecreasingInVarianceAndStartsNearTheDiscountedMean) {
    const RegimeSwitchModel m;
    const auto grid = effico::default_variance_grid(m);
    ASSERT_EQ(grid.size(), 20u);
    const auto rows = effico::variance_curve(m, grid);
    EXPECT_NEAR(rows.front().cost_normal, m.forward(), 1e-3);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_LT(rows[i].cost_normal, rows[i - 1].cost_normal) << i;
        EXPECT_LT(rows[i].cost_lognormal, rows[i - 1].cost_lognormal) << i;
        // the normal law is more dispersed in the lower tail
        EXPECT_LT(rows[i].cost_normal, rows[i].cost_lognormal) << i;
    }
}

TEST(Curve, ThreadCountDoesNotChangeTheOutput) {
    const RegimeSwitchModel m;
    const std::vector<double> grid{0.01, 0.03, 0.05, 0.07};
    StochvolOptions one, three;
    one.threads = 1;
    three.threads = 3;
    EXPECT_EQ(effico::curve_csv(effico::variance_curve(m, grid, one)),
              effico::curve_csv(effico::variance_curve(m, grid, three)));
}

TEST(StochvolErrors, InvalidInputs) {
    RegimeSwitchModel bad;
    bad.sigma_l = 0.4;
    EXPECT_THROW(bad.validate(), effico::Error);
    RegimeSwitchModel p0;
    p0.p = 0.0;
    EXPECT_THROW(p0.validate(), effico::Error);
    EXPECT_THROW((void)effico::kernel_law(RegimeSwitchModel{}, 0.0), effico::Error);
    EXPECT_THROW((void)effico::quantile_stock(RegimeSwitchModel{}, 1.0), effico::Error);
    EXPECT_THROW((void)effico::variance_curve(RegimeSwitchModel{}, {0.02, 0.01}), effico::Error);
    EXPECT_THROW((void)effico::targets_with_moments(-1.0, 0.1), effico::Error);
    EXPECT_THROW((void)effico::TargetDistribution(effico::NormalTarget{1.0, -1.0}), effico::Error);
}
