// SPDX-License-Identifier: MIT
#include "effico/market.hpp"

#include <gtest/gtest.h>

#include <random>

using effico::DiscreteMarket;
using effico::ErrorCode;
using effico::Rational;

namespace {

Rational q(long long a, long long b = 1) { return Rational(a, b); }
using RV = std::vector<Rational>;

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const effico::Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::NumericalFailure;
}

/// Kernel conditions: nonnegative, mean one, prices every asset.
template <class S>
bool prices_market(const DiscreteMarket<S>& m, const std::vector<S>& k, double tol) {
    const auto n = static_cast<double>(k.size());
    double sum = 0.0;
    for (const auto& v : k) {
        if (effico::to_double(v) < -tol) return false;
        sum += effico::to_double(v);
    }
    if (std::abs(sum / n - 1.0) > tol) return false;
    for (std::size_t j = 0; j < m.assets(); ++j) {
        double p = 0.0;
        for (std::size_t i = 0; i < k.size(); ++i) p += effico::to_double(k[i]) * effico::to_double(m.sT()[j][i]);
        if (std::abs(p / n - effico::to_double(m.s0()[j])) > tol) return false;
    }
    return true;
}

}  // namespace

TEST(KernelFamily, CanonicalMarketIsTheSegmentThreeUNineUSixU) {
    auto fam = effico::kernel_family(DiscreteMarket<Rational>::canonical());
    ASSERT_TRUE(fam.parametric());
    const auto& l = fam.line();
    EXPECT_EQ(l.base, (RV{q(0), q(3), q(0)}));
    EXPECT_EQ(l.direction, (RV{q(3), q(-9), q(6)}));
    EXPECT_EQ(l.u_lo, q(0));
    EXPECT_EQ(l.u_hi, q(1, 3));
    EXPECT_EQ(l.kernel_at(q(1, 5)), (RV{q(3, 5), q(6, 5), q(6, 5)}));
}

TEST(KernelFamily, TwoStateMarketHasAUniqueKernel) {
    // (k1 + k2)/2 = 1 and (2 k1 + k2/2)/2 = 1 give k = (2/3, 4/3)
    auto fam = effico::kernel_family(DiscreteMarket<Rational>({q(1)}, {{q(2), q(1, 2)}}));
    ASSERT_FALSE(fam.parametric());
    ASSERT_EQ(fam.vertices().size(), 1u);
    EXPECT_EQ(fam.vertices()[0], (RV{q(2, 3), q(4, 3)}));
}

TEST(KernelFamily, RedundantAssetChangesNothing) {
    auto base = effico::kernel_family(DiscreteMarket<Rational>::canonical());
    auto doubled = effico::kernel_family(DiscreteMarket<Rational>({q(2), q(4)}, {{q(4), q(2), q(1)}, {q(8), q(4), q(2)}}));
    ASSERT_TRUE(doubled.parametric());
    EXPECT_EQ(doubled.vertices(), base.vertices());
}

TEST(KernelFamily, DoubleModeMatchesRational) {
    auto fam = effico::kernel_family(DiscreteMarket<double>::canonical());
    ASSERT_TRUE(fam.parametric());
    EXPECT_DOUBLE_EQ(fam.line().u_lo, 0.0);
    EXPECT_NEAR(fam.line().u_hi, 1.0 / 3.0, 1e-15);
}

TEST(KernelFamily, PolytopeVerticesPriceTheMarket) {
    DiscreteMarket<Rational> m({q(1)}, {{q(3), q(1), q(1), q(0)}});
    auto fam = effico::kernel_family(m);
    ASSERT_FALSE(fam.parametric());
    const auto verts = fam.vertices();
    EXPECT_GE(verts.size(), 3u);
    for (const auto& v : verts) EXPECT_TRUE(prices_market(m, v, 0.0));
}

TEST(KernelFamily, RandomMarketsGiveValidKernels) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> val(0, 6), states(3, 6);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = states(rng);
        std::vector<Rational> row(n);
        for (auto& v : row) v = q(val(rng));
        if (*std::max_element(row.begin(), row.end()) == *std::min_element(row.begin(), row.end())) continue;
        // price strictly inside the payoff range: no arbitrage
        auto lo = *std::min_element(row.begin(), row.end()), hi = *std::max_element(row.begin(), row.end());
        DiscreteMarket<Rational> m({(lo + 2 * hi) / 3}, {row});
        auto fam = effico::kernel_family(m);
        for (const auto& v : fam.vertices()) EXPECT_TRUE(prices_market(m, v, 1e-12)) << "trial " << trial;
        ++checked;
    }
    EXPECT_GT(checked, 40);
}

TEST(KernelFamily, ArbitrageAndShapeErrors) {
    EXPECT_EQ(code_of([] { effico::kernel_family(DiscreteMarket<Rational>({q(5)}, {{q(4), q(2), q(1)}})); }),
              ErrorCode::Infeasible);
    EXPECT_EQ(code_of([] { DiscreteMarket<Rational>({q(1)}, {{q(1), q(2)}, {q(1), q(2)}}); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([] { DiscreteMarket<Rational>({q(1)}, {{q(1), q(2), q(3)}, {q(1)}}); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([] { DiscreteMarket<Rational>({q(-1)}, {{q(1), q(2)}}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { DiscreteMarket<Rational>({q(1)}, {{q(1)}}); }), ErrorCode::InvalidArgument);
    std::vector<Rational> wide(13, q(1));
    wide[0] = q(2);
    wide[1] = q(0);
    EXPECT_EQ(code_of([&] { effico::kernel_family(DiscreteMarket<Rational>({q(1)}, {wide})); }), ErrorCode::DimensionTooLarge);
}

TEST(Price, HandComputedValues) {
    const auto xi = [](const Rational& u) { return RV{3 * u, 3 - 9 * u, 6 * u}; };
    EXPECT_EQ(effico::price(xi(q(1, 4)), RV{q(3), q(2), q(1)}), q(7, 4));
    EXPECT_EQ(effico::price(xi(q(1, 9)), RV{q(-5, 2), q(-5, 2), q(-5, 2)}), q(-5, 2));
    for (int k = 0; k <= 6; ++k) EXPECT_EQ(effico::price(xi(q(k, 18)), RV{q(4), q(2), q(1)}), q(2));
    EXPECT_EQ(code_of([] { effico::price(RV{q(1), q(1)}, RV{q(1)}); }), ErrorCode::DimensionMismatch);
}

TEST(SuperhedgeCost, BoundaryAttainmentForThreeTwoOne) {
    auto fam = effico::kernel_family(DiscreteMarket<Rational>::canonical());
    auto r = effico::superhedge_cost(fam, RV{q(3), q(2), q(1)});
    EXPECT_EQ(r.value, q(2));
    ASSERT_EQ(r.maximizers.size(), 1u);
    EXPECT_EQ(r.maximizers[0].kernel, (RV{q(0), q(3), q(0)}));
    EXPECT_TRUE(r.boundary());
}

TEST(SuperhedgeCost, AttainablePayoffIsFlatAcrossTheFamily) {
    auto fam = effico::kernel_family(DiscreteMarket<Rational>::canonical());
    auto r = effico::superhedge_cost(fam, RV{q(4), q(2), q(1)});
    EXPECT_EQ(r.value, q(2));
    ASSERT_TRUE(r.u_range.has_value());
    EXPECT_EQ(r.u_range->first, q(0));
    EXPECT_EQ(r.u_range->second, q(1, 3));
    EXPECT_TRUE(effico::is_attainable(fam, RV{q(4), q(2), q(1)}));
    EXPECT_FALSE(effico::is_attainable(fam, RV{q(3), q(2), q(1)}));
}

TEST(SuperhedgeCost, IncreasingPayoffPeaksAtTheTop) {
    auto fam = effico::kernel_family(DiscreteMarket<Rational>::canonical());
    auto r = effico::superhedge_cost(fam, RV{q(1), q(2), q(3)});
    EXPECT_EQ(r.value, q(7, 3));  // 2 + u at u = 1/3
    EXPECT_EQ(r.u_range->first, q(1, 3));
    EXPECT_EQ(r.maximizers[0].kernel, (RV{q(1), q(0), q(2)}));
}

TEST(SuperhedgeCost, DominatesEveryKernelPrice) {
    DiscreteMarket<Rational> m({q(1)}, {{q(3), q(1), q(1), q(0)}});
    auto fam = effico::kernel_family(m);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> val(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        RV z{q(val(rng)), q(val(rng)), q(val(rng)), q(val(rng))};
        auto r = effico::superhedge_cost(fam, z);
        for (const auto& v : fam.vertices()) EXPECT_LE(effico::price(v, z), r.value);
        EXPECT_FALSE(r.maximizers.empty());
    }
}
