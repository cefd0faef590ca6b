// SPDX-License-Identifier: MIT
#include "effico/efficiency.hpp"

#include <gtest/gtest.h>

#include <random>

using effico::DiscreteDistribution;
using effico::DiscreteMarket;
using effico::ErrorCode;
using effico::ProblemKind;
using effico::Rational;

namespace {

Rational q(long long a, long long b = 1) { return Rational(a, b); }
using RV = std::vector<Rational>;

RV xi(const Rational& u) { return RV{3 * u, 3 - 9 * u, 6 * u}; }

const auto& canonical() {
    static const auto fam = effico::kernel_family(DiscreteMarket<Rational>::canonical());
    return fam;
}

effico::SolutionSet<Rational> solve(ProblemKind k, const RV& atoms) {
    return effico::solve_problem(k, canonical(), DiscreteDistribution<Rational>(atoms));
}

std::vector<RV> permutations(RV v) {
    std::sort(v.begin(), v.end());
    std::vector<RV> out;
    do out.push_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

/// max over a fine u grid of the cheapest rearrangement.
Rational grid_maximin(const RV& atoms) {
    Rational best(-1000000);
    for (int k = 0; k <= 1200; ++k) {
        const auto kern = xi(q(k, 3600));
        Rational worst(1000000);
        for (const auto& p : permutations(atoms)) worst = std::min(worst, effico::price(kern, p));
        best = std::max(best, worst);
    }
    return best;
}

/// min over rearrangements of the larger end-point price.
Rational enum_minimax(const RV& atoms) {
    Rational best(1000000);
    for (const auto& p : permutations(atoms))
        best = std::min(best, std::max(effico::price(xi(q(0)), p), effico::price(xi(q(1, 3)), p)));
    return best;
}

/// min t with t >= both end-point prices over the permutohedron, written with
/// one majorization inequality per subset of states.
Rational subset_cvx_minimax(const RV& atoms) {
    RV d = atoms;
    std::sort(d.begin(), d.end(), std::greater<>());
    effico::LinearProgram<Rational> lp(4);  // Z1, Z2, Z3, t
    for (std::size_t i = 0; i < 4; ++i) lp.bounds[i] = effico::VariableBound<Rational>::free();
    lp.objective[3] = q(1);
    for (unsigned mask = 1; mask < 7; ++mask) {
        RV row(4, q(0));
        Rational top(0);
        int count = 0;
        for (unsigned i = 0; i < 3; ++i)
            if (mask & (1u << i)) row[i] = q(1), top += d[count++];
        lp.add_le(row, top);
    }
    lp.add_eq({q(1), q(1), q(1), q(0)}, d[0] + d[1] + d[2]);
    for (const auto& u : {q(0), q(1, 3)}) {
        auto k = xi(u);
        lp.add_le({k[0] / 3, k[1] / 3, k[2] / 3, q(-1)}, q(0));
    }
    auto r = effico::solve_lp(lp, effico::Sense::Minimize);
    EXPECT_TRUE(r.optimal());
    return r.value;
}

RV random_atoms(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> v(-12, 12);
    RV a{q(v(rng), 2), q(v(rng), 2), q(v(rng), 2)};
    return a;
}

}  // namespace

TEST(MaximinDf, ExampleValuesAndOptimizers) {
    auto a = solve(ProblemKind::MaximinDF, RV{q(1), q(2), q(3)});
    EXPECT_EQ(a.value, q(9, 5));
    EXPECT_TRUE(a.contains(RV{q(3), q(1), q(2)}, xi(q(1, 5))));
    EXPECT_TRUE(a.contains(RV{q(3), q(2), q(1)}, xi(q(1, 5))));
    EXPECT_FALSE(a.any_boundary());

    auto b = solve(ProblemKind::MaximinDF, RV{q(1), q(2), q(4)});
    EXPECT_EQ(b.value, q(2));
    for (int k = 48; k <= 60; ++k) EXPECT_TRUE(b.contains(RV{q(4), q(2), q(1)}, xi(q(k, 240)))) << k;

    auto c = solve(ProblemKind::MaximinDF, RV{q(5, 2), q(5, 2), q(5, 2)});
    EXPECT_EQ(c.value, q(5, 2));
}

TEST(MaximinDf, OptimizersAttainTheValue) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 40; ++trial) {
        auto atoms = random_atoms(rng);
        auto s = solve(ProblemKind::MaximinDF, atoms);
        ASSERT_FALSE(s.optimizers.empty());
        for (const auto& o : s.optimizers)
            for (const auto& z : o.payoff.vertices) {
                EXPECT_EQ(effico::price(o.kernel.at_lo, z), s.value);
                EXPECT_EQ(effico::price(o.kernel.at_hi, z), s.value);
            }
    }
}

TEST(MaximinDf, MatchesFineGridOracle) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 25; ++trial) {
        auto atoms = random_atoms(rng);
        EXPECT_EQ(solve(ProblemKind::MaximinDF, atoms).value, grid_maximin(atoms)) << trial;
    }
}

TEST(MinimaxDf, ExampleValuesAndBoundaryFlag) {
    auto a = solve(ProblemKind::MinimaxDF, RV{q(1), q(2), q(3)});
    EXPECT_EQ(a.value, q(2));
    EXPECT_TRUE(a.contains(RV{q(3), q(2), q(1)}, RV{q(0), q(3), q(0)}));
    EXPECT_TRUE(a.any_boundary());

    auto b = solve(ProblemKind::MinimaxDF, RV{q(1), q(2), q(5)});
    EXPECT_EQ(b.value, q(7, 3));
    EXPECT_TRUE(b.contains(RV{q(5), q(2), q(1)}, xi(q(1, 3))));

    auto c = solve(ProblemKind::MinimaxDF, RV{q(1), q(2), q(4)});
    EXPECT_EQ(c.value, q(2));
    for (int k = 0; k <= 6; ++k) EXPECT_TRUE(c.contains(RV{q(4), q(2), q(1)}, xi(q(k, 18))));
}

TEST(MinimaxDf, MatchesPermutationEnumeration) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 60; ++trial) {
        auto atoms = random_atoms(rng);
        EXPECT_EQ(solve(ProblemKind::MinimaxDF, atoms).value, enum_minimax(atoms)) << trial;
    }
}

TEST(ConvexifiedMinimax, ExampleOptimizers) {
    auto a = solve(ProblemKind::ConvexifiedMinimax, RV{q(1), q(2), q(3)});
    EXPECT_EQ(a.value, q(9, 5));
    for (int k = 0; k <= 6; ++k) EXPECT_TRUE(a.contains(RV{q(3), q(9, 5), q(6, 5)}, xi(q(k, 18))));

    auto b = solve(ProblemKind::ConvexifiedMinimax, RV{q(3, 2), q(2), q(7, 2)});
    EXPECT_EQ(b.value, q(17, 8));
    ASSERT_EQ(b.optimizers.size(), 1u);
    EXPECT_EQ(b.optimizers[0].payoff.vertices, (std::vector<RV>{{q(27, 8), q(17, 8), q(3, 2)}}));

    auto c = solve(ProblemKind::ConvexifiedMinimax, RV{q(1), q(2), q(4)});
    EXPECT_EQ(c.value, q(2));
    EXPECT_TRUE(c.contains(RV{q(4), q(2), q(1)}, xi(q(1, 6))));
}

TEST(ConvexifiedMinimax, MatchesSubsetFormulation) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        auto atoms = random_atoms(rng);
        EXPECT_EQ(solve(ProblemKind::ConvexifiedMinimax, atoms).value, subset_cvx_minimax(atoms)) << trial;
    }
}

TEST(ConvexifiedMinimax, OptimizerLiesInTheHullAndSuperhedgesAtTheValue) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 40; ++trial) {
        auto atoms = random_atoms(rng);
        DiscreteDistribution<Rational> d(atoms);
        auto s = effico::convexified_minimax(canonical(), d);
        for (const auto& o : s.optimizers)
            for (const auto& z : o.payoff.vertices) {
                EXPECT_TRUE(effico::conv_membership(z, d));
                EXPECT_EQ(effico::superhedge_cost(canonical(), z).value, s.value);
            }
    }
}

TEST(ConvexifiedMaximin, SegmentsOfOptimizers) {
    auto a = solve(ProblemKind::ConvexifiedMaximin, RV{q(1), q(2), q(5)});
    EXPECT_EQ(a.value, q(9, 4));
    for (int k = 0; k <= 6; ++k) {
        const Rational t = q(k, 2);
        EXPECT_TRUE(a.contains(RV{5 - t, 2 + t, q(1)}, xi(q(1, 4)))) << "t = " << t;
    }
    auto b = solve(ProblemKind::ConvexifiedMaximin, RV{q(1), q(2), q(3)});
    EXPECT_EQ(b.value, q(9, 5));
    for (int k = 0; k <= 4; ++k) {
        const Rational t = q(k, 4);
        EXPECT_TRUE(b.contains(RV{q(3), 2 - t, 1 + t}, xi(q(1, 5)))) << "t = " << t;
    }
}

TEST(ValueChain, HoldsOnRandomThreeStateLaws) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        auto atoms = random_atoms(rng);
        const auto mx = solve(ProblemKind::MaximinDF, atoms).value;
        const auto mn = solve(ProblemKind::MinimaxDF, atoms).value;
        const auto cmn = solve(ProblemKind::ConvexifiedMinimax, atoms).value;
        const auto cmx = solve(ProblemKind::ConvexifiedMaximin, atoms).value;
        EXPECT_EQ(mx, cmx);
        EXPECT_LE(cmx, cmn);
        EXPECT_LE(cmn, mn);
    }
}

TEST(ValueChain, HoldsOnAFourStateMarketInBothScalars) {
    DiscreteMarket<Rational> m({q(1)}, {{q(3), q(1), q(1), q(0)}});
    DiscreteMarket<double> md({1.0}, {{3.0, 1.0, 1.0, 0.0}});
    auto fam = effico::kernel_family(m);
    auto famd = effico::kernel_family(md);
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<int> v(-6, 6);
    for (int trial = 0; trial < 20; ++trial) {
        RV atoms{q(v(rng)), q(v(rng)), q(v(rng)), q(v(rng))};
        DiscreteDistribution<Rational> d(atoms);
        DiscreteDistribution<double> dd(effico::to_doubles(atoms));
        std::array<Rational, 4> vals{};
        for (std::size_t i = 0; i < 4; ++i) {
            vals[i] = effico::solve_problem(effico::kAllProblems[i], fam, d).value;
            const double dv = effico::solve_problem(effico::kAllProblems[i], famd, dd).value;
            EXPECT_NEAR(dv, effico::to_double(vals[i]), 1e-9) << trial;
        }
        EXPECT_EQ(vals[0], vals[3]);
        EXPECT_LE(vals[3], vals[2]);
        EXPECT_LE(vals[2], vals[1]);
    }
}

TEST(PerfectCostEfficiency, GenericCheck) {
    EXPECT_TRUE(effico::is_perfectly_cost_efficient(canonical(), DiscreteDistribution<Rational>(RV{q(1), q(2), q(4)})));
    EXPECT_FALSE(effico::is_perfectly_cost_efficient(canonical(), DiscreteDistribution<Rational>(RV{q(1), q(2), q(3)})));
}

TEST(CeParameterRange, OrderingIntervals) {
    const auto line = canonical().line();
    auto r = effico::ce_parameter_range(line, RV{q(4), q(2), q(1)});
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->lo, q(1, 5));
    EXPECT_EQ(r->hi, q(1, 4));
    auto s = effico::ce_parameter_range(line, RV{q(3), q(1), q(2)});
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->lo, q(0));
    EXPECT_EQ(s->hi, q(1, 5));
    EXPECT_FALSE(effico::ce_parameter_range(line, RV{q(1), q(3), q(2)}).has_value());
}

TEST(SolverErrors, StateCountLimitsAndMismatches) {
    try {
        effico::maximin_df(canonical(), DiscreteDistribution<Rational>(RV{q(1), q(2)}));
        FAIL();
    } catch (const effico::Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
    RV row(8, q(1));
    row[0] = q(2);
    row[1] = q(0);
    DiscreteMarket<Rational> big({q(1)}, {row});
    RV atoms{q(1), q(2), q(3), q(4), q(5), q(6), q(7), q(8)};
    try {
        effico::solve_problem(ProblemKind::MaximinDF, big, DiscreteDistribution<Rational>(atoms));
        FAIL();
    } catch (const effico::Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TooManyStates);
    }
}
