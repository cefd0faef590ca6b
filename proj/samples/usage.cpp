// SPDX-License-Identifier: MIT
//
// Solves the four problems for the law (1, 2, 3) on the canonical 3-state
// market, then the distributional superhedging cost of S_T under regime
// switching.
#include "effico/effico.hpp"

#include <iostream>

int main() {
    using effico::Rational;
    const auto market = effico::DiscreteMarket<Rational>::canonical();
    const effico::DiscreteDistribution<Rational> law({Rational(1), Rational(2), Rational(3)});
    for (auto kind : effico::kAllProblems) {
        const auto sol = effico::solve_problem(kind, market, law);
        std::cout << effico::to_string(kind) << ": " << sol.value << '\n';
    }

    const effico::RegimeSwitchModel model;
    const auto gap = effico::superhedge_cost_distribution(model, effico::MixtureStock{model});
    std::cout << "sup_q g(q) = " << gap.value << " at q = " << gap.q_star << " (S0 = " << model.s0 << ")\n";
}
