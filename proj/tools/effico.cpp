// SPDX-License-Identifier: MIT
//
// effico: command-line front end. JSON on stdout by default, CSV with
// --format csv. Exit codes: 0 ok, 1 failed verification, 2 bad input,
// 3 numerical failure.
#include "effico/effico.hpp"
#include "effico/json_io.hpp"
#include "effico/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using effico::Error;
using effico::ErrorCode;
using effico::Json;
using effico::ProblemKind;
using effico::Rational;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

ProblemKind parse_problem(const std::string& name) {
    for (auto k : effico::kAllProblems)
        if (effico::to_string(k) == name) return k;
    throw Error(ErrorCode::InvalidArgument, "unknown problem '" + name + "'");
}

std::vector<ProblemKind> selected_problems(const std::string& problem, bool all) {
    if (all || problem.empty()) return {std::begin(effico::kAllProblems), std::end(effico::kAllProblems)};
    return {parse_problem(problem)};
}

template <class S>
std::string csv_vector(const std::vector<S>& v, bool decimal) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        if constexpr (effico::is_exact_v<S>) {
            out += decimal ? effico::ScalarTraits<double>::to_string(effico::to_double(v[i]))
                           : effico::ScalarTraits<S>::to_string(v[i]);
        } else {
            out += effico::ScalarTraits<double>::to_string(v[i]);
        }
    }
    return out;
}

template <class S>
std::string csv_scalar(const S& v, bool decimal) {
    return csv_vector(std::vector<S>{v}, decimal);
}

/// problem,value,payoff,kernel_lo,kernel_hi,u_lo,u_hi,boundary; vertices of a
/// payoff hull are separated by '|'.
template <class S>
std::string solutions_csv(const std::vector<effico::SolutionSet<S>>& sols, bool decimal) {
    std::string out = "problem,value,payoff,kernel_lo,kernel_hi,u_lo,u_hi,boundary\n";
    for (const auto& s : sols) {
        for (const auto& o : s.optimizers) {
            std::string payoff;
            for (std::size_t i = 0; i < o.payoff.vertices.size(); ++i)
                payoff += (i ? "|" : "") + csv_vector(o.payoff.vertices[i], decimal);
            const auto& k = o.kernel;
            out += std::string(effico::to_string(s.kind)) + ',' + csv_scalar(s.value, decimal) + ',' + payoff + ',' +
                   csv_vector(k.at_lo, decimal) + ',' + csv_vector(k.at_hi, decimal) + ',' +
                   (k.u_range ? csv_scalar(k.u_range->lo, decimal) : "") + ',' +
                   (k.u_range ? csv_scalar(k.u_range->hi, decimal) : "") + ',' + (o.boundary() ? "true" : "false") + '\n';
        }
    }
    return out;
}

void emit_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

// ------------------------------------------------------------ three-state

struct ThreeStateArgs {
    std::string x, y, z, problem, method = "closed-form", format = "json";
    bool all = false;
    bool decimal = false;
};

int run_three_state(const ThreeStateArgs& a) {
    using S = Rational;
    effico::ThreeStateInput<S> in(effico::ScalarTraits<S>::parse(a.x), effico::ScalarTraits<S>::parse(a.y),
                                  effico::ScalarTraits<S>::parse(a.z));
    if (a.method != "closed-form" && a.method != "generic")
        throw Error(ErrorCode::InvalidArgument, "method must be closed-form or generic");
    const auto kinds = selected_problems(a.problem, a.all);
    std::vector<effico::SolutionSet<S>> sols;
    for (auto k : kinds) {
        sols.push_back(a.method == "generic"
                           ? effico::solve_problem(k, effico::DiscreteMarket<S>::canonical(), in.distribution())
                           : effico::three_state_closed_form(in, k));
    }
    if (a.format == "csv") {
        std::cout << solutions_csv(sols, a.decimal);
        return 0;
    }
    const bool d = a.decimal;
    Json j = Json::object();
    j["input"] = effico::vector_to_json(in.distribution().values(), d);
    j["method"] = a.method;
    if (kinds.size() == 1) {
        auto one = effico::solution_to_json(sols.front(), d);
        one["input"] = j["input"];
        emit_json(one);
        return 0;
    }
    j["delta1"] = effico::scalar_to_json(in.delta1(), d);
    j["delta2"] = effico::scalar_to_json(in.delta2(), d);
    Json values = Json::object();
    for (const auto& s : sols) values[std::string(effico::to_string(s.kind))] = effico::scalar_to_json(s.value, d);
    j["values"] = std::move(values);
    j["perfectly_cost_efficient"] = effico::is_perfectly_cost_efficient(in);
    Json ce = Json::array();
    for (const auto& c : effico::attainable_ce_payoffs(in)) {
        ce.push_back({{"Z", effico::vector_to_json(c.payoff, d)},
                      {"u_range", Json::array({effico::scalar_to_json(c.u_range.lo, d),
                                               effico::scalar_to_json(c.u_range.hi, d)})}});
    }
    j["attainable_ce_payoffs"] = std::move(ce);
    const auto kkm = effico::kkm_diagnostics(in).intersection();
    j["kkm_intersection"] = Json::array({effico::scalar_to_json(kkm.lo, d), effico::scalar_to_json(kkm.hi, d)});
    Json all = Json::array();
    for (const auto& s : sols) all.push_back(effico::solution_to_json(s, d));
    j["solutions"] = std::move(all);
    emit_json(j);
    return 0;
}

// ------------------------------------------------------------------ solve

struct SolveArgs {
    std::string market, dist, problem, format = "json";
    bool all = false;
    bool exact = false;
    bool decimal = false;
};

template <class S>
int run_solve_as(const SolveArgs& a) {
    const auto market = effico::market_from_json<S>(effico::read_json_file(a.market));
    const auto dist = effico::distribution_from_json<S>(effico::read_json_file(a.dist));
    const auto family = effico::kernel_family(market);
    std::vector<effico::SolutionSet<S>> sols;
    for (auto k : selected_problems(a.problem, a.all)) sols.push_back(effico::solve_problem(k, family, dist));
    if (a.format == "csv") {
        std::cout << solutions_csv(sols, a.decimal);
        return 0;
    }
    Json out = Json::array();
    for (const auto& s : sols) out.push_back(effico::solution_to_json(s, a.decimal));
    emit_json(sols.size() == 1 ? out.front() : Json{{"solutions", out}});
    return 0;
}

int run_solve(const SolveArgs& a) { return a.exact ? run_solve_as<Rational>(a) : run_solve_as<double>(a); }

// ---------------------------------------------------------------- utility

struct UtilityArgs {
    std::string kind, input, method = "foc", theta_range = "nonnegative";
    std::optional<double> alpha, x0;
    double step = 1e-4;
};

Json wealth_json(const std::string& kind, double x0, const effico::WealthSolution& w) {
    Json j{{"kind", kind}, {"x0", x0}, {"x_star", effico::decimal_json(w.x_star)}};
    j["payoff"] = Json::array(
        {effico::decimal_json(w.payoff[0]), effico::decimal_json(w.payoff[1]), effico::decimal_json(w.payoff[2])});
    j["value"] = effico::decimal_json(w.value);
    j["foc_residual"] = effico::decimal_json(w.foc_residual);
    if (w.analytic_x_star) j["analytic_x_star"] = effico::decimal_json(*w.analytic_x_star);
    return j;
}

int run_utility(UtilityArgs a) {
    if (!a.input.empty()) {
        const auto j = effico::read_json_file(a.input);
        if (j.contains("kind")) a.kind = j.at("kind").get<std::string>();
        if (j.contains("alpha")) a.alpha = effico::scalar_from_json<double>(j.at("alpha"));
        if (j.contains("x0")) a.x0 = effico::scalar_from_json<double>(j.at("x0"));
    }
    if (a.kind.empty()) throw Error(ErrorCode::InvalidArgument, "utility needs --kind");
    if (!a.x0) throw Error(ErrorCode::InvalidArgument, "utility needs --x0");
    const double x0 = *a.x0;

    if (a.kind == "square") {
        // x^2 on nonnegative wealth: grid maximum next to the value at theta = -1/5
        auto sq = [](double x) { return x >= 0.0 ? x * x : -std::numeric_limits<double>::infinity(); };
        const auto range = a.theta_range == "alternative" ? effico::ThetaRange::Alternative : effico::ThetaRange::Nonnegative;
        if (a.theta_range != "alternative" && a.theta_range != "nonnegative")
            throw Error(ErrorCode::InvalidArgument, "theta range must be nonnegative or alternative");
        const auto r = effico::brute_force_theta(sq, x0, a.step, range, true);
        Json j{{"kind", "square"}, {"x0", x0}, {"theta_range", Json::array({r.theta_lo, r.theta_hi})}};
        j["theta"] = effico::decimal_json(r.theta);
        j["payoff"] = Json::array(
            {effico::decimal_json(r.payoff[0]), effico::decimal_json(r.payoff[1]), effico::decimal_json(r.payoff[2])});
        j["value"] = effico::decimal_json(r.value);
        j["reference_theta"] = -0.2;
        j["reference_value"] = effico::decimal_json(*r.reference_value);
        j["evaluations"] = r.evaluations;
        emit_json(j);
        return 0;
    }

    effico::Utility u = [&] {
        if (a.kind == "log") return effico::Utility::log();
        if (a.kind == "exp") return effico::Utility::exp();
        if (a.kind == "power") {
            if (!a.alpha) throw Error(ErrorCode::InvalidArgument, "power utility needs --alpha");
            return effico::Utility::power(*a.alpha);
        }
        throw Error(ErrorCode::InvalidArgument, "unknown utility kind '" + a.kind + "'");
    }();
    effico::WealthSolution w;
    if (a.method == "foc") {
        w = effico::optimal_wealth(u, x0);
    } else if (a.method == "trinomial") {
        w = effico::trinomial_closed_form(u, x0);
    } else {
        throw Error(ErrorCode::InvalidArgument, "method must be foc or trinomial");
    }
    auto j = wealth_json(a.kind, x0, w);
    if (a.alpha && a.kind == "power") j["alpha"] = *a.alpha;
    emit_json(j);
    return 0;
}

// --------------------------------------------------------------- stochvol

effico::RegimeSwitchModel load_model(const std::string& path) {
    if (path.empty()) return {};
    return effico::model_from_json(effico::read_json_file(path));
}

struct CurveArgs {
    std::string model, grid, out;
    std::size_t threads = 0;
    std::size_t nodes = 400;
};

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(effico::ScalarTraits<double>::parse(item));
    return out;
}

int run_curve(const CurveArgs& a) {
    const auto m = load_model(a.model);
    const auto grid = a.grid.empty() ? effico::default_variance_grid(m) : parse_grid(a.grid);
    effico::StochvolOptions opt;
    opt.threads = a.threads;
    opt.nodes = a.nodes;
    const auto csv = effico::curve_csv(effico::variance_curve(m, grid, opt));
    if (a.out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(a.out, std::ios::binary);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + a.out + "'");
        f << csv;
    }
    return 0;
}

struct GapArgs {
    std::string model, target = "stock";
    std::optional<double> variance;
};

int run_gap(const GapArgs& a) {
    const auto m = load_model(a.model);
    const auto mm = effico::targets_with_moments(m.forward(), a.variance.value_or(m.variance()));
    std::optional<effico::TargetDistribution> target;
    if (a.target == "stock") target.emplace(effico::MixtureStock{m});
    else if (a.target == "normal") target.emplace(mm.normal);
    else if (a.target == "lognormal") target.emplace(mm.lognormal);
    else throw Error(ErrorCode::InvalidArgument, "target must be stock, normal or lognormal");
    const auto r = effico::superhedge_cost_distribution(m, *target);
    Json j{{"model", effico::model_to_json(m)}, {"target", target->name()}};
    j["value"] = effico::decimal_json(r.value);
    j["q_star"] = effico::decimal_json(r.q_star);
    j["s0"] = m.s0;
    j["gap"] = effico::decimal_json(m.s0 - r.value);
    j["endpoint_warning"] = r.endpoint_warning;
    j["evaluations"] = r.evaluations;
    emit_json(j);
    return 0;
}

// -------------------------------------------------------------- transform

struct TransformArgs {
    std::string kernel, dist;
    bool randomized = false;
};

int run_transform(const TransformArgs& a, std::uint64_t seed) {
    using S = Rational;
    auto parse_list = [](const std::string& text) {
        std::vector<S> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(effico::ScalarTraits<S>::parse(item));
        return out;
    };
    const auto kernel = parse_list(a.kernel);
    effico::Randomizer<S> rnd = effico::MidpointTransform{};
    if (a.randomized) {
        std::mt19937_64 rng(seed);
        rnd = effico::uniform_draws<S>(kernel.size(), rng);
    }
    const auto t = effico::distributional_transform(kernel, rnd);
    Json j{{"kernel", effico::vector_to_json(kernel)}, {"u", effico::vector_to_json(t.u, true)},
           {"randomized", t.randomized}};
    if (a.randomized) j["seed"] = seed;
    if (!a.dist.empty()) {
        effico::DiscreteDistribution<S> d(parse_list(a.dist));
        j["Z"] = effico::vector_to_json(effico::cost_efficient_candidate(d, kernel, rnd));
    }
    emit_json(j);
    return 0;
}

// ----------------------------------------------------------------- verify

int run_verify(const std::string& suite, std::uint64_t seed) {
    const auto results = effico::run_suite(suite, seed);
    std::size_t failed = 0;
    for (const auto& r : results) {
        std::cout << effico::format_check(r) << '\n';
        failed += r.pass ? 0 : 1;
    }
    std::cout << results.size() << " checks, " << results.size() - failed << " passed, " << failed << " failed\n";
    return failed == 0 ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cost-efficient payoffs and distributional superhedging costs"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 20240607;
    app.add_option("--seed", seed, "seed for randomized transforms and property checks");

    ThreeStateArgs ts;
    auto* c_ts = app.add_subcommand("three-state", "closed-form or generic solution of the 3-state market");
    c_ts->add_option("--x", ts.x, "smallest value (integer, decimal or p/q)")->required();
    c_ts->add_option("--y", ts.y, "middle value")->required();
    c_ts->add_option("--z", ts.z, "largest value")->required();
    auto* ts_problem = c_ts->add_option("--problem", ts.problem, "maximin | minimax | cvx-minimax | cvx-maximin");
    c_ts->add_flag("--all", ts.all, "all four problems with a summary (default)")->excludes(ts_problem);
    c_ts->add_option("--method", ts.method, "closed-form | generic")->check(CLI::IsMember({"closed-form", "generic"}));
    c_ts->add_flag("--decimal", ts.decimal, "15-digit decimals instead of fractions");
    c_ts->add_option("--format", ts.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    SolveArgs sv;
    auto* c_solve = app.add_subcommand("solve", "generic solver for an equiprobable n-state market");
    c_solve->add_option("--market", sv.market, "market JSON file")->required()->check(CLI::ExistingFile);
    c_solve->add_option("--dist", sv.dist, "distribution JSON file")->required()->check(CLI::ExistingFile);
    auto* sv_problem = c_solve->add_option("--problem", sv.problem, "maximin | minimax | cvx-minimax | cvx-maximin");
    c_solve->add_flag("--all", sv.all, "all four problems (default)")->excludes(sv_problem);
    c_solve->add_flag("--exact", sv.exact, "rational arithmetic");
    c_solve->add_flag("--decimal", sv.decimal, "decimals even in exact mode");
    c_solve->add_option("--format", sv.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    UtilityArgs ut;
    auto* c_ut = app.add_subcommand("utility", "optimal terminal wealth in the 3-state market");
    c_ut->add_option("--kind", ut.kind, "log | exp | power | square");
    c_ut->add_option("--alpha", ut.alpha, "power exponent, alpha < 1, alpha != 0");
    c_ut->add_option("--x0", ut.x0, "initial wealth");
    c_ut->add_option("--input", ut.input, "JSON with kind, alpha, x0")->check(CLI::ExistingFile);
    c_ut->add_option("--method", ut.method, "foc | trinomial")->check(CLI::IsMember({"foc", "trinomial"}));
    c_ut->add_option("--step", ut.step, "grid step for --kind square");
    c_ut->add_option("--theta-range", ut.theta_range, "nonnegative | alternative (for --kind square)");

    CurveArgs cv;
    auto* c_curve = app.add_subcommand("stochvol-curve", "cost of moment-matched targets along a variance grid (CSV)");
    c_curve->add_option("--model", cv.model, "model JSON file (defaults when absent)")->check(CLI::ExistingFile);
    c_curve->add_option("--grid", cv.grid, "comma-separated increasing variances");
    c_curve->add_option("--out", cv.out, "write the CSV here instead of stdout");
    c_curve->add_option("--threads", cv.threads, "worker threads (0: EFFICO_THREADS or hardware)");
    c_curve->add_option("--nodes", cv.nodes, "quadrature nodes per regime");

    GapArgs gp;
    auto* c_gap = app.add_subcommand("stochvol-gap", "sup over kernels of the cost of a target law");
    c_gap->add_option("--model", gp.model, "model JSON file (defaults when absent)")->check(CLI::ExistingFile);
    c_gap->add_option("--target", gp.target, "stock | normal | lognormal")
        ->check(CLI::IsMember({"stock", "normal", "lognormal"}));
    c_gap->add_option("--variance", gp.variance, "variance of a normal/lognormal target (default: that of S_T)");

    TransformArgs tf;
    auto* c_tf = app.add_subcommand("transform", "distributional transform of a kernel and the matching payoff");
    c_tf->add_option("--kernel", tf.kernel, "comma-separated kernel values")->required();
    c_tf->add_option("--dist", tf.dist, "comma-separated atoms of the target law");
    c_tf->add_flag("--randomized", tf.randomized, "uniform draws on ties, seeded by --seed");

    std::string suite = "all";
    auto* c_verify = app.add_subcommand("verify", "run the built-in oracle suites");
    c_verify->add_option("--suite", suite, "market | distribution | lp | efficiency | utility | stochvol | all | acceptance")
        ->check(CLI::IsMember(effico::suite_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*c_ts) return run_three_state(ts);
        if (*c_solve) return run_solve(sv);
        if (*c_ut) return run_utility(ut);
        if (*c_curve) return run_curve(cv);
        if (*c_gap) return run_gap(gp);
        if (*c_tf) return run_transform(tf, seed);
        if (*c_verify) return run_verify(suite, seed);
    } catch (const Error& e) {
        std::cerr << "effico: " << e.what() << '\n';
        return effico::is_input_error(e.code()) ? kExitInput : kExitNumerical;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "effico: malformed JSON input: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "effico: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitInput;
}
