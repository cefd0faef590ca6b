// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(EFFICO_CLI_PATH) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(EFFICO_SAMPLES_DIR) + "/" + name; }

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, ThreeStateMaximinExact) {
    auto r = run("three-state --x 1 --y 2 --z 3 --problem maximin");
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = parse(r);
    EXPECT_EQ(j["value"], "9/5");
    EXPECT_EQ(j["optimizers"].size(), 2u);
}

TEST(Cli, ThreeStateAllSummary) {
    auto r = run("three-state --x 1 --y 2 --z 4 --all");
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = parse(r);
    EXPECT_TRUE(j["perfectly_cost_efficient"].get<bool>());
    for (const char* p : {"maximin", "minimax", "cvx-minimax", "cvx-maximin"}) EXPECT_EQ(j["values"][p], "2") << p;
}

TEST(Cli, ThreeStateGenericMatchesClosedForm) {
    auto a = parse(run("three-state --x 1 --y 2 --z 5 --problem cvx-minimax"));
    auto b = parse(run("three-state --x 1 --y 2 --z 5 --problem cvx-minimax --method generic"));
    EXPECT_EQ(a["value"], "9/4");
    EXPECT_EQ(a["value"], b["value"]);
}

TEST(Cli, DecimalAndCsvOutput) {
    auto r = run("three-state --x 1 --y 2 --z 3 --problem maximin --decimal");
    EXPECT_EQ(parse(r)["value"].dump(), "1.8");
    auto c = run("solve --market " + sample("market.json") + " --dist " + sample("dist.json") +
                 " --problem cvx-minimax --format csv");
    ASSERT_EQ(c.code, 0) << c.out;
    EXPECT_EQ(c.out.rfind("problem,value,payoff,kernel_lo,kernel_hi,u_lo,u_hi,boundary\n", 0), 0u);
    EXPECT_NE(c.out.find("cvx-minimax,1.8,"), std::string::npos);
}

TEST(Cli, SolveExactFourStates) {
    auto r = run("solve --market " + sample("market4.json") + " --dist " + sample("dist4.json") +
                 " --problem cvx-minimax --exact");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(parse(r)["value"], "8/5");
}

TEST(Cli, LogUtility) {
    auto r = run("utility --kind log --x0 1");
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = parse(r);
    EXPECT_NEAR(j["payoff"][0].get<double>(), 1.5, 1e-12);
    EXPECT_NEAR(j["payoff"][1].get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(j["payoff"][2].get<double>(), 0.75, 1e-12);
    auto f = run("utility --input " + sample("utility.json"));
    EXPECT_EQ(f.code, 0) << f.out;
}

TEST(Cli, StochvolCommands) {
    auto g = run("stochvol-gap --model " + sample("model.json"));
    ASSERT_EQ(g.code, 0) << g.out;
    EXPECT_NEAR(parse(g)["value"].get<double>(), 0.9877217197, 1e-8);
    auto c = run("stochvol-curve --grid 0.01,0.02 --threads 1");
    ASSERT_EQ(c.code, 0) << c.out;
    EXPECT_EQ(c.out.rfind("variance,cost_normal,cost_lognormal\n", 0), 0u);
}

TEST(Cli, Transform) {
    auto r = run("transform --kernel 3,1,1 --dist 1,2,4 --randomized --seed 7");
    EXPECT_EQ(r.code, 0) << r.out;
    auto s = run("--seed 7 transform --kernel 3,1,1 --dist 1,2,4 --randomized");
    EXPECT_EQ(r.out, s.out);
}

TEST(Cli, ExitCodes) {
    auto order = run("three-state --x 1 --y 2 --z 2");
    EXPECT_EQ(order.code, 2);
    EXPECT_NE(order.out.find("OrderingViolated"), std::string::npos);
    EXPECT_EQ(order.out.find("OrderingViolated: OrderingViolated"), std::string::npos);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("bogus").code, 2);
    EXPECT_EQ(run("three-state --x 1 --y 2").code, 2);
    EXPECT_EQ(run("utility --kind power --alpha 2 --x0 1").code, 2);
    EXPECT_EQ(run("solve --market /nonexistent.json --dist " + sample("dist.json")).code, 2);
    EXPECT_EQ(run("verify --suite nosuch").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, VerifySuites) {
    for (const char* suite : {"market", "distribution", "lp", "efficiency", "utility"}) {
        auto r = run(std::string("verify --suite ") + suite);
        EXPECT_EQ(r.code, 0) << r.out;
        EXPECT_NE(r.out.find("0 failed"), std::string::npos) << r.out;
    }
}
