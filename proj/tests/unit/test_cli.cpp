#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = rbinom::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST(Cli, RiskCurveSchemaAndProperty) {
    const auto r = run({"risk-curve", "--n", "1", "--a", "1", "--b", "1", "--p-bar", "0.1", "--grid", "64"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 65u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"p", "risk_unrestricted", "risk_truncated", "thm32_bound"}));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_LT(std::stod(rows[i][2]), std::stod(rows[i][1]));
    }
}

TEST(Cli, BoundColumnLargeNearUpperEnd) {
    const auto r = run({"risk-curve", "--n", "9", "--p-bar", "0.4", "--grid", "32"});
    ASSERT_EQ(r.code, 0);
    const auto rows = parse_csv(r.out);
    ASSERT_FALSE(rows.back()[3].empty());
    EXPECT_GT(std::stod(rows.back()[3]), 0.0);
}

TEST(Cli, Deterministic) {
    const auto dir = std::filesystem::temp_directory_path() / "rbinom_cli_test";
    std::filesystem::create_directories(dir);
    const std::vector<std::string> base{"risk-curve", "--n", "3", "--p-bar", "0.3", "--grid", "16", "--mc-samples",
                                        "2000", "--seed", "5"};
    auto a = base;
    a.insert(a.end(), {"--out", (dir / "a.csv").string()});
    auto b = base;
    b.insert(b.end(), {"--out", (dir / "b.csv").string()});
    ASSERT_EQ(run(a).code, 0);
    ASSERT_EQ(run(b).code, 0);
    EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
    EXPECT_NE(slurp(dir / "a.csv").find("mc_std_error"), std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST(Cli, SeventeenDigits) {
    const auto r = run({"estimate", "--n", "1", "--p-bar", "0.5"});
    ASSERT_EQ(r.code, 0);
    const auto rows = parse_csv(r.out);
    EXPECT_EQ(rows[1][1], "0.33333333333333331");
}

TEST(Cli, Threshold) {
    const auto r = run({"threshold", "--a", "1", "--grid", "50"});
    ASSERT_EQ(r.code, 0);
    const auto pos = r.out.find("# root: ");
    ASSERT_NE(pos, std::string::npos);
    const double root = std::stod(r.out.substr(pos + 8));
    EXPECT_NEAR(root, 0.725, 0.005);
    for (const auto& row : parse_csv(r.out)) {
        if (row[0] == "p_bar") continue;
        const double p_bar = std::stod(row[0]);
        const double v = std::stod(row[1]);
        if (p_bar < root) EXPECT_LT(v, 0.0);
        if (p_bar > root) EXPECT_GT(v, 0.0);
    }
    EXPECT_EQ(run({"threshold", "--n", "2"}).code, 1);
}

TEST(Cli, Dominance) {
    const auto good = run({"dominance", "--n", "5", "--a", "1", "--b", "1", "--p-lo", "0.001", "--p-bar", "0.01"});
    ASSERT_EQ(good.code, 0) << good.err;
    EXPECT_NE(good.out.find("verdict: dominates"), std::string::npos);
    EXPECT_NE(good.out.find("interval_upper_cap: true"), std::string::npos);
    EXPECT_NE(good.out.find("interval_log_balance: true"), std::string::npos);

    const auto bad = run({"dominance", "--n", "2", "--p-bar", "0.8"});
    EXPECT_EQ(bad.code, 0);
    EXPECT_NE(bad.out.find("verdict: dominated_somewhere"), std::string::npos);

    const auto malformed = run({"dominance", "--p-lo", "0.5", "--p-bar", "0.4"});
    EXPECT_EQ(malformed.code, 1);
    EXPECT_FALSE(malformed.err.empty());
}

TEST(Cli, ExitStatuses) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"nope"}).code, 1);
    EXPECT_EQ(run({"estimate", "--n", "0"}).code, 1);
    EXPECT_EQ(run({"estimate", "--p-lo", "0.2"}).code, 1);
    EXPECT_EQ(run({"estimate", "--n", "x"}).code, 1);
    EXPECT_EQ(run({"estimate", "--p-bar", "0.9999999999999"}).code, 2);
    EXPECT_EQ(run({"estimate", "--help"}).code, 0);
    EXPECT_EQ(run({"estimate", "--out", "/nonexistent-dir/x.csv"}).code, 1);
}

TEST(Cli, PredictiveAndPoisson) {
    const auto p = run({"predictive", "--n", "1", "--l", "1", "--x", "1"});
    ASSERT_EQ(p.code, 0);
    const auto rows = parse_csv(p.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(std::stod(rows[2][2]), 2.0 / 3.0, 1e-15);

    const auto q = run({"poisson-limit", "--lambda-bar", "1", "--lambda", "0.5", "--x", "2"});
    ASSERT_EQ(q.code, 0);
    EXPECT_NE(q.out.find("# monotone: true"), std::string::npos);
    EXPECT_EQ(parse_csv(q.out).size(), 5u);
    EXPECT_EQ(run({"poisson-limit", "--lambda", "2", "--lambda-bar", "1"}).code, 1);
}
