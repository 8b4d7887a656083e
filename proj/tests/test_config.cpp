#include <gtest/gtest.h>

#include <fstream>

#include "saddle/config.hpp"
#include "saddle/errors.hpp"

using namespace saddle;

namespace {

std::string write_ini(const std::string& name, const std::string& body) {
    const std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << body;
    return path;
}

std::vector<std::string> violations_of(const std::string& path) {
    try {
        parse_config(path);
    } catch (const ConfigError& e) {
        return e.violations;
    }
    return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
    for (const auto& s : v)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST(Config, MinimalFileAccepted) {
    const RunConfig c = parse_config(write_ini("ok.ini", "[kernel]\ngamma = 0.5\nm = 1\n[grid]\nR = 16\nh = 0.25\n"));
    EXPECT_EQ(c.R, 16);
    EXPECT_EQ(c.family, "fractional");
    EXPECT_DOUBLE_EQ(resolve_c_norm(c), 1.0);
}

TEST(Config, GammaOutOfRange) {
    const auto v = violations_of(write_ini("g.ini", "[kernel]\ngamma = 1.2\n"));
    EXPECT_TRUE(mentions(v, "kernel.gamma"));
}

TEST(Config, SListTooCloseToR) {
    const auto v = violations_of(write_ini("s.ini", "[grid]\nR = 16\n[experiment]\nS_list = 4,8,14\n"));
    EXPECT_TRUE(mentions(v, "R > S + 4"));
    EXPECT_TRUE(mentions(v, "S=14"));
}

TEST(Config, ReportsEveryViolation) {
    const auto v = violations_of(write_ini("many.ini", "[kernel]\ngamma = 0\nm = 0\n[grid]\nh = 20\n[extra]\nfoo = 1\n"));
    EXPECT_TRUE(mentions(v, "kernel.gamma"));
    EXPECT_TRUE(mentions(v, "kernel.m"));
    EXPECT_TRUE(mentions(v, "grid.h"));
    EXPECT_TRUE(mentions(v, "extra.foo: unknown key"));
}

TEST(Config, UnparsableValueAndMissingFile) {
    EXPECT_TRUE(mentions(violations_of(write_ini("bad.ini", "[grid]\nR = sixteen\n")), "grid.R: cannot parse"));
    EXPECT_THROW(parse_config("/nonexistent/run.ini"), ConfigError);
}

TEST(Config, StandardNormAndCompetitorDefault) {
    RunConfig c;
    c.c_norm = "standard";
    EXPECT_NEAR(resolve_c_norm(c), 1 / (2 * M_PI), 1e-15);
    c.R = 16;
    EXPECT_EQ(default_competitor_S(c), 8);
    c.R = 10;
    EXPECT_EQ(default_competitor_S(c), 5);
    c.R = 9;
    EXPECT_EQ(default_competitor_S(c), 4);
}

TEST(Config, ListRoundTrip) {
    EXPECT_EQ(parse_list("4, 6,8"), (std::vector<double>{4, 6, 8}));
    EXPECT_EQ(parse_list(format_list({1.5, 2, 3})), (std::vector<double>{1.5, 2, 3}));
    EXPECT_THROW(parse_list("4,x"), std::invalid_argument);
}
