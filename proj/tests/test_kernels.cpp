#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "oracle.hpp"
#include "saddle/errors.hpp"
#include "saddle/kernels.hpp"

using namespace saddle;

TEST(Kernel, FractionalPowerLaw) {
    const RadialKernel k = make_fractional(1, 0.5);
    EXPECT_NEAR(k.eval(3.0), 1.0 / 27, 1e-15);
    for (double g : {0.1, 0.5, 0.9}) EXPECT_DOUBLE_EQ(make_fractional(2, g, 0.7).eval(1.0), 0.7);
}

TEST(Kernel, PiecewiseBranches) {
    const RadialKernel k = make_piecewise(1, 0.5);
    EXPECT_DOUBLE_EQ(k.eval(1.0), 1.0);
    EXPECT_NEAR(k.eval(0.5), std::pow(0.5, -3.0), 1e-12);
    EXPECT_NEAR(k.eval(2.0), 1.0 / (10 * 8.0 - 9), 1e-15);
}

TEST(Kernel, Ellipticity) {
    std::vector<double> radii;
    for (int i = 0; i <= 60; ++i) radii.push_back(std::pow(10.0, -3 + 0.1 * i));
    EXPECT_TRUE(ellipticity_holds(make_fractional(1, 0.3), radii));
    // 1/(10 r^3 - 9) lies between r^{-3}/10 and r^{-3}
    EXPECT_TRUE(ellipticity_holds(make_piecewise(1, 0.5), radii));
    RadialKernel tight = make_piecewise(1, 0.5);
    tight.lambda = 0.5;
    EXPECT_FALSE(ellipticity_holds(tight, radii));
}

TEST(Kernel, RejectsBadParameters) {
    EXPECT_THROW(make_fractional(1, 1.2), DomainError);
    EXPECT_THROW(make_fractional(0, 0.5), DomainError);
    EXPECT_THROW(make_fractional(1, 0.5).eval(0.0), DomainError);
    EXPECT_THROW(kernel_family_from_string("cauchy"), DomainError);
}

TEST(Kernel, TabulatedInterpolatesAndRefusesToExtrapolateBelow) {
    const std::string path = ::testing::TempDir() + "tab.csv";
    {
        std::ofstream f(path);
        f << "r,K\n";
        for (double r : {0.5, 1.0, 2.0, 4.0}) f << r << ',' << std::pow(r, -3.0) << '\n';
    }
    const RadialKernel k = load_tabulated(path, 1, 0.5, 1.0, 1.0, 1.0);
    EXPECT_NEAR(k.eval(1.5), std::pow(1.5, -3.0), 1e-12);  // log-log linear reproduces power laws
    EXPECT_THROW(k.eval(0.25), DomainError);
}

TEST(SqrtConvexity, FractionalMidpointExample) {
    const auto h = [](double t) { return std::pow(t, -1.5); };
    EXPECT_NEAR(h(1) + h(3) - 2 * h(2), 0.48534, 1e-5);
    const ConvexityReport r = check_sqrt_convexity(make_fractional(1, 0.5), default_tau_grid());
    EXPECT_EQ(r.verdict, Convexity::strictly_convex);
    EXPECT_TRUE(r.witnesses.empty());
}

TEST(SqrtConvexity, PiecewiseFailsWithWitnessAcrossOne) {
    const RadialKernel k = make_piecewise(1, 0.5);
    const auto h = [&](double t) { return k.eval(std::sqrt(t)); };
    EXPECT_NEAR(h(0.81), 1.3717, 1e-4);
    EXPECT_NEAR(h(1.21), 0.23202, 1e-5);
    EXPECT_NEAR(2 * h(1.01), 1.7386, 1e-4);
    const ConvexityReport r = check_sqrt_convexity(k, default_tau_grid());
    EXPECT_EQ(r.verdict, Convexity::fails);
    ASSERT_FALSE(r.witnesses.empty());
    EXPECT_LT(r.witnesses.front().tau1, 1.0);
    EXPECT_GT(r.witnesses.front().tau2, 1.0);
    EXPECT_TRUE(r.concavity_intervals.empty());
}

TEST(SqrtConvexity, ConcaveFunctionGetsAnInterval) {
    std::vector<double> tau;
    for (int i = 1; i <= 200; ++i) tau.push_back(0.01 * i);
    const ConvexityReport r = check_sqrt_convexity([](double t) { return std::exp(-t * t); }, tau);
    EXPECT_EQ(r.verdict, Convexity::fails);
    EXPECT_FALSE(r.concavity_intervals.empty());
    EXPECT_EQ(check_sqrt_convexity([](double t) { return 3 * t + 1; }, tau).verdict, Convexity::convex_nonstrict);
}

TEST(Abcd, CoefficientExample) {
    const Abcd c = abcd_coefficients(1, -1, 2, 1, 3, 1);
    EXPECT_DOUBLE_EQ(c.A, 5);
    EXPECT_DOUBLE_EQ(c.B, -1);
    EXPECT_DOUBLE_EQ(c.C, 1);
    EXPECT_DOUBLE_EQ(c.D, -5);
    const AbcdReport r = abcd_inequalities(c.A, c.B, c.C, c.D);
    EXPECT_TRUE(r.dominance);
    EXPECT_TRUE(r.sum_inequality);
    EXPECT_THROW(abcd_coefficients(0.5, 1, 2, 1, 3, 1), PreconditionError);
}

TEST(ConvexQuad, Examples) {
    const auto sq = [](double x) { return x * x; };
    EXPECT_TRUE(convex_quad_oracle(sq, 4, 3, 3, 2));
    EXPECT_TRUE(convex_quad_oracle(sq, 4, 3, 3, 4));
    EXPECT_THROW(convex_quad_oracle(sq, 2, 3, 3, 2), PreconditionError);
}

TEST(StandardConstant, KnownValues) {
    // n = 2, gamma = 1/2: c = 1/(2 pi)
    EXPECT_NEAR(standard_c_norm(1, 0.5), 1 / (2 * M_PI), 1e-14);
    // n = 4, gamma = 1/2: Gamma(5/2) / (pi^2 Gamma(1/2)) = 3 / (4 pi^2)
    EXPECT_NEAR(standard_c_norm(2, 0.5), 3 / (4 * M_PI * M_PI), 1e-14);
}
