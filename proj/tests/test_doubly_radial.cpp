#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "saddle/doubly_radial.hpp"
#include "saddle/errors.hpp"
#include "saddle/quadrature.hpp"

using namespace saddle;

TEST(GaussJacobi, MassAndMoments) {
    for (auto [a, b] : {std::pair{0.0, 0.0}, {-0.5, -0.5}, {0.5, 0.5}, {1.5, -0.25}}) {
        const QuadratureRule r = gauss_jacobi(24, a, b);
        double mass = 0, x2 = 0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            EXPECT_GT(r.weights[i], 0);
            mass += r.weights[i];
            x2 += r.weights[i] * r.nodes[i] * r.nodes[i];
        }
        EXPECT_NEAR(mass, std::pow(2.0, a + b + 1) * std::beta(a + 1, b + 1), 1e-12);
        EXPECT_NEAR(mass, jacobi_weight_mass(a, b), 1e-12);
        if (a == b) EXPECT_NEAR(x2, std::beta(1.5, a + 1), 1e-12);  // \int x^2 (1-x^2)^a
    }
}

TEST(GaussJacobi, SphereRuleWeight) {
    for (int m : {2, 3, 4}) {
        const QuadratureRule r = sphere_rule(m, 16);
        EXPECT_DOUBLE_EQ(r.alpha, 0.5 * (m - 3));
        double mass = 0;
        for (double w : r.weights) mass += w;
        // c_m times the mass is the area of S^{m-1}
        EXPECT_NEAR(c_m(m) * mass, sphere_area(m), 1e-12);
    }
}

TEST(Geometry, StarConeDistance) {
    EXPECT_DOUBLE_EQ(star({3, 1}).s, 1);
    EXPECT_DOUBLE_EQ(star({3, 1}).t, 3);
    EXPECT_EQ(classify({2, 2}), Region::cone);
    EXPECT_EQ(classify({3, 1}), Region::outer);
    EXPECT_NEAR(cone_distance({3, 1}), std::sqrt(2.0), 1e-15);
}

TEST(JKernel, FourTermSumsAtMOne) {
    const RadialKernel k = make_fractional(1, 0.5);
    const QuadratureRule none{};
    EXPECT_NEAR(j_kernel(k, {1, 0}, {2, 0}, none), 56.0 / 27, 1e-14);
    EXPECT_NEAR(j_kernel(k, {2, 1}, {3, 1}, none), 1.103846006623, 1e-12);
    const auto K = [&](double r) { return k.eval(r); };
    EXPECT_NEAR(j_kernel(k, {2, 1}, {1, 3}, none), oracle::j4(K, 2, 1, 1, 3), 1e-14);
    EXPECT_THROW(j_kernel(k, {2, 1}, {2, 1}, none), SingularityError);
}

TEST(JKernel, KbarAndDifferenceAtMOne) {
    const RadialKernel k = make_fractional(1, 0.5);
    const RuleLadder ladder = RuleLadder::make(1);
    EXPECT_NEAR(kbar(k, {1, 0}, {2, 0}, ladder), 56.0 / 108, 1e-14);
    EXPECT_NEAR(kbar(k, {2, 1}, {1, 3}, ladder), 0.133043 / 4, 1e-6);
    EXPECT_NEAR(kernel_difference(k, {2, 1}, {3, 1}, ladder), 0.2427004658, 1e-9);
    EXPECT_LT(kernel_difference(k, {2, 1}, {30, 1}, ladder), kernel_difference(k, {2, 1}, {3, 1}, ladder));
    EXPECT_NEAR(kbar(k, star({2, 1}), {3, 1}, ladder), kbar(k, {2, 1}, star({3, 1}), ladder), 1e-15);
}

TEST(JKernel, QuadratureAgainstTorusOracleAtMTwo) {
    const RadialKernel k = make_fractional(2, 0.5);
    const auto K = [&](double r) { return k.eval(r); };
    const double ref = oracle::j_torus(K, 1, 0.5, 2, 0.8);
    EXPECT_NEAR(ref, 2.34166226072985, 1e-12);
    EXPECT_NEAR(j_kernel(k, {1, 0.5}, {2, 0.8}, sphere_rule(2, 64)), ref, 1e-6 * ref);
    EXPECT_NEAR(j_kernel_appell(k, {1, 0.5}, {2, 0.8}), ref, 1e-12 * ref);
    const RadialKernel g = make_gaussian(2);
    const auto G = [&](double r) { return g.eval(r); };
    EXPECT_NEAR(j_kernel(g, {1.5, 0.2}, {0.7, 1.1}, sphere_rule(2, 64)), oracle::j_torus(G, 1.5, 0.2, 0.7, 1.1),
                1e-10);
}

TEST(Appell, PrefactorForms) {
    for (int m : {2, 3, 4})
        for (double g : {0.25, 0.5, 0.75})
            EXPECT_NEAR(appell_prefactor(m, g, 1.3), appell_prefactor_integral_form(m, g, 1.3),
                        1e-12 * appell_prefactor(m, g, 1.3));
    // F2 with one variable at 0 is Gauss 2F1; 2F1(1,1;2;x) = -log(1-x)/x
    EXPECT_NEAR(appell_f2(1, 1, 0.7, 2, 1.3, 0.5, 0.0), -std::log(0.5) / 0.5, 1e-13);
}

TEST(ZeroOrder, ExactAtHalf) {
    const RadialKernel k = make_fractional(1, 0.5);
    EXPECT_NEAR(oracle::z_exact_half(3, 1), std::sqrt(10.0) / 2, 1e-14);
    EXPECT_NEAR(zero_order_ray(k, {3, 1}), std::sqrt(10.0) / 2, 1e-6);
    const RuleLadder ladder = RuleLadder::make(1);
    const double z = zero_order_coefficient(k, {3, 1}, 200, ladder);
    EXPECT_NEAR(z, std::sqrt(10.0) / 2, 1e-3);
    EXPECT_GT(zero_order_coefficient(k, {2.5, 2.4}, 200, ladder), z);
    EXPECT_NEAR(zero_order_coefficient(k, {3, 1}, 50, ladder), zero_order_coefficient(k, {3, 1}, 100, ladder),
                0.01 * z);
    EXPECT_THROW(zero_order_coefficient(k, {2, 2}, 50, ladder), DomainError);
}

TEST(ZeroOrder, ComparableToDistancePower) {
    const RadialKernel k = make_fractional(1, 0.5);
    for (DRPoint p : {DRPoint{3, 1}, DRPoint{5, 4.5}, DRPoint{10, 9.9}, DRPoint{7, 0.5}}) {
        const double ratio = zero_order_ray(k, p) * std::pow(cone_distance(p), 1.0);
        EXPECT_GT(ratio, 0.5);
        EXPECT_LT(ratio, 3.0);
    }
}

TEST(Inequality, FractionalMOneHasNoViolations) {
    const InequalityReport r = verify_kernel_inequality(make_fractional(1, 0.5), 7, 10000, RuleLadder::make(1));
    EXPECT_EQ(r.violations, 0);
    EXPECT_GT(r.min_gap, 0);
}

TEST(Inequality, FractionalMTwoSmallSample) {
    const InequalityReport r =
        verify_kernel_inequality(make_fractional(2, 0.25), 3, 1000, RuleLadder::make(2, 32, 256));
    EXPECT_EQ(r.violations, 0);
}

TEST(Inequality, ParallelMatchesSerial) {
    const RadialKernel k = make_fractional(2, 0.5);
    const RuleLadder ladder = RuleLadder::make(2);
    const InequalityReport a = verify_kernel_inequality(k, 11, 400, ladder);
    const InequalityReport b = verify_kernel_inequality_serial(k, 11, 400, ladder);
    EXPECT_EQ(a.violations, b.violations);
    EXPECT_EQ(a.min_gap, b.min_gap);
    EXPECT_EQ(a.min_rel_gap, b.min_rel_gap);
}

TEST(Inequality, SamplerIsDeterministicAndInO) {
    const auto a = draw_outer_pairs(5, 200), b = draw_outer_pairs(5, 200);
    ASSERT_EQ(a.size(), 200u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].first.s, b[i].first.s);
        EXPECT_EQ(classify(a[i].first), Region::outer);
        EXPECT_EQ(classify(a[i].second), Region::outer);
    }
}
