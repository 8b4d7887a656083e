#include <gtest/gtest.h>

#include <cmath>

#include "saddle/errors.hpp"
#include "saddle/experiments.hpp"
#include "saddle/solver.hpp"

using namespace saddle;

TEST(InitialGuess, Formula) {
    const Grid g = build_grid(8, 0.5, 1);
    const Profile u = initial_guess(g, 1.0);
    for (std::size_t x = 0; x < g.n_inner; ++x) {
        const DRPoint p = g.nodes[x];
        const double cut = std::clamp((8 - norm(p)) / 2, 0.0, 1.0);
        EXPECT_DOUBLE_EQ(u(long(x)), std::min(1.0, cone_distance(p)) * cut);
    }
    const long far = g.index_of(11, 1);  // (5.75, 0.75), cone distance > 3.5, |x| < 6
    ASSERT_GE(far, 0);
    EXPECT_DOUBLE_EQ(u(far), 1.0);
    EXPECT_THROW(initial_guess(g, 0), PreconditionError);
}

TEST(Solver, ZeroPotentialFromZero) {
    const Grid g = build_grid(4, 0.5, 1);
    const KernelTable t = build_kernel_table(g, make_fractional(1, 0.5));
    const DiscreteOperator op = assemble(t);
    const SolveResult r = minimize(g, t, op, zero_potential(), Profile::Zero(long(g.n_inner)), SolverConfig{});
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.energy.total, 0);
    EXPECT_EQ(r.u.cwiseAbs().maxCoeff(), 0);
}

TEST(Solver, AllenCahnSmallRun) {
    const Grid g = build_grid(10, 0.5, 1);
    const KernelTable t = build_kernel_table(g, make_fractional(1, 0.5, standard_c_norm(1, 0.5)));
    const DiscreteOperator op = assemble(t);
    const SolveResult r = minimize(g, t, op, allen_cahn(), initial_guess(g, 1), SolverConfig{});
    ASSERT_TRUE(r.converged);
    for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i], r.trace[i - 1]);
    EXPECT_GE(r.u.minCoeff(), 0);
    EXPECT_LE(r.u.maxCoeff(), 1);
    EXPECT_GT(r.u.maxCoeff(), 0.5);
    const Profile zero = Profile::Zero(long(g.n_inner));
    EXPECT_LT(total_energy(g, t, r.u, allen_cahn(), 5).total, total_energy(g, t, zero, allen_cahn(), 5).total);
}

TEST(Solver, ContinuationStabilizes) {
    SolverConfig c;
    c.h = 0.25;
    c.R_schedule = {8, 12, 16, 20};
    const ContinuationResult cr = continuation(c, make_fractional(1, 0.5, standard_c_norm(1, 0.5)), allen_cahn());
    ASSERT_EQ(cr.stages.size(), 4u);
    EXPECT_LT(cr.stages[2].sup_diff, cr.stages[1].sup_diff);
    EXPECT_TRUE(cr.stable);
    // E(u_R, B_4) still moves by O(R^{-2 gamma}) as the far field fills in; the increments shrink
    const double d1 = cr.stages[2].energy_core - cr.stages[1].energy_core;
    const double d2 = cr.stages[3].energy_core - cr.stages[2].energy_core;
    EXPECT_LT(std::abs(d2), std::abs(d1));
    EXPECT_NEAR(cr.stages[3].energy_core, cr.stages[2].energy_core, 0.03 * cr.stages[2].energy_core);
}

TEST(Scaling, TheoryTable) {
    EXPECT_DOUBLE_EQ(theoretical_exponent(1, 0.25), 1.5);
    EXPECT_DOUBLE_EQ(theoretical_exponent(1, 0.75), 1.0);
    EXPECT_DOUBLE_EQ(theoretical_exponent(2, 0.5), 3.0);
    EXPECT_EQ(scaling_regime(0.5), "S^(2m-1) log S");
}

TEST(Scaling, FitLineExact) {
    const LineFit f = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
    EXPECT_NEAR(f.slope, 2, 1e-14);
    EXPECT_NEAR(f.intercept, 1, 1e-14);
    EXPECT_NEAR(f.rms, 0, 1e-14);
}

TEST(Scaling, ZeroProfileHasSlopeTwoM) {
    const Grid g = build_grid(24, 0.25, 1);
    TableOptions o;
    o.memory_cap_bytes = 4e9;
    const KernelTable t = build_kernel_table(g, make_fractional(1, 0.5), o);
    const ScalingReport r =
        energy_scan(g, t, Profile::Zero(long(g.n_inner)), allen_cahn(), {4, 6, 8, 10, 12, 16, 20}, 0.5);
    EXPECT_NEAR(r.slope, 2.0, 0.05);
    EXPECT_THROW(energy_scan(g, t, Profile::Zero(long(g.n_inner)), allen_cahn(), {4, 8, 22}, 0.5),
                 PreconditionError);
}

TEST(Competitor, CutoffProfiles) {
    EXPECT_DOUBLE_EQ(phi_S(11.5, 10), 0);
    EXPECT_DOUBLE_EQ(phi_S(10, 10), -1);
    EXPECT_DOUBLE_EQ(phi_S(13, 10), 1);
    EXPECT_NEAR(d_S({3, 1}, 10, 1), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(d_S({3, 1}, 10, 100), 11 - std::sqrt(10.0), 1e-14);
    EXPECT_THROW(d_S({12, 1}, 10, 1), DomainError);
    // inside B_S with mu dist = 2
    const DRPoint p{3, 3 - 2 * std::sqrt(2.0)};
    EXPECT_DOUBLE_EQ(psi_S(p, 8, 1), -1);
}

TEST(Competitor, RequiresRoom) {
    const Grid g = build_grid(10, 0.5, 1);
    const KernelTable t = build_kernel_table(g, make_fractional(1, 0.5));
    EXPECT_THROW(build_competitor(g, t, Profile::Zero(long(g.n_inner)), allen_cahn(), 6, 1), PreconditionError);
}

TEST(OmegaS, AnnulusAndSlope) {
    for (double S : {4.0, 8.0}) {
        const double annulus = measure_omega_S(S, 1e9, 0.25, 1);
        EXPECT_NEAR(annulus, 4 * M_PI * (S + 1), 0.02 * 4 * M_PI * (S + 1));
    }
    EXPECT_LT(measure_omega_S(8, 10, 0.25, 1), measure_omega_S(8, 1, 0.25, 1));
    std::vector<double> x, y;
    for (double S : {4.0, 8.0, 16.0, 32.0}) {
        x.push_back(std::log(S));
        y.push_back(std::log(measure_omega_S(S, 1, 0.25, 1)));
    }
    EXPECT_NEAR(fit_line(x, y).slope, 1.0, 0.15);
}
