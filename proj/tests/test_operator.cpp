#include <gtest/gtest.h>

#include "oracle.hpp"
#include "saddle/errors.hpp"
#include "saddle/operator.hpp"

using namespace saddle;

namespace {

struct Assembled {
    Grid g;
    RadialKernel k;
    KernelTable t;
    DiscreteOperator op;
};

Assembled setup(double R, double h, double gamma = 0.5) {
    Assembled s{build_grid(R, h, 1), make_fractional(1, gamma), {}, {}};
    s.t = build_kernel_table(s.g, s.k);
    s.op = assemble(s.t);
    return s;
}

}  // namespace

TEST(Operator, ZeroAndConstantProfiles) {
    const Assembled s = setup(4, 0.5);
    const long n = long(s.op.size());
    EXPECT_EQ(apply(s.op, Eigen::VectorXd::Zero(n)).cwiseAbs().maxCoeff(), 0);
    const Eigen::VectorXd Lc = apply(s.op, Eigen::VectorXd::Constant(n, 0.7));
    for (long x = 0; x < n; ++x)
        EXPECT_NEAR(Lc(x), 0.7 * (2 * s.op.zero_order(x) + s.op.exterior(x)), 1e-10 * Lc(x));
}

TEST(Operator, RowSumsAreTwiceZeroOrder) {
    const Assembled s = setup(4, 0.5);
    const Eigen::VectorXd rs = s.op.row_sums();
    for (long x = 0; x < rs.size(); ++x) EXPECT_NEAR(rs(x), 2 * s.op.zero_order(x), 1e-9 * rs(x));
}

TEST(Operator, SignProbe) {
    const Assembled s = setup(4, 0.5);
    oracle::Rng rng(9);
    Eigen::VectorXd u(long(s.op.size()));
    for (long x = 0; x < u.size(); ++x) u(x) = rng.uniform(0.1, 1);
    u(5) = 0;
    EXPECT_LT(apply(s.op, u)(5), 0);
}

TEST(Operator, ParallelMatchesSerial) {
    const Assembled s = setup(4, 0.5);
    const DiscreteOperator b = assemble_serial(s.t);
    EXPECT_EQ(s.op.L, b.L);
    oracle::Rng rng(2);
    Eigen::VectorXd u(long(s.op.size()));
    for (long x = 0; x < u.size(); ++x) u(x) = rng.uniform();
    EXPECT_EQ(apply(s.op, u), apply_serial(s.op, u));
}

TEST(Operator, QuadraticEnergyMatchesTable) {
    const Assembled s = setup(5, 0.5);
    oracle::Rng rng(4);
    Eigen::VectorXd u(long(s.op.size()));
    for (long x = 0; x < u.size(); ++x) u(x) = rng.uniform();
    const double a = quadratic_energy(s.op, u, apply(s.op, u), allen_cahn());
    const double b = total_energy(s.g, s.t, u, allen_cahn(), s.g.R).total;
    EXPECT_NEAR(a, b, 1e-10 * b);
}

TEST(MaxPrinciple, EightByEight) {
    const Assembled s = setup(4, 0.5);
    const MaxPrincipleReport r = check_max_principle_structure(s.op, s.g, s.k, 1);
    EXPECT_TRUE(r.z_pattern);
    EXPECT_TRUE(r.row_sums_positive);
    EXPECT_TRUE(r.monotone_probe);
    EXPECT_EQ(r.probes_passed, 100);
    EXPECT_LE(r.max_row_sum_error, 1e-3);
}

TEST(MaxPrinciple, InjectedPositiveOffDiagonal) {
    Assembled s = setup(4, 0.5);
    s.op.L(0, 1) = 1.0;
    EXPECT_FALSE(check_max_principle_structure(s.op, s.g, s.k, 1, 5).z_pattern);
}

TEST(Residual, ExactLinearSolve) {
    const Assembled s = setup(4, 0.5);
    const long n = long(s.op.size());
    const Eigen::VectorXd u = s.op.L.partialPivLu().solve(Eigen::VectorXd::Ones(n));
    Potential one{[](double) { return 0.0; }, [](double) { return 1.0; }};
    const auto probes = probe_set(s.g, 2 * s.g.h);
    ASSERT_FALSE(probes.empty());
    EXPECT_LE(residual(s.op, u, one, probes).sup, 1e-10);
    EXPECT_THROW(residual(s.op, u, one, {}), PreconditionError);
}

TEST(Residual, ProbeSetExcludesConeAndBoundary) {
    const Assembled s = setup(6, 0.5);
    for (long x : probe_set(s.g, 1.0)) {
        EXPECT_GT(cone_distance(s.g.nodes[x]), 1.0);
        EXPECT_LT(norm(s.g.nodes[x]), 5.0);
    }
}
