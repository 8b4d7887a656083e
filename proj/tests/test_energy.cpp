#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "saddle/energy.hpp"
#include "saddle/errors.hpp"

using namespace saddle;

namespace {

TableOptions bare() {
    TableOptions o;
    o.local_correction = false;
    o.exterior_tail = false;
    return o;
}

Profile random_profile(const Grid& g, oracle::Rng& rng, double lo, double hi) {
    Profile u(long(g.n_inner));
    for (long x = 0; x < u.size(); ++x) u(x) = rng.uniform(lo, hi);
    return u;
}

}  // namespace

TEST(Grid, NodeSetAndWeights) {
    const Grid g = build_grid(4, 1, 1, 6);
    ASSERT_GT(g.n_inner, 0u);
    for (std::size_t x = 0; x < g.size(); ++x) {
        EXPECT_LT(g.nodes[x].t, g.nodes[x].s);
        EXPECT_DOUBLE_EQ(g.weight[x], 4.0);
        EXPECT_EQ(norm(g.nodes[x]) <= 4, x < g.n_inner);
    }
    EXPECT_DOUBLE_EQ(g.nodes[0].s, 1.5);
    EXPECT_DOUBLE_EQ(g.nodes[0].t, 0.5);
    EXPECT_NEAR(cell_weight(2, 0.25, {2.5, 0.5}), 4 * M_PI * M_PI * 2.5 * 0.5 * 0.0625, 1e-12);
    EXPECT_THROW(build_grid(1, 1, 1), PreconditionError);
}

TEST(Table, DifferencesPositiveOnTenByTen) {
    const Grid g = build_grid(5, 0.5, 1);
    const KernelTable t = build_kernel_table(g, make_fractional(1, 0.5));
    EXPECT_GT(t.min_difference(), 0);
}

TEST(Table, MemoryCap) {
    TableOptions o;
    o.memory_cap_bytes = 1e4;
    EXPECT_THROW(build_kernel_table(build_grid(5, 0.5, 1), make_fractional(1, 0.5), o), ResourceError);
}

TEST(Table, ParallelMatchesSerial) {
    const Grid g = build_grid(4, 0.5, 1);
    const RadialKernel k = make_fractional(1, 0.3);
    const KernelTable a = build_kernel_table(g, k), b = build_kernel_table_serial(g, k);
    EXPECT_EQ(a.W, b.W);
    EXPECT_EQ(a.P, b.P);
    EXPECT_EQ(a.exterior_grid, b.exterior_grid);
    EXPECT_EQ(a.exterior_tail, b.exterior_tail);
    EXPECT_EQ(a.zero_order, b.zero_order);
    oracle::Rng rng(1);
    const Profile u = random_profile(g, rng, 0, 1);
    EXPECT_DOUBLE_EQ(total_energy(g, a, u, allen_cahn(), 3).total, total_energy_serial(g, a, u, allen_cahn(), 3).total);
}

TEST(Energy, MatchesFullPlaneLatticeSum) {
    const Grid g = build_grid(4, 0.5, 1, 6);
    const RadialKernel k = make_fractional(1, 0.5);
    const KernelTable t = build_kernel_table(g, k, bare());
    const Potential G = allen_cahn();
    oracle::Rng rng(42);
    for (int trial = 0; trial < 3; ++trial) {
        const Profile u = random_profile(g, rng, -0.2, 1.1);
        std::vector<oracle::Cell> half;
        for (std::size_t x = 0; x < g.size(); ++x)
            half.push_back({g.nodes[x].s, g.nodes[x].t, x < g.n_inner ? u(long(x)) : 0.0});
        const auto cells = oracle::odd_extension(half);
        for (double S : {2.0, 3.0, 4.0}) {
            const double ref =
                oracle::lattice_energy(cells, g.h, S, [&](double r) { return k.eval(r); }, G.G);
            const double e = total_energy(g, t, u, G, S, ZeroOrderMode::lattice).total;
            EXPECT_NEAR(e, ref, 1e-10 * ref) << "S=" << S;
        }
    }
}

TEST(Energy, ZeroProfileIsPotentialOnly) {
    const Potential G = allen_cahn();
    double prev_err = 1e9;
    for (double h : {0.25, 0.125}) {
        const Grid g = build_grid(4, h, 1);
        const KernelTable t = build_kernel_table(g, make_fractional(1, 0.5));
        const EnergyBreakdown e = total_energy(g, t, Profile::Zero(long(g.n_inner)), G, 2);
        EXPECT_EQ(e.kinetic_in_in, 0);
        EXPECT_EQ(e.kinetic_in_out, 0);
        const double err = std::abs(e.total - M_PI);
        EXPECT_LT(err, 0.1 * M_PI);
        EXPECT_LT(err, prev_err);
        prev_err = err;
    }
}

TEST(Energy, MonotoneInTheDomain) {
    const Grid g = build_grid(6, 0.5, 1);
    const KernelTable t = build_kernel_table(g, make_fractional(1, 0.5));
    oracle::Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const Profile u = random_profile(g, rng, -1, 1);
        EXPECT_LE(total_energy(g, t, u, allen_cahn(), 3).total, total_energy(g, t, u, allen_cahn(), 5).total);
    }
}

TEST(Energy, RejectsBallBeyondGrid) {
    const Grid g = build_grid(4, 0.5, 1);
    const KernelTable t = build_kernel_table(g, make_fractional(1, 0.5));
    EXPECT_THROW(total_energy(g, t, Profile::Zero(long(g.n_inner)), allen_cahn(), 7), PreconditionError);
}

TEST(Interaction, SinglePair) {
    const double h = 1;
    const Grid g = custom_grid(1, h, 4, {{2, 1}, {3, 1}});
    const KernelTable t = build_kernel_table(g, make_fractional(1, 0.5), bare());
    Profile w(2);
    w << 1, 0;
    const double mu = 4 * h * h;
    const auto K = [](double r) { return std::pow(r, -3.0); };
    const double star = oracle::j4(K, 2, 1, 1, 3) / 4;
    EXPECT_NEAR(star, 0.133043 / 4, 1e-6);
    const double expect = 2 * 0.2427004658 * mu * mu + 4 * star * mu * mu;
    EXPECT_NEAR(interaction(t, w, {0}, {1}), expect, 1e-9 * expect);
    EXPECT_EQ(interaction(t, Profile::Zero(2), {0}, {1}), 0);
}

TEST(Truncation, NodeValues) {
    Profile u(3);
    u << -0.3, 1.5, 0.7;
    const Profile v = truncate_profile(u);
    EXPECT_DOUBLE_EQ(v(0), 0.3);
    EXPECT_DOUBLE_EQ(v(1), 1.0);
    EXPECT_DOUBLE_EQ(v(2), 0.7);
}

TEST(LatticeConstant, RichardsonStable) {
    EXPECT_NEAR(lattice_constant(0.5), -1.9501, 1e-3);
    EXPECT_LT(lattice_constant(0.25), 0);
    EXPECT_LT(lattice_constant(0.75), 0);
}
