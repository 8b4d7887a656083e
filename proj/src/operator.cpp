#include "saddle/operator.hpp"

#include <cmath>
#include <random>

#include "saddle/errors.hpp"

namespace saddle {

namespace {

DiscreteOperator assemble_impl(const KernelTable& t, bool parallel) {
    const long n = long(t.n);
    DiscreteOperator op;
    op.L.resize(n, n);
    op.weight = t.weight;
    op.exterior = ((t.exterior_grid + t.exterior_tail).array() / t.weight.array()).matrix();
    op.zero_order = t.zero_order;
    // W is symmetric, so column x doubles as row x
#pragma omp parallel for schedule(static) if (parallel)
    for (long x = 0; x < n; ++x) {
        const double mx = t.weight(x);
        double acc = 0.0;
        for (long y = 0; y < n; ++y) {
            if (y == x) continue;
            op.L(x, y) = -t.W(y, x) / mx;
            acc += t.W(y, x);
        }
        op.L(x, x) = acc / mx + op.exterior(x) + 2 * t.zero_order(x);
    }
    return op;
}

Eigen::VectorXd apply_impl(const DiscreteOperator& op, const Eigen::VectorXd& w, bool parallel) {
    const long n = long(op.size());
    if (w.size() != n) throw PreconditionError("profile size does not match the operator");
    Eigen::VectorXd out(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (long x = 0; x < n; ++x) {
        double acc = 0.0;
        for (long y = 0; y < n; ++y) acc += op.L(x, y) * w(y);
        out(x) = acc;
    }
    return out;
}

}  // namespace

Eigen::VectorXd DiscreteOperator::row_sums() const {
    Eigen::VectorXd r(L.rows());
    for (Eigen::Index x = 0; x < L.rows(); ++x) {
        double off = 0.0;
        for (Eigen::Index y = 0; y < L.cols(); ++y)
            if (y != x) off += L(x, y);
        r(x) = L(x, x) + off - exterior(x);
    }
    return r;
}

DiscreteOperator assemble(const KernelTable& t) { return assemble_impl(t, true); }
DiscreteOperator assemble_serial(const KernelTable& t) { return assemble_impl(t, false); }

Eigen::VectorXd apply(const DiscreteOperator& op, const Eigen::VectorXd& w) { return apply_impl(op, w, true); }
Eigen::VectorXd apply_serial(const DiscreteOperator& op, const Eigen::VectorXd& w) {
    return apply_impl(op, w, false);
}

double quadratic_energy(const DiscreteOperator& op, const Eigen::VectorXd& w, const Eigen::VectorXd& Lw,
                        const Potential& G) {
    double acc = 0.0;
    for (Eigen::Index x = 0; x < w.size(); ++x) acc += op.weight(x) * (w(x) * Lw(x) + 2 * G.G(w(x)));
    return acc;
}

MaxPrincipleReport check_max_principle_structure(const DiscreteOperator& op, const Grid& g,
                                                 const RadialKernel& k, std::uint64_t seed, int probes) {
    const long n = long(op.size());
    MaxPrincipleReport rep;
    rep.min_offdiag = std::numeric_limits<double>::infinity();
    for (long x = 0; x < n; ++x)
        for (long y = 0; y < n; ++y)
            if (y != x) rep.min_offdiag = std::min(rep.min_offdiag, -op.L(x, y));
    rep.z_pattern = rep.min_offdiag >= 0;

    const Eigen::VectorXd rs = op.row_sums();
    const RuleLadder ladder = RuleLadder::make(k.m);
    std::vector<double> err(std::size_t(n), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (long x = 0; x < n; ++x) {
        const DRPoint p = g.nodes[std::size_t(x)];
        const double z = zero_order_coefficient(k, p, std::max(200.0, 20 * norm(p)), ladder);
        err[std::size_t(x)] = std::abs(rs(x) - 2 * z) / (2 * z);
    }
    rep.row_sums_positive = (rs.array() > 0).all();
    for (double e : err) rep.max_row_sum_error = std::max(rep.max_row_sum_error, e);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    rep.probes = probes;
    rep.min_probe_value = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < probes; ++trial) {
        Eigen::VectorXd c(n), rhs(n);
        for (long x = 0; x < n; ++x) c(x) = unit(rng);
        for (long x = 0; x < n; ++x) rhs(x) = unit(rng);
        Eigen::MatrixXd A = op.L;
        A.diagonal() += c;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
        if (lu.rcond() < 1e-14) {
            ++rep.singular_solves;
            continue;
        }
        const Eigen::VectorXd u = lu.solve(rhs);
        if (!u.allFinite()) {
            ++rep.singular_solves;
            continue;
        }
        const double lo = u.minCoeff();
        rep.min_probe_value = std::min(rep.min_probe_value, lo);
        if (lo >= -1e-10) ++rep.probes_passed;
    }
    rep.monotone_probe = rep.probes_passed == probes;
    return rep;
}

std::vector<long> probe_set(const Grid& g, double margin) {
    std::vector<long> out;
    for (std::size_t x = 0; x < g.n_inner; ++x) {
        const DRPoint p = g.nodes[x];
        if (cone_distance(p) > margin && norm(p) < g.R - margin) out.push_back(long(x));
    }
    return out;
}

Residual residual(const DiscreteOperator& op, const Eigen::VectorXd& u, const Potential& G,
                  const std::vector<long>& probes) {
    if (probes.empty()) throw PreconditionError("empty probe set");
    Residual r;
    r.values = apply(op, u);
    for (Eigen::Index x = 0; x < u.size(); ++x) r.values(x) -= G.f(u(x));
    for (long x : probes) r.sup = std::max(r.sup, std::abs(r.values(x)));
    return r;
}

}  // namespace saddle
