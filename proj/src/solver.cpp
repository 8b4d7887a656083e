#include "saddle/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "saddle/errors.hpp"

namespace saddle {

Profile initial_guess(const Grid& g, double mu0) {
    if (!(mu0 > 0)) throw PreconditionError("mu0 must be positive");
    Profile u(long(g.n_inner));
    for (std::size_t x = 0; x < g.n_inner; ++x) {
        const DRPoint p = g.nodes[x];
        const double cut = std::clamp((g.R - norm(p)) / 2.0, 0.0, 1.0);
        u(long(x)) = std::min(1.0, mu0 * cone_distance(p)) * cut;
    }
    return u;
}

namespace {

Profile clamp01(const Profile& v) { return v.array().max(0.0).min(1.0).matrix(); }

Eigen::VectorXd forcing(const Profile& u, const Potential& G) {
    Eigen::VectorXd f(u.size());
    for (Eigen::Index x = 0; x < u.size(); ++x) f(x) = G.f(u(x));
    return f;
}

double projected_gradient(const Profile& u, const Eigen::VectorXd& r) {
    return (clamp01(u - r) - u).cwiseAbs().maxCoeff();
}

}  // namespace

SolveResult minimize(const Grid& g, const KernelTable& t, const DiscreteOperator& op, const Potential& G,
                     const Profile& init, const SolverConfig& cfg) {
    const long n = long(op.size());
    if (init.size() != n) throw PreconditionError("initial profile size does not match the grid");
    SolveResult res;
    Profile u = init;
    if (cfg.init_noise > 0) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> d(-cfg.init_noise, cfg.init_noise);
        for (long x = 0; x < n; ++x) u(x) += d(rng);
    }
    u = clamp01(u);
    const Eigen::VectorXd diag = op.L.diagonal();
    const Eigen::VectorXd& mu = op.weight;

    Eigen::VectorXd Lu = apply(op, u);
    double E = quadratic_energy(op, u, Lu, G);
    Eigen::VectorXd r = Lu - forcing(u, G);
    if (!std::isfinite(E)) throw ConvergenceError("energy of the initial profile is not finite");
    res.trace.push_back(E);
    res.pg_initial = projected_gradient(u, r);
    double pg = res.pg_initial;
    const double tol = cfg.grad_tol * res.pg_initial;
    double alpha = 1.0;
    res.status = "max_iters";

    int it = 0;
    for (; it < cfg.max_iters; ++it) {
        if (pg <= tol) {
            res.converged = true;
            res.status = "converged";
            break;
        }
        const Profile trial = clamp01(u - alpha * r.cwiseQuotient(diag));
        const Eigen::VectorXd d = trial - u;
        const double slope = 2 * (mu.array() * r.array() * d.array()).sum();
        bool accepted = false;
        double lambda = 1.0;
        Profile un;
        Eigen::VectorXd Lun;
        double En = E;
        for (int b = 0; b <= cfg.max_backtracks; ++b, lambda *= 0.5) {
            un = u + lambda * d;
            Lun = apply(op, un);
            En = quadratic_energy(op, un, Lun, G);
            if (!std::isfinite(En)) throw ConvergenceError("energy became NaN at iteration " + std::to_string(it));
            if (En <= E + cfg.armijo_c * lambda * slope && En <= E) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (pg <= 1e-4 * res.pg_initial) {
                res.status = "stalled";
                res.converged = true;
                break;
            }
            throw ConvergenceError("line search exhausted at iteration " + std::to_string(it) +
                                   " with projected gradient " + std::to_string(pg));
        }
        const Eigen::VectorXd rn = Lun - forcing(un, G);
        const Eigen::VectorXd s = un - u, y = rn - r;
        const double sy = (mu.array() * s.array() * y.array()).sum();
        const double ss = (mu.array() * diag.array() * s.array().square()).sum();
        alpha = sy > 0 ? std::clamp(ss / sy, 1e-3, 1e3) : std::min(2 * alpha, 1e3);
        u = un;
        Lu = Lun;
        r = rn;
        E = En;
        res.trace.push_back(E);
        pg = projected_gradient(u, r);
    }
    if (it == cfg.max_iters && pg <= tol) {
        res.converged = true;
        res.status = "converged";
    }
    res.iterations = it;
    res.pg_final = pg;
    res.u = u;
    res.energy = total_energy(g, t, u, G, g.R);
    return res;
}

ContinuationResult continuation(const SolverConfig& cfg, const RadialKernel& k, const Potential& G,
                                const TableOptions& opt) {
    std::vector<double> sched = cfg.R_schedule.empty() ? std::vector<double>{cfg.R} : cfg.R_schedule;
    for (std::size_t i = 1; i < sched.size(); ++i)
        if (!(sched[i] > sched[i - 1])) throw PreconditionError("R_schedule must be increasing");
    ContinuationResult out;
    Grid prev;
    Profile prev_u;
    for (double R : sched) {
        SolverConfig c = cfg;
        c.R = R;
        Grid g = build_grid(R, cfg.h, cfg.m, cfg.R_out > R ? cfg.R_out : 0.0);
        const KernelTable t = build_kernel_table(g, k, opt);
        const DiscreteOperator op = assemble(t);
        Profile init;
        if (prev_u.size() == 0) {
            init = initial_guess(g, cfg.mu0);
        } else {
            init = Profile::Zero(long(g.n_inner));
            for (std::size_t x = 0; x < g.n_inner; ++x) {
                const long q = prev.index_of(g.i[x], g.j[x]);
                if (q >= 0 && std::size_t(q) < prev.n_inner) init(long(x)) = prev_u(q);
            }
        }
        ContinuationStage st;
        st.R = R;
        st.result = minimize(g, t, op, G, init, c);
        st.energy_core = total_energy(g, t, st.result.u, G, std::min(4.0, R)).total;
        if (prev_u.size() > 0) {
            st.common_radius = std::min(6.0, prev.R - 2);
            double d = 0.0;
            for (std::size_t x = 0; x < g.n_inner; ++x) {
                if (norm(g.nodes[x]) > st.common_radius) continue;
                const long q = prev.index_of(g.i[x], g.j[x]);
                if (q >= 0 && std::size_t(q) < prev.n_inner) d = std::max(d, std::abs(st.result.u(long(x)) - prev_u(q)));
            }
            st.sup_diff = d;
            const double last = out.stages.back().sup_diff;
            if (last >= 0 && d > last) out.stable = false;
        }
        prev_u = st.result.u;
        prev = std::move(g);
        out.stages.push_back(std::move(st));
    }
    if (out.stages.size() > 1 && out.stages.back().sup_diff > 0.1) out.stable = false;
    out.grid = std::move(prev);
    return out;
}

}  // namespace saddle
