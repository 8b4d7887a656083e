#include "saddle/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "saddle/errors.hpp"

namespace saddle {

double theoretical_exponent(int m, double gamma) {
    return gamma < 0.5 ? 2.0 * m - 2 * gamma : 2.0 * m - 1;
}

std::string scaling_regime(double gamma) {
    if (gamma < 0.5) return "S^(2m-2gamma)";
    if (gamma == 0.5) return "S^(2m-1) log S";
    return "S^(2m-1)";
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw PreconditionError("line fit needs two or more points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f{sxy / sxx, 0.0, 0.0};
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - f.intercept - f.slope * x[i];
        ss += e * e;
    }
    f.rms = std::sqrt(ss / double(n));
    return f;
}

ScalingReport energy_scan(const Grid& g, const KernelTable& t, const Profile& u, const Potential& G,
                          const std::vector<double>& S_list, double gamma) {
    if (S_list.size() < 3) throw PreconditionError("energy scan needs at least 3 values of S");
    for (std::size_t i = 0; i < S_list.size(); ++i) {
        if (i > 0 && !(S_list[i] > S_list[i - 1])) throw PreconditionError("S values must increase");
        if (S_list[i] > g.R - 4) throw PreconditionError("S must satisfy S <= R - 4");
        if (!(S_list[i] > 1)) throw PreconditionError("S must exceed 1");
    }
    ScalingReport rep;
    rep.S = S_list;
    rep.E_total.resize(S_list.size());
    rep.E_kin.resize(S_list.size());
    rep.E_pot.resize(S_list.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < long(S_list.size()); ++i) {
        const EnergyBreakdown e = total_energy_serial(g, t, u, G, S_list[std::size_t(i)]);
        rep.E_total[std::size_t(i)] = e.total;
        rep.E_kin[std::size_t(i)] = e.kinetic_in_in + e.kinetic_in_out;
        rep.E_pot[std::size_t(i)] = e.potential;
    }
    rep.fit_from = int(std::min<std::size_t>(2, S_list.size() - 3));
    std::vector<double> lx, ly;
    for (std::size_t i = std::size_t(rep.fit_from); i < S_list.size(); ++i) {
        lx.push_back(std::log(S_list[i]));
        ly.push_back(std::log(rep.E_total[i]));
    }
    const LineFit f = fit_line(lx, ly);
    rep.slope = f.slope;
    rep.intercept = f.intercept;
    rep.fit_residual = f.rms;
    rep.theoretical_exponent = theoretical_exponent(g.m, gamma);
    rep.regime = scaling_regime(gamma);
    if (gamma == 0.5) {
        for (std::size_t i = 0; i < S_list.size(); ++i)
            rep.flatness_values.push_back(rep.E_total[i] /
                                          (std::pow(S_list[i], 2 * g.m - 1) * std::log(S_list[i])));
        const auto [lo, hi] = std::minmax_element(rep.flatness_values.begin(), rep.flatness_values.end());
        rep.flatness = (*hi - *lo) / *lo;
    }
    return rep;
}

double phi_S(double r, double S) {
    if (r <= S + 1) return -1.0;
    if (r <= S + 2) return -1.0 + 2 * (r - S - 1);
    return 1.0;
}

double psi_S(DRPoint p, double S, double mu) {
    return phi_S(norm(p), S) * std::min(1.0, mu * cone_distance(p));
}

double d_S(DRPoint p, double S, double mu) {
    if (!(norm(p) < S)) throw DomainError("d_S needs |x| < S");
    return std::min(S + 1 - norm(p), mu * cone_distance(p));
}

double lipschitz_estimate(const Grid& g, const Profile& u, double radius, double floor) {
    if (!g.lattice) throw PreconditionError("Lipschitz estimate needs a lattice grid");
    double L = floor;
    auto val = [&](long q) { return std::size_t(q) < g.n_inner ? u(q) : 0.0; };
    for (std::size_t x = 0; x < g.n_inner; ++x) {
        const DRPoint p = g.nodes[x];
        if (norm(p) > radius) continue;
        L = std::max(L, std::abs(u(long(x))) / cone_distance(p));
        for (auto [di, dj] : {std::pair{1, 0}, std::pair{0, 1}}) {
            const long y = g.index_of(g.i[x] + di, g.j[x] + dj);
            if (y < 0 || norm(g.nodes[std::size_t(y)]) > radius) continue;
            L = std::max(L, std::abs(u(long(x)) - val(y)) / g.h);
        }
    }
    return L;
}

Competitor build_competitor(const Grid& g, const KernelTable& t, const Profile& u, const Potential& G,
                            double S, double mu) {
    if (!(S + 4 < g.R)) throw PreconditionError("competitor needs S + 4 < R");
    if (!(mu > 0)) throw PreconditionError("competitor needs mu > 0");
    if (!(S >= 2)) throw PreconditionError("competitor needs S >= 2");
    const long n = long(g.n_inner);
    Competitor c;
    c.w = u;
    CompetitorReport& r = c.report;
    r.S = S;
    r.mu = mu;
    for (long x = 0; x < n; ++x) {
        const DRPoint p = g.nodes[std::size_t(x)];
        if (norm(p) <= S + 2) c.w(x) = std::min(u(x), psi_S(p, S, mu));
    }
    const Profile& w = c.w;

    r.H1 = (w.array() >= -1).all() && (w.array() <= 1).all();
    r.H2 = true;
    r.H3 = true;
    r.H4 = true;
    for (long x = 0; x < n; ++x) {
        const DRPoint p = g.nodes[std::size_t(x)];
        const double rad = norm(p), md = mu * cone_distance(p);
        if (rad <= S + 2 && md <= 1 && std::abs(w(x)) > md * (1 + 1e-12)) r.H2 = false;
        if (std::abs(rad - (S + 2)) <= g.h / 2) {
            const double gap = std::abs(w(x) - u(x));
            r.max_h3_gap = std::max(r.max_h3_gap, gap);
            if (gap > (2 + mu) * g.h) r.H3 = false;
        }
        if (rad < S && md > 1 && w(x) != -1.0) r.H4 = false;
    }

    // H5: Lipschitz bound of the minimum, then the weighted bound across the strip edge
    double Lw = 0.0;
    for (long x = 0; x < n; ++x) {
        if (norm(g.nodes[std::size_t(x)]) > S + 2) continue;
        for (auto [di, dj] : {std::pair{1, 0}, std::pair{0, 1}}) {
            const long y = g.index_of(g.i[std::size_t(x)] + di, g.j[std::size_t(x)] + dj);
            if (y < 0 || y >= n || norm(g.nodes[std::size_t(y)]) > S + 2) continue;
            Lw = std::max(Lw, std::abs(w(x) - w(y)) / g.h);
        }
    }
    r.lipschitz_w = Lw;
    r.h5_constant = std::max(4.0, 2 * Lw / mu);
    std::vector<long> far, near;
    for (long x = 0; x < n; ++x) {
        const DRPoint p = g.nodes[std::size_t(x)];
        if (norm(p) >= S + 1) continue;
        const double md = mu * cone_distance(p);
        if (md >= 1) far.push_back(x);
        if (md <= 1) near.push_back(x);
    }
    for (long x : far) {
        const DRPoint p = g.nodes[std::size_t(x)];
        for (long y : near) {
            if (y == x) continue;
            const DRPoint q = g.nodes[std::size_t(y)];
            const double dist = std::hypot(p.s - q.s, p.t - q.t);
            r.h5_worst_ratio = std::max(r.h5_worst_ratio, std::abs(w(x) - w(y)) * cone_distance(p) / dist);
        }
    }
    r.H5 = Lw <= (2 + mu) * (1 + 1e-9) && r.h5_worst_ratio <= r.h5_constant;

    r.energy_u = total_energy(g, t, u, G, g.R).total;
    r.energy_w = total_energy(g, t, w, G, g.R).total;
    r.energy_ok = r.energy_w >= r.energy_u;
    return c;
}

double measure_omega_S(double S, double mu, double h, int m) {
    if (!(S >= 2)) throw PreconditionError("Omega_S needs S >= 2");
    if (!(mu > 0) || !(h > 0)) throw PreconditionError("Omega_S needs mu > 0 and h > 0");
    const int n = int(std::ceil((S + 2) / h)) + 1;
    const double w = std::sqrt(2.0) / mu;  // strip half-width measured along s - t
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const DRPoint p{(i + 0.5) * h, (j + 0.5) * h};
            const double r = norm(p);
            if (r > S + 2) continue;
            double frac = 0.0;
            if (r >= S) frac = 1.0;
            else if (i == j) frac = 1.0 - std::pow(std::max(0.0, 1.0 - w / h), 2);  // centre on the cone
            else if (mu * std::abs(p.s - p.t) / std::sqrt(2.0) <= 1) frac = 1.0;
            acc += frac * cell_weight(m, h, p);
        }
    return acc;
}

}  // namespace saddle
