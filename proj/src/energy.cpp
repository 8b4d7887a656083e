#include "saddle/energy.hpp"

#include <cmath>
#include <numbers>

#include "saddle/errors.hpp"

namespace saddle {

namespace {
constexpr double kPi = std::numbers::pi;

void index_cells(Grid& g) {
    int hi = 0;
    for (std::size_t n = 0; n < g.size(); ++n) hi = std::max(hi, g.i[n] + 1);
    g.span = hi;
    g.lookup.assign(std::size_t(hi) * hi, -1);
    for (std::size_t n = 0; n < g.size(); ++n) g.lookup[std::size_t(g.i[n]) * hi + g.j[n]] = long(n);
}
}  // namespace

long Grid::index_of(int ci, int cj) const {
    if (!lattice || ci < 0 || cj < 0 || ci >= span || cj >= span) return -1;
    return lookup[std::size_t(ci) * span + cj];
}

double cell_weight(int m, double h, DRPoint p) {
    const double w = omega(m);
    return w * w * std::pow(p.s * p.t, m - 1) * h * h;
}

Grid build_grid(double R, double h, int m, double R_out) {
    if (m < 1) throw DomainError("m must be >= 1");
    if (R_out == 0.0) R_out = 1.5 * R;
    if (!(h > 0) || !(h < R)) throw PreconditionError("grid needs 0 < h < R");
    if (!(R_out >= R + h)) throw PreconditionError("grid needs R_out >= R + h");
    Grid g;
    g.R = R;
    g.h = h;
    g.R_out = R_out;
    g.m = m;
    const int n = int(std::ceil(R_out / h)) + 1;
    for (int pass = 0; pass < 2; ++pass) {
        for (int ci = 0; ci < n; ++ci)
            for (int cj = 0; cj < ci; ++cj) {
                const DRPoint p{(ci + 0.5) * h, (cj + 0.5) * h};
                const double r = norm(p);
                const bool inner = r <= R;
                if (r > R_out || inner != (pass == 0)) continue;
                g.nodes.push_back(p);
                g.i.push_back(ci);
                g.j.push_back(cj);
                g.weight.push_back(cell_weight(m, h, p));
            }
        if (pass == 0) g.n_inner = g.nodes.size();
    }
    if (g.n_inner == 0) throw PreconditionError("grid has no inner nodes");
    index_cells(g);
    return g;
}

Grid custom_grid(int m, double h, double R, const std::vector<DRPoint>& inner,
                 const std::vector<DRPoint>& exterior) {
    Grid g;
    g.R = R;
    g.h = h;
    g.R_out = R;
    g.m = m;
    g.lattice = false;
    for (const auto* set : {&inner, &exterior})
        for (DRPoint p : *set) {
            if (classify(p) != Region::outer) throw DomainError("grid nodes must lie in O");
            g.nodes.push_back(p);
            g.i.push_back(-1);
            g.j.push_back(-1);
            g.weight.push_back(cell_weight(m, h, p));
            g.R_out = std::max(g.R_out, norm(p));
        }
    g.n_inner = inner.size();
    return g;
}

Potential allen_cahn() {
    return {[](double u) { return 0.25 * (1 - u * u) * (1 - u * u); }, [](double u) { return u - u * u * u; }};
}

Potential zero_potential() {
    return {[](double) { return 0.0; }, [](double) { return 0.0; }};
}

double lattice_constant(double gamma) {
    if (!(gamma > 0 && gamma < 1)) throw DomainError("gamma must lie in (0,1)");
    auto cut_sum = [gamma](int M) {
        const int L = 7 * M;
        const double inv = 1.0 / (double(M) * M);
        double acc = 0.0;
        // quarter plane z1 > 0, z2 >= 0 times 4 covers everything except z1 = 0, which has z1^2 = 0
        for (int a = 1; a <= L; ++a)
            for (int b = 0; b <= L; ++b) {
                const double r2 = double(a) * a + double(b) * b;
                const double v = double(a) * a * std::pow(r2, -1.0 - gamma) * std::exp(-r2 * inv);
                acc += b == 0 ? 2 * v : 4 * v;
            }
        return acc - 0.5 * kPi * std::pow(double(M), 2 - 2 * gamma) * std::tgamma(1 - gamma);
    };
    return (4 * cut_sum(40) - cut_sum(20)) / 3;
}

double transverse_coeff(const RadialKernel& k) {
    const int m = k.m;
    return k.small_r_coeff() * std::pow(kPi, m - 1) * std::tgamma(1 + k.gamma) / std::tgamma(m + k.gamma);
}

double KernelTable::min_difference() const {
    double lo = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < W.cols(); ++c)
        for (Eigen::Index r = 0; r < W.rows(); ++r)
            if (r != c) lo = std::min(lo, W(r, c));
    return lo;
}

namespace {

struct PairValues {
    double kbar;
    double kbar_star;
    bool flagged;
};

PairValues pair_values(const RadialKernel& k, DRPoint p, DRPoint q, const RuleLadder& ladder) {
    const double w2 = omega(k.m) * omega(k.m);
    if (k.m == 1) {
        const QuadratureRule none;
        return {j_kernel(k, p, q, none) / w2, j_kernel(k, p, star(q), none) / w2, false};
    }
    const JValue a = j_kernel_adaptive(k, p, q, ladder);
    const JValue b = j_kernel_adaptive(k, p, star(q), ladder);
    return {a.value / w2, b.value / w2, a.flagged || b.flagged};
}

double self_star(const RadialKernel& k, DRPoint p, const RuleLadder& ladder) {
    const double w2 = omega(k.m) * omega(k.m);
    if (k.m == 1) return j_kernel(k, p, star(p), QuadratureRule{}) / w2;
    return j_kernel_adaptive(k, p, star(p), ladder).value / w2;
}

KernelTable build_impl(const Grid& g, const RadialKernel& k, const TableOptions& opt, bool parallel) {
    validate_kernel(k);
    if (g.m != k.m) throw PreconditionError("grid and kernel disagree on m");
    const long n = long(g.n_inner), total = long(g.size());
    const double bytes = 2.0 * double(n) * double(n) * sizeof(double);
    if (bytes > opt.memory_cap_bytes)
        throw ResourceError("kernel table needs " + std::to_string(bytes / 1e9) +
                            " GB, over the cap; use a larger h or smaller R");
    const RuleLadder ladder = RuleLadder::make(k.m);
    KernelTable t;
    t.n = std::size_t(n);
    t.m = k.m;
    t.h = g.h;
    t.weight = Eigen::Map<const Eigen::VectorXd>(g.weight.data(), n);
    t.W = Eigen::MatrixXd::Zero(n, n);
    t.P = Eigen::MatrixXd::Zero(n, n);
    t.exterior_grid = Eigen::VectorXd::Zero(n);
    t.exterior_tail = Eigen::VectorXd::Zero(n);
    t.zero_order = Eigen::VectorXd::Zero(n);
    t.zero_order_lattice = Eigen::VectorXd::Zero(n);
    std::vector<long> flags(std::size_t(n), 0);

#pragma omp parallel for schedule(dynamic, 4) if (parallel)
    for (long x = 0; x < n; ++x) {
        const DRPoint p = g.nodes[std::size_t(x)];
        const double mx = g.weight[std::size_t(x)];
        for (long y = x + 1; y < n; ++y) {
            const PairValues v = pair_values(k, p, g.nodes[std::size_t(y)], ladder);
            const double my = g.weight[std::size_t(y)];
            t.W(x, y) = t.W(y, x) = (v.kbar - v.kbar_star) * mx * my;
            t.P(x, y) = t.P(y, x) = v.kbar_star * mx * my;
            flags[std::size_t(x)] += v.flagged;
        }
        t.P(x, x) = self_star(k, p, ladder) * mx * mx;
        double ext = 0.0, zl = 0.0;
        for (long y = n; y < total; ++y) {
            const PairValues v = pair_values(k, p, g.nodes[std::size_t(y)], ladder);
            const double my = g.weight[std::size_t(y)];
            ext += (v.kbar - v.kbar_star) * mx * my;
            zl += v.kbar_star * my;
            flags[std::size_t(x)] += v.flagged;
        }
        t.exterior_grid(x) = ext;
        t.zero_order_lattice(x) = zl;
        t.zero_order(x) = zero_order_ray(k, p, opt.ray_res);
        if (opt.exterior_tail)
            t.exterior_tail(x) = mx * (cone_region_integral(k, p, Side::outer, g.R_out, opt.ray_res) -
                                       cone_region_integral(k, p, Side::inner, g.R_out, opt.ray_res));
    }

    // lattice part of the zero-order sum over inner columns, in a fixed order
    for (long x = 0; x < n; ++x) {
        double acc = 0.0;
        for (long y = 0; y < n; ++y) acc += t.P(x, y) / g.weight[std::size_t(x)];
        t.zero_order_lattice(x) += acc;
    }
    for (long f : flags) t.flagged_pairs += f;

    if (opt.local_correction && g.lattice) {
        t.kappa = -lattice_constant(k.gamma) * transverse_coeff(k) * std::pow(g.h, 2 - 2 * k.gamma);
        const double h2 = g.h * g.h;
        const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
        for (long x = 0; x < n; ++x) {
            const int ci = g.i[std::size_t(x)], cj = g.j[std::size_t(x)];
            for (int e = 0; e < 4; ++e) {
                const int ni = ci + di[e], nj = cj + dj[e];
                if (nj < 0 || ni <= nj) continue;  // t < 0 mirror or a cone cell
                const long y = g.index_of(ni, nj);
                if (y < 0) continue;
                const double c = t.kappa * (g.weight[std::size_t(x)] + g.weight[std::size_t(y)]) / (4 * h2);
                if (y < n)
                    t.W(x, y) += c;
                else
                    t.exterior_grid(x) += c;
            }
        }
    }
    return t;
}

}  // namespace

KernelTable build_kernel_table(const Grid& g, const RadialKernel& k, const TableOptions& opt) {
    return build_impl(g, k, opt, true);
}

KernelTable build_kernel_table_serial(const Grid& g, const RadialKernel& k, const TableOptions& opt) {
    return build_impl(g, k, opt, false);
}

std::vector<char> ball_mask(const Grid& g, double S) {
    std::vector<char> a(g.n_inner, 0);
    for (std::size_t x = 0; x < g.n_inner; ++x) a[x] = norm(g.nodes[x]) <= S;
    return a;
}

namespace {

struct RowParts {
    double in_in = 0.0;
    double in_out = 0.0;
    double pot = 0.0;
};

RowParts energy_row(const KernelTable& t, const Profile& w, const Potential& G,
                    const std::vector<char>& A, long x, ZeroOrderMode mode) {
    RowParts r;
    const long n = long(t.n);
    const double wx = w(x), mx = t.weight(x);
    double dd_in = 0.0, dd_out = 0.0, p_in = 0.0, p_cross = 0.0;
    for (long y = 0; y < n; ++y) {
        const double d = wx - w(y);
        if (A[std::size_t(y)]) {
            dd_in += d * d * t.W(y, x);
            p_in += t.P(y, x);
        } else {
            dd_out += d * d * t.W(y, x);
            p_cross += w(y) * w(y) * t.P(y, x);
        }
    }
    const bool lattice = mode == ZeroOrderMode::lattice;
    const double ext = t.exterior_grid(x) + (lattice ? 0.0 : t.exterior_tail(x));
    const double z = (lattice ? t.zero_order_lattice(x) : t.zero_order(x)) * mx;
    r.in_in = 0.5 * dd_in + 2 * wx * wx * p_in;
    r.in_out = dd_out + wx * wx * ext + 2 * wx * wx * (z - p_in) + 2 * p_cross;
    r.pot = 2 * G.G(wx) * mx;
    return r;
}

EnergyBreakdown energy_impl(const Grid& g, const KernelTable& t, const Profile& w, const Potential& G,
                            double S, ZeroOrderMode mode, bool parallel) {
    if (S > g.R_out) throw PreconditionError("evaluation radius beyond R_out");
    if (std::size_t(w.size()) != t.n || g.n_inner != t.n) throw PreconditionError("profile/table size mismatch");
    const std::vector<char> A = ball_mask(g, S);
    const long n = long(t.n);
    std::vector<RowParts> rows(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) if (parallel)
    for (long x = 0; x < n; ++x)
        if (A[std::size_t(x)]) rows[std::size_t(x)] = energy_row(t, w, G, A, x, mode);
    EnergyBreakdown e;
    for (const RowParts& r : rows) {
        e.kinetic_in_in += r.in_in;
        e.kinetic_in_out += r.in_out;
        e.potential += r.pot;
    }
    e.total = e.kinetic_in_in + e.kinetic_in_out + e.potential;
    return e;
}

}  // namespace

EnergyBreakdown total_energy(const Grid& g, const KernelTable& t, const Profile& w, const Potential& G,
                             double S, ZeroOrderMode mode) {
    return energy_impl(g, t, w, G, S, mode, true);
}

EnergyBreakdown total_energy_serial(const Grid& g, const KernelTable& t, const Profile& w,
                                    const Potential& G, double S, ZeroOrderMode mode) {
    return energy_impl(g, t, w, G, S, mode, false);
}

double interaction(const KernelTable& t, const Profile& w, const std::vector<long>& A,
                   const std::vector<long>& B) {
    const long n = long(t.n);
    double acc = 0.0;
    for (long x : A)
        for (long y : B) {
            if (x < 0 || y < 0 || x >= n || y >= n) throw PreconditionError("node outside the kernel table");
            const double d = w(x) - w(y);
            acc += 2 * d * d * t.W(x, y) + 4 * (w(x) * w(x) + w(y) * w(y)) * t.P(x, y);
        }
    return acc;
}

Profile truncate_profile(const Profile& u) {
    return u.array().abs().min(1.0).matrix();
}

}  // namespace saddle
