#include "saddle/doubly_radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "saddle/errors.hpp"

namespace saddle {

namespace {
constexpr double kPi = std::numbers::pi;
}

Region classify(DRPoint p) {
    if (p.s > p.t) return Region::outer;
    if (p.s < p.t) return Region::inner;
    return Region::cone;
}

DRPoint star(DRPoint p) { return {p.t, p.s}; }

double cone_distance(DRPoint p) { return std::abs(p.s - p.t) / std::numbers::sqrt2; }

double norm(DRPoint p) { return std::hypot(p.s, p.t); }

double sphere_area(int n) { return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n); }

double omega(int m) { return m == 1 ? 2.0 : sphere_area(m); }

double c_m(int m) {
    if (m < 2) throw DomainError("c_m is defined for m >= 2");
    return 2.0 * std::pow(kPi, 0.5 * (m - 1)) / std::tgamma(0.5 * (m - 1));
}

namespace {

void check_pair(DRPoint p, DRPoint q) {
    if (p.s < 0 || p.t < 0 || q.s < 0 || q.t < 0) throw DomainError("orbit coordinates must be >= 0");
    if (p.s == q.s && p.t == q.t) throw SingularityError("J requested on the diagonal");
}

}  // namespace

double j_kernel(const RadialKernel& k, DRPoint p, DRPoint q, const QuadratureRule& rule) {
    check_pair(p, q);
    const double s = p.s, t = p.t, sg = q.s, ta = q.t;
    if (k.m == 1) {
        const double dm = (s - sg) * (s - sg), dp = (s + sg) * (s + sg);
        const double em = (t - ta) * (t - ta), ep = (t + ta) * (t + ta);
        return k.eval(std::sqrt(dm + em)) + k.eval(std::sqrt(dp + em)) + k.eval(std::sqrt(dm + ep)) +
               k.eval(std::sqrt(dp + ep));
    }
    if (rule.order == 0) throw DomainError("m >= 2 needs a quadrature rule");
    // |x-y|^2 = (s-sg)^2 + (t-ta)^2 + 2 s sg (1-th) + 2 t ta (1-thb), stable near the diagonal
    const double base = (s - sg) * (s - sg) + (t - ta) * (t - ta);
    const double a = 2 * s * sg, b = 2 * t * ta;
    const int n = rule.order;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double di = base + a * (1 - rule.nodes[i]);
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += rule.weights[j] * k.eval(std::sqrt(di + b * (1 - rule.nodes[j])));
        sum += rule.weights[i] * row;
    }
    const double cm = c_m(k.m);
    return cm * cm * sum;
}

JValue j_kernel_adaptive(const RadialKernel& k, DRPoint p, DRPoint q, const RuleLadder& ladder, double rel_tol) {
    if (k.m == 1) return {j_kernel(k, p, q, QuadratureRule{}), 0, false};
    if (ladder.rules.empty()) throw DomainError("empty quadrature ladder");
    double prev = j_kernel(k, p, q, ladder.rules[0]);
    for (std::size_t i = 1; i < ladder.rules.size(); ++i) {
        const double cur = j_kernel(k, p, q, ladder.rules[i]);
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return {cur, ladder.rules[i].order, false};
        prev = cur;
    }
    return {prev, ladder.rules.back().order, ladder.rules.size() > 1};
}

// Standard F2(a; b1, b2; c1, c2; x, y) = sum (a)_{i+j} (b1)_i (b2)_j / ((c1)_i (c2)_j i! j!) x^i y^j.
// Terms are dominated by (a)_n (x+y)^n / n! when b <= c, which gives the tail bound.
double appell_f2(double a, double b1, double b2, double c1, double c2, double x, double y, double series_tol,
                 int max_degree) {
    if (x < 0 || y < 0 || !(x + y < 1)) throw DomainError("F2 series needs x, y >= 0 and x + y < 1");
    if (b1 > c1 || b2 > c2 || a <= 0) throw DomainError("F2 tail bound needs 0 < b <= c and a > 0");
    const double r = x + y;
    int N = 0;
    double maj = 1.0;  // (a)_n r^n / n! at n = N
    for (;;) {
        const double next = maj * (a + N) / (N + 1) * r;
        const double rho = (a + N + 1) / (N + 2) * r;
        if (rho < 1 && next / (1 - rho) <= series_tol) break;
        maj = next;
        if (++N > max_degree) throw ConvergenceError("F2 series did not reach the tolerance within the degree cap");
    }
    // rows in j, each row summed along i up to degree N
    double total = 0.0;
    double row_head = 1.0;  // term(0, j)
    for (int j = 0; j <= N; ++j) {
        if (j > 0) row_head *= (a + j - 1) * (b2 + j - 1) / ((c2 + j - 1) * j) * y;
        double term = row_head, row = row_head;
        for (int i = 1; i + j <= N; ++i) {
            term *= (a + i + j - 1) * (b1 + i - 1) / ((c1 + i - 1) * i) * x;
            row += term;
        }
        total += row;
        if (y == 0) break;
    }
    return total;
}

double appell_prefactor(int m, double gamma, double c_norm) {
    (void)gamma;
    const double w = omega(m);
    return c_norm * w * w;
}

double appell_prefactor_integral_form(int m, double gamma, double c_norm) {
    (void)gamma;
    const double b = 0.5 * (m - 1);
    const double f = c_m(m) * std::pow(2.0, m - 2) * std::tgamma(b) * std::tgamma(b) / std::tgamma(2 * b);
    return c_norm * f * f;
}

double j_kernel_appell(const RadialKernel& k, DRPoint p, DRPoint q, double series_tol) {
    if (k.family != KernelFamily::fractional) throw DomainError("Appell form needs the fractional kernel");
    if (k.m < 2) throw DomainError("Appell form is stated for m >= 2");
    check_pair(p, q);
    const double den = (p.s + q.s) * (p.s + q.s) + (p.t + q.t) * (p.t + q.t);
    const double x = 4 * p.s * q.s / den, y = 4 * p.t * q.t / den;
    const int m = k.m;
    const double a = m + k.gamma;
    const double f = appell_f2(a, 0.5 * (m - 1), 0.5 * (m - 1), m - 1, m - 1, x, y, series_tol);
    return appell_prefactor(m, k.gamma, k.c_norm) * f / std::pow(den, a);
}

double kbar(const RadialKernel& k, DRPoint p, DRPoint q, const RuleLadder& ladder) {
    const double w = omega(k.m);
    return j_kernel_adaptive(k, p, q, ladder).value / (w * w);
}

double kernel_difference(const RadialKernel& k, DRPoint p, DRPoint q, const RuleLadder& ladder) {
    if (classify(p) != Region::outer || classify(q) != Region::outer)
        throw DomainError("kernel_difference needs both points strictly in O");
    const double w = omega(k.m);
    const double a = j_kernel_adaptive(k, p, q, ladder).value;
    const double b = j_kernel_adaptive(k, p, star(q), ladder).value;
    return (a - b) / (w * w);
}

std::vector<std::pair<DRPoint, DRPoint>> draw_outer_pairs(std::uint64_t seed, long n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> lr(std::log(1e-2), std::log(1e2));
    std::uniform_real_distribution<double> ang(0.0, kPi / 4);
    auto draw = [&] {
        for (;;) {
            const double r = std::exp(lr(rng));
            const double a = ang(rng);
            DRPoint p{r * std::cos(a), r * std::sin(a)};
            if (p.s > p.t) return p;
        }
    };
    std::vector<std::pair<DRPoint, DRPoint>> out;
    out.reserve(static_cast<std::size_t>(n));
    while (static_cast<long>(out.size()) < n) {
        DRPoint p = draw(), q = draw();
        if (p.s == q.s && p.t == q.t) continue;
        out.emplace_back(p, q);
    }
    return out;
}

namespace {

struct GapSample {
    double gap = 0, rel = 0;
    bool indeterminate = false, violation = false, flagged = false;
};

GapSample gap_sample(const RadialKernel& k, DRPoint p, DRPoint q, const RuleLadder& ladder) {
    const double w = omega(k.m);
    const JValue a = j_kernel_adaptive(k, p, q, ladder);
    const JValue b = j_kernel_adaptive(k, p, star(q), ladder);
    GapSample g;
    g.flagged = a.flagged || b.flagged;
    const double scale = a.value + b.value;
    g.gap = (a.value - b.value) / (w * w);
    if (!(scale > 0)) {
        g.indeterminate = true;
        return g;
    }
    g.rel = (a.value - b.value) / scale;
    const double tol = k.m == 1 ? 1e-13 : 1e-8;
    if (g.rel < -tol) g.violation = true;
    else if (g.rel <= 0) g.indeterminate = true;
    return g;
}

InequalityReport reduce(const std::vector<std::pair<DRPoint, DRPoint>>& pairs, const std::vector<GapSample>& gs,
                        std::uint64_t seed) {
    InequalityReport rep;
    rep.seed = seed;
    rep.n_samples = static_cast<long>(pairs.size());
    rep.min_gap = std::numeric_limits<double>::infinity();
    rep.min_rel_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const auto& g = gs[i];
        if (g.flagged) ++rep.flagged;
        if (g.indeterminate) {
            ++rep.indeterminate;
            continue;
        }
        if (g.violation) ++rep.violations;
        rep.min_gap = std::min(rep.min_gap, g.gap);
        if (g.rel < rep.min_rel_gap) {
            rep.min_rel_gap = g.rel;
            rep.worst_p = pairs[i].first;
            rep.worst_q = pairs[i].second;
        }
    }
    return rep;
}

}  // namespace

InequalityReport verify_kernel_inequality(const RadialKernel& k, std::uint64_t seed, long n_samples,
                                          const RuleLadder& ladder) {
    if (n_samples < 1) throw DomainError("n_samples must be >= 1");
    const auto pairs = draw_outer_pairs(seed, n_samples);
    std::vector<GapSample> gs(pairs.size());
    const long n = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < n; ++i) gs[i] = gap_sample(k, pairs[i].first, pairs[i].second, ladder);
    return reduce(pairs, gs, seed);
}

InequalityReport verify_kernel_inequality_serial(const RadialKernel& k, std::uint64_t seed, long n_samples,
                                                 const RuleLadder& ladder) {
    if (n_samples < 1) throw DomainError("n_samples must be >= 1");
    const auto pairs = draw_outer_pairs(seed, n_samples);
    std::vector<GapSample> gs;
    gs.reserve(pairs.size());
    for (const auto& pq : pairs) gs.push_back(gap_sample(k, pq.first, pq.second, ladder));
    return reduce(pairs, gs, seed);
}

namespace {

const QuadratureRule& gl16() {
    static const QuadratureRule r = gauss_legendre(16);
    return r;
}

const QuadratureRule& gl8() {
    static const QuadratureRule r = gauss_legendre(8);
    return r;
}

}  // namespace

double zero_order_coefficient(const RadialKernel& k, DRPoint p, double R_out, const RuleLadder& ladder,
                              int grid_res) {
    if (classify(p) != Region::outer) throw DomainError("zero_order_coefficient needs p strictly in O");
    if (!(R_out > 2 * norm(p))) throw DomainError("zero_order_coefficient needs R_out > 2|p|");
    if (grid_res < 1) throw DomainError("grid_res must be >= 1");
    const double s = p.s, t = p.t;
    const int m = k.m;
    // polar coordinates about c = p*, the singular point of J(p, q*)
    const double cx = t, cy = s;
    const double Rb = R_out / std::numbers::sqrt2;
    const double thO = std::atan2(-cy, -cx);
    const double thA = std::atan2(-cy, R_out - cx);
    const double thB = std::atan2(Rb - cy, Rb - cx);
    std::array<double, 4> br{thO, std::min(thA, -kPi / 4), std::max(thA, -kPi / 4), thB};

    auto radial = [&](double th) {
        const double ex = std::cos(th), ey = std::sin(th);
        const double rin = (s - t) / (ex - ey);
        double rout = std::numeric_limits<double>::infinity();
        if (ey < 0) rout = std::min(rout, s / (-ey));
        const double ce = cx * ex + cy * ey;
        rout = std::min(rout, -ce + std::sqrt(ce * ce - (cx * cx + cy * cy) + R_out * R_out));
        if (!(rout > rin)) return 0.0;
        const double xa = std::log(rin), xb = std::log(rout);
        const int np = std::max(1, static_cast<int>(std::ceil((xb - xa) / 0.5)));
        const double hw = 0.5 * (xb - xa) / np;
        const auto& g = gl8();
        double acc = 0.0;
        for (int ip = 0; ip < np; ++ip) {
            const double mid = xa + (2 * ip + 1) * hw;
            for (int i = 0; i < g.order; ++i) {
                const double rho = std::exp(mid + hw * g.nodes[i]);
                const double sg = cx + rho * ex, ta = std::max(0.0, cy + rho * ey);
                double f = j_kernel_adaptive(k, p, DRPoint{ta, sg}, ladder).value;
                if (m > 1) f *= std::pow(sg * ta, m - 1);
                acc += g.weights[i] * hw * f * rho * rho;
            }
        }
        return acc;
    };

    double total = 0.0;
    const auto& g = gl16();
    for (int seg = 0; seg < 3; ++seg) {
        const double a = br[seg], b = br[seg + 1];
        if (!(b > a)) continue;
        const double w = (b - a) / grid_res;
        for (int ip = 0; ip < grid_res; ++ip) {
            const double mid = a + (ip + 0.5) * w;
            for (int i = 0; i < g.order; ++i) total += g.weights[i] * 0.5 * w * radial(mid + 0.5 * w * g.nodes[i]);
        }
    }
    // far field: Kbar(x,y*) ~ K(|y|) over half the sphere shell
    const double tail = 0.5 * sphere_area(2 * m) * k.radial_moment(R_out, std::numeric_limits<double>::infinity());
    return total + tail;
}

namespace {

// roots of c2 r^2 + c1 r + c0 = 0 that are > 0
int positive_roots(double c2, double c1, double c0, double out[2]) {
    int n = 0;
    const double scale = std::abs(c1) + std::abs(c0);
    if (std::abs(c2) <= 1e-14 * scale) {
        if (c1 != 0) {
            const double r = -c0 / c1;
            if (r > 0) out[n++] = r;
        }
        return n;
    }
    const double disc = c1 * c1 - 4 * c2 * c0;
    if (disc < 0) return 0;
    const double sq = std::sqrt(disc);
    const double qq = -0.5 * (c1 + std::copysign(sq, c1));
    double r1 = qq / c2;
    double r2 = qq != 0 ? c0 / qq : r1;
    if (r1 > 0) out[n++] = r1;
    if (r2 > 0 && r2 != r1) out[n++] = r2;
    return n;
}

struct RayGeom {
    double s, t, r_min;
    Side side;
};

// \int over rho of K(rho) rho^{2m-1} restricted to the region along one direction.
double ray_moment(const RadialKernel& k, const RayGeom& g, double a1, double b1, double a2, double b2) {
    const double s = g.s, t = g.t;
    const double q0 = s * s - t * t, q1 = 2 * (s * a1 - t * b1), q2 = a2 - b2;
    const bool ball = g.r_min > 0;
    const double d0 = s * s + t * t - g.r_min * g.r_min, d1 = 2 * (s * a1 + t * b1), d2 = a2 + b2;
    double cuts[5];
    int nc = 0;
    double tmp[2];
    int k1 = positive_roots(q2, q1, q0, tmp);
    for (int i = 0; i < k1; ++i) cuts[nc++] = tmp[i];
    if (ball) {
        int k2 = positive_roots(d2, d1, d0, tmp);
        for (int i = 0; i < k2; ++i) cuts[nc++] = tmp[i];
    }
    std::sort(cuts, cuts + nc);
    auto inside = [&](double r) {
        const double q = q0 + r * (q1 + r * q2);
        const bool side_ok = g.side == Side::outer ? q > 0 : q < 0;
        if (!side_ok) return false;
        if (ball && !(d0 + r * (d1 + r * d2) > 0)) return false;
        return true;
    };
    double acc = 0.0;
    double lo = 0.0;
    for (int i = 0; i <= nc; ++i) {
        const double hi = i < nc ? cuts[i] : std::numeric_limits<double>::infinity();
        if (hi > lo) {
            const double probe = std::isinf(hi) ? 2 * lo + 1 : 0.5 * (lo + hi);
            if (inside(probe)) {
                if (lo == 0) throw DomainError("ray integral region contains the base point");
                acc += k.radial_moment(lo, hi);
            }
        }
        lo = hi;
    }
    return acc;
}

}  // namespace

double cone_region_integral(const RadialKernel& k, DRPoint p, Side side, double r_min, int angular_res) {
    if (classify(p) != Region::outer) throw DomainError("ray integral base point must lie in O");
    const int m = k.m;
    RayGeom g{p.s, p.t, r_min, side};
    if (m == 1) {
        const int panels = angular_res > 0 ? angular_res : 512;
        const auto& gl = gl8();
        const double w = 2 * kPi / panels;
        double total = 0.0;
        for (int ip = 0; ip < panels; ++ip) {
            const double mid = (ip + 0.5) * w;
            for (int i = 0; i < gl.order; ++i) {
                const double th = mid + 0.5 * w * gl.nodes[i];
                const double c = std::cos(th), sn = std::sin(th);
                total += gl.weights[i] * 0.5 * w * ray_moment(k, g, c, sn, c * c, sn * sn);
            }
        }
        return total;
    }
    const int n = angular_res > 0 ? angular_res : 48;
    const QuadratureRule gphi = gauss_legendre(n);
    const QuadratureRule gu = gauss_jacobi(n, 0.5 * (m - 3), 0.5 * (m - 3));
    const double om2 = sphere_area(m - 1);  // |S^{m-2}|
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double phi = 0.25 * kPi * (1 + gphi.nodes[i]);
        const double cp = std::cos(phi), sp = std::sin(phi);
        const double wphi = 0.25 * kPi * gphi.weights[i] * std::pow(cp * sp, m - 1);
        double inner = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                inner += gu.weights[a] * gu.weights[b] *
                         ray_moment(k, g, cp * gu.nodes[a], sp * gu.nodes[b], cp * cp, sp * sp);
        total += wphi * inner;
    }
    return om2 * om2 * total;
}

double zero_order_ray(const RadialKernel& k, DRPoint p, int angular_res) {
    return cone_region_integral(k, p, Side::inner, 0.0, angular_res);
}

}  // namespace saddle
