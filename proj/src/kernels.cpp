#include "saddle/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "saddle/errors.hpp"

namespace saddle {

std::string to_string(KernelFamily f) {
    switch (f) {
        case KernelFamily::fractional: return "fractional";
        case KernelFamily::piecewise: return "piecewise-counterexample";
        case KernelFamily::tabulated: return "tabulated";
        case KernelFamily::gaussian: return "gaussian";
    }
    return "unknown";
}

KernelFamily kernel_family_from_string(const std::string& s) {
    if (s == "fractional") return KernelFamily::fractional;
    if (s == "piecewise-counterexample" || s == "piecewise") return KernelFamily::piecewise;
    if (s == "tabulated") return KernelFamily::tabulated;
    if (s == "gaussian") return KernelFamily::gaussian;
    throw DomainError("unknown kernel family '" + s + "'");
}

std::string to_string(Convexity c) {
    switch (c) {
        case Convexity::strictly_convex: return "strictly-convex";
        case Convexity::convex_nonstrict: return "convex-nonstrict";
        case Convexity::fails: return "fails";
    }
    return "unknown";
}

RadialKernel make_fractional(int m, double gamma, double c_norm) {
    RadialKernel k;
    k.family = KernelFamily::fractional;
    k.m = m;
    k.gamma = gamma;
    k.c_norm = c_norm;
    validate_kernel(k);
    return k;
}

RadialKernel make_piecewise(int m, double gamma) {
    RadialKernel k;
    k.family = KernelFamily::piecewise;
    k.m = m;
    k.gamma = gamma;
    // r^a / (10 r^a - 9) ranges over (1/10, 1] on [1, inf)
    k.lambda = 0.1;
    k.Lambda = 1.0;
    validate_kernel(k);
    return k;
}

RadialKernel make_gaussian(int m, double power) {
    RadialKernel k;
    k.family = KernelFamily::gaussian;
    k.m = m;
    k.power = power;
    validate_kernel(k);
    return k;
}

RadialKernel make_tabulated(int m, double gamma, std::vector<double> r, std::vector<double> kv,
                            double lambda, double Lambda, double c_norm) {
    RadialKernel k;
    k.family = KernelFamily::tabulated;
    k.m = m;
    k.gamma = gamma;
    k.lambda = lambda;
    k.Lambda = Lambda;
    k.c_norm = c_norm;
    k.table_r = std::move(r);
    k.table_k = std::move(kv);
    validate_kernel(k);
    return k;
}

RadialKernel load_tabulated(const std::string& csv_path, int m, double gamma, double lambda,
                            double Lambda, double c_norm) {
    std::ifstream in(csv_path);
    if (!in) throw DomainError("cannot read kernel table '" + csv_path + "'");
    std::string line;
    std::vector<double> r, kv;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.find_first_not_of(" \t0123456789.eE+-,") != std::string::npos) continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a >> b)) throw DomainError("malformed kernel table row: " + line);
        r.push_back(a);
        kv.push_back(b);
    }
    return make_tabulated(m, gamma, std::move(r), std::move(kv), lambda, Lambda, c_norm);
}

double standard_c_norm(int m, double gamma) {
    const double n = 2.0 * m;
    return gamma * std::pow(4.0, gamma) * std::tgamma(n / 2 + gamma) /
           (std::pow(std::numbers::pi, n / 2) * std::tgamma(1 - gamma));
}

void validate_kernel(const RadialKernel& k) {
    if (k.m < 1) throw DomainError("kernel m must be >= 1");
    if (k.family != KernelFamily::gaussian && !(k.gamma > 0 && k.gamma < 1))
        throw DomainError("kernel gamma must lie in (0,1)");
    if (!(k.lambda > 0 && k.lambda <= k.Lambda)) throw DomainError("need 0 < lambda <= Lambda");
    if (!(k.c_norm > 0)) throw DomainError("c_norm must be positive");
    if (k.family == KernelFamily::gaussian && !(k.power > 0)) throw DomainError("gaussian power must be positive");
    if (k.family == KernelFamily::tabulated) {
        if (k.table_r.size() < 2 || k.table_r.size() != k.table_k.size())
            throw DomainError("kernel table needs >= 2 rows of (r,K)");
        for (std::size_t i = 0; i < k.table_r.size(); ++i) {
            if (!(k.table_r[i] > 0) || !(k.table_k[i] > 0))
                throw DomainError("kernel table entries must be positive");
            if (i > 0 && !(k.table_r[i] > k.table_r[i - 1]))
                throw DomainError("kernel table radii must be strictly increasing");
        }
    }
}

namespace {

double tabulated_eval(const RadialKernel& k, double r) {
    const auto& R = k.table_r;
    if (r < R.front() || r > R.back()) {
        std::ostringstream os;
        os << "r=" << r << " outside kernel table [" << R.front() << ", " << R.back() << "]";
        throw DomainError(os.str());
    }
    auto it = std::upper_bound(R.begin(), R.end(), r);
    std::size_t i = (it == R.end()) ? R.size() - 1 : static_cast<std::size_t>(it - R.begin());
    if (i == 0) i = 1;
    const double lr0 = std::log(R[i - 1]), lr1 = std::log(R[i]);
    const double lk0 = std::log(k.table_k[i - 1]), lk1 = std::log(k.table_k[i]);
    const double w = (std::log(r) - lr0) / (lr1 - lr0);
    return std::exp(lk0 + w * (lk1 - lk0));
}

// \int_a^b c r^{e} dr for a power law segment.
double power_moment(double c, double e, double a, double b) {
    if (std::abs(e + 1) < 1e-14) return c * (std::log(b) - std::log(a));
    const double ea = std::pow(a, e + 1);
    const double eb = std::isinf(b) ? 0.0 : std::pow(b, e + 1);
    return c * (eb - ea) / (e + 1);
}

double numeric_moment(const std::function<double(double)>& K, int m, double a, double b) {
    auto g = [&](double x) {
        const double r = std::exp(x);
        return K(r) * std::pow(r, 2 * m);
    };
    if (std::isinf(b)) {
        boost::math::quadrature::exp_sinh<double> es;
        const double la = std::log(a);
        return es.integrate([&](double x) { return g(la + x); }, 1e-12);
    }
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, std::log(a), std::log(b), 15, 1e-12);
}

}  // namespace

double RadialKernel::eval(double r) const {
    if (!(r > 0)) throw DomainError("kernel evaluated at r <= 0");
    const double a = 2.0 * m + 2.0 * gamma;
    switch (family) {
        case KernelFamily::fractional: return c_norm * std::pow(r, -a);
        case KernelFamily::piecewise:
            return r < 1.0 ? std::pow(r, -a) : 1.0 / (10.0 * std::pow(r, a) - 9.0);
        case KernelFamily::tabulated: return tabulated_eval(*this, r);
        case KernelFamily::gaussian: return std::exp(-std::pow(r, power));
    }
    return 0.0;
}

double RadialKernel::radial_moment(double a, double b) const {
    if (!(a > 0) || !(b >= a)) throw DomainError("radial moment needs 0 < a <= b");
    if (a == b) return 0.0;
    const double e = -2.0 * gamma - 1.0;  // exponent of r^{-2m-2gamma} r^{2m-1}
    switch (family) {
        case KernelFamily::fractional: return power_moment(c_norm, e, a, b);
        case KernelFamily::piecewise: {
            double s = 0;
            if (a < 1) s += power_moment(1.0, e, a, std::min(b, 1.0));
            if (b > 1) {
                const double lo = std::max(a, 1.0);
                const double pa = 2.0 * m + 2.0 * gamma;
                s += numeric_moment([pa](double r) { return 1.0 / (10.0 * std::pow(r, pa) - 9.0); }, m, lo, b);
            }
            return s;
        }
        case KernelFamily::gaussian: {
            const double p = power;
            return numeric_moment([p](double r) { return std::exp(-std::pow(r, p)); }, m, a, b);
        }
        case KernelFamily::tabulated: {
            // outside the table the upper ellipticity law stands in for K
            const auto& R = table_r;
            const double cu = Lambda * c_norm;
            double s = 0;
            if (a < R.front()) s += power_moment(cu, e, a, std::min(b, R.front()));
            if (b > R.back()) s += power_moment(cu, e, std::max(a, R.back()), b);
            for (std::size_t i = 1; i < R.size(); ++i) {
                const double lo = std::max(a, R[i - 1]), hi = std::min(b, R[i]);
                if (!(hi > lo)) continue;
                const double slope = std::log(table_k[i] / table_k[i - 1]) / std::log(R[i] / R[i - 1]);
                const double c = table_k[i - 1] / std::pow(R[i - 1], slope);
                s += power_moment(c, slope + 2.0 * m - 1.0, lo, hi);
            }
            return s;
        }
    }
    return 0.0;
}

double RadialKernel::small_r_coeff() const {
    switch (family) {
        case KernelFamily::fractional: return c_norm;
        case KernelFamily::piecewise: return 1.0;
        case KernelFamily::gaussian: return 0.0;
        case KernelFamily::tabulated:
            return table_k.front() * std::pow(table_r.front(), 2.0 * m + 2.0 * gamma);
    }
    return 0.0;
}

double eval_kernel(const RadialKernel& k, double r) { return k.eval(r); }

bool ellipticity_holds(const RadialKernel& k, const std::vector<double>& radii, double rel_tol) {
    for (double r : radii) {
        const double base = k.c_norm * std::pow(r, -2.0 * k.m - 2.0 * k.gamma);
        const double v = k.eval(r);
        if (v < k.lambda * base * (1 - rel_tol) || v > k.Lambda * base * (1 + rel_tol)) return false;
    }
    return true;
}

std::vector<double> default_tau_grid() {
    std::vector<double> g(512);
    for (int i = 0; i < 512; ++i) g[i] = std::pow(10.0, -3.0 + 6.0 * i / 511.0);
    return g;
}

namespace {

constexpr std::size_t kMaxWitnesses = 32;

void keep_witness(std::vector<Witness>& w, const Witness& x) {
    w.push_back(x);
    if (w.size() > 4 * kMaxWitnesses) {
        std::sort(w.begin(), w.end(), [](const Witness& a, const Witness& b) { return a.gap < b.gap; });
        w.resize(kMaxWitnesses);
    }
}

}  // namespace

ConvexityReport check_sqrt_convexity(const std::function<double(double)>& h,
                                     const std::vector<double>& tau, double tol) {
    if (tau.size() < 3) throw DomainError("tau grid needs at least 3 points");
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (!(tau[i] > 0)) throw DomainError("tau grid entries must be positive");
        if (i > 0 && !(tau[i] > tau[i - 1])) throw DomainError("tau grid must be sorted");
    }
    ConvexityReport rep;
    rep.min_gap = std::numeric_limits<double>::infinity();
    bool any_fail = false, any_tight = false;

    auto pair_gap = [&](double a, double b, double ha, double hb) {
        const double mid = 0.5 * (a + b);
        const double hm = h(mid);
        const double scale = std::abs(hm) > 0 ? std::abs(hm) : 1.0;
        return (ha + hb - 2 * hm) / scale;
    };
    auto record = [&](double a, double b, double g) {
        ++rep.pairs_checked;
        rep.min_gap = std::min(rep.min_gap, g);
        if (g < -tol) {
            any_fail = true;
            keep_witness(rep.witnesses, {a, b, g});
        } else if (g <= tol) {
            any_tight = true;
            keep_witness(rep.witnesses, {a, b, g});
        }
    };

    std::vector<double> hv(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) hv[i] = h(tau[i]);
    for (std::size_t i = 0; i < tau.size(); ++i)
        for (std::size_t j = i + 1; j < tau.size(); ++j) record(tau[i], tau[j], pair_gap(tau[i], tau[j], hv[i], hv[j]));

    // refinement: 64 uniform points spanning the worst pair
    if (!rep.witnesses.empty()) {
        auto worst = *std::min_element(rep.witnesses.begin(), rep.witnesses.end(),
                                       [](const Witness& a, const Witness& b) { return a.gap < b.gap; });
        std::vector<double> loc(64), hl(64);
        for (int i = 0; i < 64; ++i) {
            loc[i] = worst.tau1 + (worst.tau2 - worst.tau1) * i / 63.0;
            hl[i] = h(loc[i]);
        }
        for (int i = 0; i < 64; ++i)
            for (int j = i + 1; j < 64; ++j) record(loc[i], loc[j], pair_gap(loc[i], loc[j], hl[i], hl[j]));
    }

    // concavity certificate: >= 3 consecutive negative triples on a uniform subdivision
    for (std::size_t i = 0; i + 1 < tau.size(); ++i) {
        constexpr int kSub = 64;
        std::vector<double> x(kSub + 1), hx(kSub + 1);
        for (int k = 0; k <= kSub; ++k) {
            x[k] = tau[i] + (tau[i + 1] - tau[i]) * k / kSub;
            hx[k] = h(x[k]);
        }
        int run = 0;
        for (int k = 1; k < kSub; ++k) {
            const double scale = std::abs(hx[k]) > 0 ? std::abs(hx[k]) : 1.0;
            const double g = (hx[k - 1] + hx[k + 1] - 2 * hx[k]) / scale;
            if (g < -tol) {
                ++run;
                if (run == 3) rep.concavity_intervals.emplace_back(x[k - 3], x[k + 1]);
                else if (run > 3) rep.concavity_intervals.back().second = x[k + 1];
            } else {
                run = 0;
            }
        }
    }

    std::sort(rep.witnesses.begin(), rep.witnesses.end(), [](const Witness& a, const Witness& b) { return a.gap < b.gap; });
    if (rep.witnesses.size() > kMaxWitnesses) rep.witnesses.resize(kMaxWitnesses);
    rep.verdict = any_fail ? Convexity::fails : (any_tight ? Convexity::convex_nonstrict : Convexity::strictly_convex);
    return rep;
}

ConvexityReport check_sqrt_convexity(const RadialKernel& k, const std::vector<double>& tau_grid, double tol) {
    return check_sqrt_convexity([&k](double t) { return k.eval(std::sqrt(t)); }, tau_grid, tol);
}

Abcd abcd_coefficients(double alpha, double beta, double sx, double tx, double sy, double ty) {
    if (alpha < std::abs(beta)) throw PreconditionError("abcd: need alpha >= |beta|");
    if (!(sx > tx && tx >= 0) || !(sy > ty && ty >= 0))
        throw PreconditionError("abcd: both orbit points must lie in O (s > t >= 0)");
    return {sx * sy * alpha + tx * ty * beta, sx * ty * alpha + tx * sy * beta,
            tx * sy * alpha + sx * ty * beta, tx * ty * alpha + sx * sy * beta};
}

AbcdReport abcd_inequalities(double A, double B, double C, double D) {
    const double a = std::abs(A), b = std::abs(B), c = std::abs(C), d = std::abs(D);
    return {a >= b && a >= c && a >= d, a + d >= b + c};
}

bool convex_quad_oracle(const std::function<double(double)>& h, double A, double B, double C, double D) {
    if (A < std::max({B, C, D})) throw PreconditionError("convex_quad_oracle: A must be the maximum");
    const double slack = 1e-12 * (std::abs(A) + std::abs(B) + std::abs(C) + std::abs(D));
    if (A + D < B + C - slack) throw PreconditionError("convex_quad_oracle: need A + D >= B + C");
    double xs[4] = {A, B, C, D};
    std::sort(xs, xs + 4);
    double hs[4];
    for (int i = 0; i < 4; ++i) hs[i] = h(xs[i]);
    for (int i = 1; i < 4; ++i)
        if (hs[i] < hs[i - 1] - 1e-12 * std::abs(hs[i - 1]))
            throw PreconditionError("convex_quad_oracle: h must be nondecreasing on the sample");
    const double lhs = h(A) + h(D), rhs = h(B) + h(C);
    return lhs >= rhs - 1e-12 * (std::abs(lhs) + std::abs(rhs));
}

}  // namespace saddle
