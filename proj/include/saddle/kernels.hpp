#pragma once

#include <functional>
#include <string>
#include <vector>

namespace saddle {

enum class KernelFamily { fractional, piecewise, tabulated, gaussian };

std::string to_string(KernelFamily f);
KernelFamily kernel_family_from_string(const std::string& s);

// Radial profile r -> K(r) on R^{2m}.
struct RadialKernel {
    KernelFamily family = KernelFamily::fractional;
    double gamma = 0.5;
    int m = 1;
    double lambda = 1.0;
    double Lambda = 1.0;
    double c_norm = 1.0;
    double power = 2.0;  // gaussian family: K = exp(-r^power)
    std::vector<double> table_r;
    std::vector<double> table_k;

    int dim() const { return 2 * m; }
    double eval(double r) const;
    // \int_a^b K(r) r^{2m-1} dr, b may be +inf.
    double radial_moment(double a, double b) const;
    // k0 with K(r) ~ k0 r^{-2m-2gamma} as r -> 0 (0 for kernels without singularity).
    double small_r_coeff() const;
};

RadialKernel make_fractional(int m, double gamma, double c_norm = 1.0);
RadialKernel make_piecewise(int m, double gamma);
RadialKernel make_gaussian(int m, double power = 2.0);
RadialKernel make_tabulated(int m, double gamma, std::vector<double> r, std::vector<double> k,
                            double lambda = 1.0, double Lambda = 1.0, double c_norm = 1.0);
RadialKernel load_tabulated(const std::string& csv_path, int m, double gamma, double lambda,
                            double Lambda, double c_norm);

// c_{n,gamma} of the fractional Laplacian in dimension n = 2m.
double standard_c_norm(int m, double gamma);

void validate_kernel(const RadialKernel& k);
double eval_kernel(const RadialKernel& k, double r);

// lambda c r^{-2m-2gamma} <= K(r) <= Lambda c r^{-2m-2gamma} at every sample.
bool ellipticity_holds(const RadialKernel& k, const std::vector<double>& radii, double rel_tol = 1e-12);

enum class Convexity { strictly_convex, convex_nonstrict, fails };
std::string to_string(Convexity c);

struct Witness {
    double tau1;
    double tau2;
    double gap;  // h(tau1) + h(tau2) - 2 h(mid), relative to |h(mid)|
};

struct ConvexityReport {
    Convexity verdict = Convexity::strictly_convex;
    std::vector<Witness> witnesses;
    std::vector<std::pair<double, double>> concavity_intervals;
    double min_gap = 0.0;
    long pairs_checked = 0;
};

std::vector<double> default_tau_grid();

ConvexityReport check_sqrt_convexity(const std::function<double(double)>& h,
                                     const std::vector<double>& tau_grid, double tol = 1e-10);
ConvexityReport check_sqrt_convexity(const RadialKernel& k, const std::vector<double>& tau_grid,
                                     double tol = 1e-10);

struct Abcd {
    double A, B, C, D;
};

Abcd abcd_coefficients(double alpha, double beta, double sx, double tx, double sy, double ty);

struct AbcdReport {
    bool dominance;
    bool sum_inequality;
};

AbcdReport abcd_inequalities(double A, double B, double C, double D);

bool convex_quad_oracle(const std::function<double(double)>& h, double A, double B, double C,
                        double D);

}  // namespace saddle
