#pragma once

#include <cstdint>
#include <vector>

#include "saddle/kernels.hpp"
#include "saddle/quadrature.hpp"

namespace saddle {

// (s,t) = (|x'|, |x''|), one O(m)^2 orbit.
struct DRPoint {
    double s = 0.0;
    double t = 0.0;
};

enum class Region { outer, cone, inner };

Region classify(DRPoint p);
DRPoint star(DRPoint p);
double cone_distance(DRPoint p);
double norm(DRPoint p);

// |S^{n-1}|, area of the unit sphere in R^n.
double sphere_area(int n);
// omega_{m-1} = |S^{m-1}|
double omega(int m);
// 2 pi^{(m-1)/2} / Gamma((m-1)/2), m >= 2
double c_m(int m);

double j_kernel(const RadialKernel& k, DRPoint p, DRPoint q, const QuadratureRule& rule);

struct JValue {
    double value = 0.0;
    int order = 0;
    bool flagged = false;  // max order reached without meeting the tolerance
};

JValue j_kernel_adaptive(const RadialKernel& k, DRPoint p, DRPoint q, const RuleLadder& ladder,
                         double rel_tol = 1e-8);

double appell_f2(double a, double b1, double b2, double c1, double c2, double x, double y,
                 double series_tol = 1e-15, int max_degree = 20000);
double appell_prefactor(int m, double gamma, double c_norm);
double appell_prefactor_integral_form(int m, double gamma, double c_norm);
double j_kernel_appell(const RadialKernel& k, DRPoint p, DRPoint q, double series_tol = 1e-15);

double kbar(const RadialKernel& k, DRPoint p, DRPoint q, const RuleLadder& ladder);
double kernel_difference(const RadialKernel& k, DRPoint p, DRPoint q, const RuleLadder& ladder);

struct InequalityReport {
    long n_samples = 0;
    long violations = 0;
    long indeterminate = 0;
    long flagged = 0;
    double min_gap = 0.0;
    double min_rel_gap = 0.0;
    DRPoint worst_p, worst_q;
    std::uint64_t seed = 0;
};

std::vector<std::pair<DRPoint, DRPoint>> draw_outer_pairs(std::uint64_t seed, long n);

InequalityReport verify_kernel_inequality(const RadialKernel& k, std::uint64_t seed, long n_samples,
                                          const RuleLadder& ladder);
InequalityReport verify_kernel_inequality_serial(const RadialKernel& k, std::uint64_t seed,
                                                 long n_samples, const RuleLadder& ladder);

// \int_O Kbar(x, y*) dy by quadrature in the (sigma,tau) plane over the quadrant truncated at
// R_out, plus the far-field tail.
double zero_order_coefficient(const RadialKernel& k, DRPoint p, double R_out, const RuleLadder& ladder,
                              int grid_res = 24);

enum class Side { outer, inner };

// \int K(|x-y|) dy over {y in side, |y| > r_min} in R^{2m}, by rays from x with exact radial
// moments. x must not lie in the region.
double cone_region_integral(const RadialKernel& k, DRPoint p, Side side, double r_min, int angular_res);

// Continuum zero-order term via the ray integral: \int_I K(|x-y|) dy.
double zero_order_ray(const RadialKernel& k, DRPoint p, int angular_res = 0);

}  // namespace saddle
