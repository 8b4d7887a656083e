#pragma once

#include <string>
#include <vector>

#include "saddle/energy.hpp"

namespace saddle {

struct ScalingReport {
    std::vector<double> S;
    std::vector<double> E_total, E_kin, E_pot;
    int fit_from = 0;  // index of the first S used in the fit
    double slope = 0.0;
    double intercept = 0.0;
    double fit_residual = 0.0;  // rms of the log-log fit
    double theoretical_exponent = 0.0;
    std::string regime;
    // E / (S^{2m-1} log S) per S and its spread (max - min) / min; only filled at gamma = 1/2
    std::vector<double> flatness_values;
    double flatness = -1.0;
};

double theoretical_exponent(int m, double gamma);
std::string scaling_regime(double gamma);

ScalingReport energy_scan(const Grid& g, const KernelTable& t, const Profile& u, const Potential& G,
                          const std::vector<double>& S_list, double gamma);

struct LineFit {
    double slope, intercept, rms;
};
// Least squares y = intercept + slope x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

double phi_S(double r, double S);
double psi_S(DRPoint p, double S, double mu);
double d_S(DRPoint p, double S, double mu);

// Max one-sided difference quotient of u over grid edges inside B_radius, together with
// u(x)/dist(x, C) against the cone; never below floor.
double lipschitz_estimate(const Grid& g, const Profile& u, double radius, double floor = 0.1);

struct CompetitorReport {
    double S = 0.0;
    double mu = 0.0;
    bool H1 = false, H2 = false, H3 = false, H4 = false, H5 = false;
    double max_h3_gap = 0.0;
    double lipschitz_w = 0.0;
    double h5_constant = 0.0;
    double h5_worst_ratio = 0.0;  // max |w(x)-w(y)| dist(x,C) / |x-y| over the constrained pairs
    double energy_u = 0.0;
    double energy_w = 0.0;
    bool energy_ok = false;
    bool all() const { return H1 && H2 && H3 && H4 && H5 && energy_ok; }
};

struct Competitor {
    Profile w;
    CompetitorReport report;
};

// w = min{u, Psi_S} inside B_{S+2}, w = u outside.
Competitor build_competitor(const Grid& g, const KernelTable& t, const Profile& u, const Potential& G,
                            double S, double mu);

// Measure in R^{2m} of the closed annulus B_{S+2} \ B_S joined with the strip mu dist <= 1 in
// B_{S+2}, by cell-centre summation at spacing h. Cells centred on the cone count the exact
// fraction of the square that lies in the strip.
double measure_omega_S(double S, double mu, double h, int m);

}  // namespace saddle
