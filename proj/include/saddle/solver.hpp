#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "saddle/energy.hpp"
#include "saddle/operator.hpp"

namespace saddle {

struct SolverConfig {
    double R = 16.0;
    double h = 0.25;
    double R_out = 0.0;  // 0 means 1.5 R
    double gamma = 0.5;
    int m = 1;
    int max_iters = 5000;
    double armijo_c = 1e-4;
    int max_backtracks = 50;
    double grad_tol = 1e-6;  // relative to the initial projected-gradient sup-norm
    double mu0 = 1.0;        // slope of the initial guess
    std::uint64_t seed = 0;
    double init_noise = 0.0;  // uniform perturbation of the initial guess, clamped to [0,1]
    std::vector<double> R_schedule;
};

// min{1, mu0 dist(x, C)} times a cutoff that is 1 on [0, R-2] and linear down to 0 at R.
Profile initial_guess(const Grid& g, double mu0);

struct SolveResult {
    Profile u;
    EnergyBreakdown energy;       // in B_R
    std::vector<double> trace;    // B_R energy after every accepted step, starting with the initial guess
    int iterations = 0;
    bool converged = false;
    double pg_initial = 0.0;
    double pg_final = 0.0;
    std::string status;
};

// Projected gradient descent on the B_R energy, constrained to 0 <= u <= 1.
SolveResult minimize(const Grid& g, const KernelTable& t, const DiscreteOperator& op, const Potential& G,
                     const Profile& init, const SolverConfig& cfg);

struct ContinuationStage {
    double R = 0.0;
    SolveResult result;
    double energy_core = 0.0;  // E(u_R, B_4)
    double sup_diff = -1.0;    // against the previous stage on the common ball, -1 for the first stage
    double common_radius = 0.0;
};

struct ContinuationResult {
    std::vector<ContinuationStage> stages;
    Grid grid;  // grid of the last stage
    bool stable = true;  // sup differences shrink stage to stage and the last one is within 0.1
};

ContinuationResult continuation(const SolverConfig& cfg, const RadialKernel& k, const Potential& G,
                                const TableOptions& opt = {});

}  // namespace saddle
