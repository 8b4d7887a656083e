#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "saddle/kernels.hpp"
#include "saddle/solver.hpp"

namespace saddle {

// Sectioned key-value run description. Every field has a default so a config file only needs
// the keys it changes.
struct RunConfig {
    // [kernel]
    std::string family = "fractional";
    double gamma = 0.5;
    int m = 1;
    double lambda = 1.0;
    double Lambda = 1.0;
    std::string c_norm = "1";  // a number or "standard"
    double power = 2.0;
    std::string table;
    // [grid]
    double R = 16.0;
    double h = 0.25;
    double R_out = 0.0;
    // [solver]
    int max_iters = 5000;
    double grad_tol = 1e-6;
    std::uint64_t seed = 0;
    double mu0 = 1.0;
    std::vector<double> R_schedule;
    bool override_positivity = false;
    // [experiment]
    std::vector<double> S_list;
    double competitor_S = 0.0;  // 0 picks the largest S with S + 4 < R, capped at R/2
    long samples = 10000;
    // [output]
    std::string out = ".";
    bool plots = true;
};

std::vector<double> parse_list(const std::string& s);
std::string format_list(const std::vector<double>& v);

RunConfig parse_config(const std::string& path);
// Field-level messages; empty when the config is usable.
std::vector<std::string> validate_config(const RunConfig& c);
// Throws ConfigError with every violation.
void require_valid(const RunConfig& c);

double resolve_c_norm(const RunConfig& c);
RadialKernel make_kernel(const RunConfig& c);
SolverConfig make_solver_config(const RunConfig& c);
double default_competitor_S(const RunConfig& c);

}  // namespace saddle
