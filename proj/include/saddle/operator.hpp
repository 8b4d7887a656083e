#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "saddle/energy.hpp"

namespace saddle {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Dense odd-sector operator on the inner nodes, (L w)_x = sum_y L_xy w_y. Off-diagonals are
// -W_xy / mu_x; the diagonal collects every coupling of x, including to the zero exterior, plus
// twice the zero-order coefficient.
struct DiscreteOperator {
    RowMatrix L;
    Eigen::VectorXd weight;
    Eigen::VectorXd exterior;    // coupling to nodes outside B_R, per unit mu_x
    Eigen::VectorXd zero_order;  // Z(x), so that row_sum(x) = 2 Z(x)

    std::size_t size() const { return std::size_t(L.rows()); }
    // diag - sum of off-diagonals - exterior
    Eigen::VectorXd row_sums() const;
};

DiscreteOperator assemble(const KernelTable& t);
DiscreteOperator assemble_serial(const KernelTable& t);

Eigen::VectorXd apply(const DiscreteOperator& op, const Eigen::VectorXd& w);
Eigen::VectorXd apply_serial(const DiscreteOperator& op, const Eigen::VectorXd& w);

// B_R energy from one product: sum mu w (L w) + 2 sum mu G(w). Lw may be passed when known.
double quadratic_energy(const DiscreteOperator& op, const Eigen::VectorXd& w, const Eigen::VectorXd& Lw,
                        const Potential& G);

struct MaxPrincipleReport {
    bool z_pattern = false;
    bool row_sums_positive = false;
    bool monotone_probe = false;
    double min_offdiag = 0.0;  // smallest -L_xy over x != y; >= 0 exactly when the Z pattern holds
    double max_row_sum_error = 0.0;
    int probes = 0;
    int probes_passed = 0;
    int singular_solves = 0;
    double min_probe_value = 0.0;
};

// Row sums are compared against zero_order_coefficient, an integrator independent of the one used
// in assembly.
MaxPrincipleReport check_max_principle_structure(const DiscreteOperator& op, const Grid& g,
                                                 const RadialKernel& k, std::uint64_t seed,
                                                 int probes = 100);

// Inner nodes at cone distance > margin and |x| < R - margin.
std::vector<long> probe_set(const Grid& g, double margin);

struct Residual {
    double sup = 0.0;
    Eigen::VectorXd values;  // L u - f(u) on every inner node
};

Residual residual(const DiscreteOperator& op, const Eigen::VectorXd& u, const Potential& G,
                  const std::vector<long>& probes);

}  // namespace saddle
