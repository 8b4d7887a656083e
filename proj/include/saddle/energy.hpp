#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "saddle/doubly_radial.hpp"
#include "saddle/kernels.hpp"
#include "saddle/quadrature.hpp"

namespace saddle {

// Cell-centred nodes of the (s,t) half-quadrant 0 <= t < s. Nodes with |x| <= R come first
// (the unknowns), then the exterior ring R < |x| <= R_out where the profile is zero.
struct Grid {
    double R = 0.0;
    double h = 0.0;
    double R_out = 0.0;
    int m = 1;
    bool lattice = true;  // false for hand-built node lists (no neighbour structure)
    std::size_t n_inner = 0;
    std::vector<DRPoint> nodes;
    std::vector<int> i, j;  // cell indices, node = ((i+1/2)h, (j+1/2)h)
    std::vector<double> weight;

    std::size_t size() const { return nodes.size(); }
    // -1 when the cell is not a node.
    long index_of(int ci, int cj) const;

    int span = 0;
    std::vector<long> lookup;  // span x span cell table
};

Grid build_grid(double R, double h, int m, double R_out = 0.0);
// Arbitrary node list; weights follow the same volume element. No local correction is possible.
Grid custom_grid(int m, double h, double R, const std::vector<DRPoint>& inner,
                 const std::vector<DRPoint>& exterior = {});

// omega_{m-1}^2 s^{m-1} t^{m-1} h^2
double cell_weight(int m, double h, DRPoint p);

// Values of the O-representation on the inner nodes; the extension is odd across the cone and
// zero outside B_R.
using Profile = Eigen::VectorXd;

struct Potential {
    std::function<double(double)> G;
    std::function<double(double)> f;  // f = -G'
};

Potential allen_cahn();
Potential zero_potential();

// Lattice-minus-continuum constant of sum_{Z^2 \ 0} z_1^2 |z|^{-2-2gamma}.
double lattice_constant(double gamma);
// k2 with \int_{R^{2m-2}} K(sqrt(r^2 + |v|^2)) dv ~ k2 r^{-2-2gamma} near 0.
double transverse_coeff(const RadialKernel& k);

struct TableOptions {
    bool local_correction = true;
    bool exterior_tail = true;
    int ray_res = 0;  // 0 picks the integrator default
    double memory_cap_bytes = 2.0e9;
};

struct KernelTable {
    std::size_t n = 0;
    int m = 1;
    double h = 0.0;
    double kappa = 0.0;
    Eigen::VectorXd weight;
    Eigen::MatrixXd W;  // (Kbar(x,y) - Kbar(x,y*)) mu_x mu_y plus correction edges, zero diagonal
    Eigen::MatrixXd P;  // Kbar(x,y*) mu_x mu_y, diagonal included
    Eigen::VectorXd exterior_grid;       // sum of W over exterior grid nodes
    Eigen::VectorXd exterior_tail;       // \int_{O \ B_{R_out}} (Kbar(x,y) - Kbar(x,y*)) dy * mu_x
    Eigen::VectorXd zero_order;          // \int_O Kbar(x,y*) dy
    Eigen::VectorXd zero_order_lattice;  // sum over all grid nodes of Kbar(x,y*) mu_y
    long flagged_pairs = 0;              // quadrature reached max order without converging

    double min_difference() const;
};

KernelTable build_kernel_table(const Grid& g, const RadialKernel& k, const TableOptions& opt = {});
KernelTable build_kernel_table_serial(const Grid& g, const RadialKernel& k, const TableOptions& opt = {});

enum class ZeroOrderMode { continuum, lattice };

struct EnergyBreakdown {
    double kinetic_in_in = 0.0;
    double kinetic_in_out = 0.0;
    double potential = 0.0;
    double total = 0.0;
};

// Inner nodes with |x| <= S.
std::vector<char> ball_mask(const Grid& g, double S);

EnergyBreakdown total_energy(const Grid& g, const KernelTable& t, const Profile& w,
                             const Potential& G, double S,
                             ZeroOrderMode mode = ZeroOrderMode::continuum);
EnergyBreakdown total_energy_serial(const Grid& g, const KernelTable& t, const Profile& w,
                                    const Potential& G, double S,
                                    ZeroOrderMode mode = ZeroOrderMode::continuum);

// Pair form over inner node subsets:
// 2 sum (w_x - w_y)^2 W_xy + 4 sum (w_x^2 + w_y^2) P_xy.
double interaction(const KernelTable& t, const Profile& w, const std::vector<long>& A,
                   const std::vector<long>& B);

// v = min{1, |u|} node by node.
Profile truncate_profile(const Profile& u);

}  // namespace saddle
