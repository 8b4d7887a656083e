#pragma once

#include <vector>

namespace saddle {

// Nodes/weights on [-1,1] for the weight (1-x)^alpha (1+x)^beta.
struct QuadratureRule {
    int order = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule gauss_jacobi(int n, double alpha, double beta);
QuadratureRule gauss_legendre(int n);

// \int_{-1}^{1} (1-x)^alpha (1+x)^beta dx
double jacobi_weight_mass(double alpha, double beta);

// Rule for the sphere weight (1-theta^2)^{(m-3)/2}, the law of e.w for w uniform on S^{m-1}.
QuadratureRule sphere_rule(int m, int order);

// Successive doublings of the sphere rule, base order up to max order.
struct RuleLadder {
    int m = 1;
    std::vector<QuadratureRule> rules;
    static RuleLadder make(int m, int base_order = 32, int max_order = 256);
    const QuadratureRule& base() const { return rules.front(); }
};

}  // namespace saddle
