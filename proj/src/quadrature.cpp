#include "saddle/quadrature.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "saddle/errors.hpp"

namespace saddle {

double jacobi_weight_mass(double alpha, double beta) {
    return std::exp((alpha + beta + 1) * std::log(2.0) + std::lgamma(alpha + 1) + std::lgamma(beta + 1) -
                    std::lgamma(alpha + beta + 2));
}

// Golub-Welsch on the monic Jacobi recurrence.
QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw DomainError("quadrature order must be >= 1");
    if (!(alpha > -1 && beta > -1)) throw DomainError("Jacobi exponents must exceed -1");
    const double ab = alpha + beta;
    Eigen::VectorXd diag(n), off(n > 1 ? n - 1 : 1);
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * k + ab;
        diag(k) = (k == 0) ? (beta - alpha) / (ab + 2) : (beta * beta - alpha * alpha) / (t * (t + 2));
    }
    for (int k = 1; k < n; ++k) {
        const double t = 2.0 * k + ab;
        double b;
        if (k == 1)
            b = 4.0 * (1 + alpha) * (1 + beta) / ((2 + ab) * (2 + ab) * (3 + ab));
        else
            b = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (t * t * (t + 1) * (t - 1));
        off(k - 1) = std::sqrt(b);
    }
    QuadratureRule rule;
    rule.order = n;
    rule.alpha = alpha;
    rule.beta = beta;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mu0 = jacobi_weight_mass(alpha, beta);
    if (n == 1) {
        rule.nodes[0] = diag(0);
        rule.weights[0] = mu0;
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    for (int k = 0; k < n; ++k) {
        rule.nodes[k] = es.eigenvalues()(k);
        const double v = es.eigenvectors()(0, k);
        rule.weights[k] = mu0 * v * v;
    }
    return rule;
}

QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

QuadratureRule sphere_rule(int m, int order) {
    const double a = 0.5 * (m - 3);
    return gauss_jacobi(order, a, a);
}

RuleLadder RuleLadder::make(int m, int base_order, int max_order) {
    if (m < 1) throw DomainError("m must be >= 1");
    RuleLadder l;
    l.m = m;
    if (m == 1) return l;  // the m = 1 kernel is a closed sum
    for (int n = base_order; n <= max_order; n *= 2) l.rules.push_back(sphere_rule(m, n));
    if (l.rules.empty()) l.rules.push_back(sphere_rule(m, base_order));
    return l;
}

}  // namespace saddle
