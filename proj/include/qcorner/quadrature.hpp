#ifndef QCORNER_QUADRATURE_HPP
#define QCORNER_QUADRATURE_HPP

#include <Eigen/Dense>

namespace qcorner {

/// Nodes and weights on [-1, 1] for the weight (1 - x)^a (1 + x)^b, a, b > -1,
/// by the Golub-Welsch eigenvalue method.
struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

QuadratureRule gauss_jacobi(int n, double a, double b);
inline QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace qcorner

#endif  // QCORNER_QUADRATURE_HPP
