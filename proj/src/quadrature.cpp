#include "qcorner/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "qcorner/errors.hpp"

namespace qcorner {

namespace {

QuadratureRule compute(int n, double a, double b) {
    // Symmetric tridiagonal Jacobi matrix of the monic recurrence.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        double diag;
        if (k == 0)
            diag = (b - a) / (a + b + 2.0);
        else
            diag = (b * b - a * a) / (s * (s + 2.0));
        J(k, k) = diag;
        if (k + 1 < n) {
            const double k1 = k + 1.0;
            const double t = 2.0 * k1 + a + b;
            // The factor (k1 + a + b) / (t - 1) cancels at k1 = 1; keep the cancelled form there.
            const double ratio = (k == 0) ? 1.0 : (k1 + a + b) / (t - 1.0);
            const double off = 4.0 * k1 * (k1 + a) * (k1 + b) * ratio / (t * t * (t + 1.0));
            J(k, k + 1) = J(k + 1, k) = std::sqrt(off);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success) throw NonConvergence("Golub-Welsch eigenproblem failed");
    const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                std::lgamma(a + b + 2.0));
    QuadratureRule r;
    r.nodes = es.eigenvalues();
    r.weights = mu0 * es.eigenvectors().row(0).transpose().array().square();
    return r;
}

}  // namespace

QuadratureRule gauss_jacobi(int n, double a, double b) {
    if (n < 1 || a <= -1.0 || b <= -1.0) throw Error("gauss_jacobi: need n >= 1 and exponents > -1");
    static std::mutex mu;
    static std::map<std::tuple<int, double, double>, QuadratureRule> cache;
    const auto key = std::make_tuple(n, a, b);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    QuadratureRule r = compute(n, a, b);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(r)).first->second;
}

}  // namespace qcorner
