#ifndef QCORNER_POWER_SERIES_HPP
#define QCORNER_POWER_SERIES_HPP

// Truncated dense power series sum_{j=0}^{N-1} c_j z^j as Eigen column vectors.
// All operations truncate to the requested length; coefficients beyond it are
// not represented.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <optional>

#include "qcorner/errors.hpp"

namespace qcorner {

template <typename Scalar>
using Series = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using SeriesXcd = Series<std::complex<double>>;

template <typename Scalar>
Series<Scalar> resized(const Series<Scalar>& a, Eigen::Index n) {
    Series<Scalar> out = Series<Scalar>::Zero(n);
    const Eigen::Index m = std::min(n, a.size());
    out.head(m) = a.head(m);
    return out;
}

template <typename Scalar, typename Arg>
auto evaluate(const Series<Scalar>& a, const Arg& z) {
    using R = decltype(Scalar() * z);
    R acc(0);
    for (Eigen::Index j = a.size() - 1; j >= 0; --j) acc = acc * z + a[j];
    return acc;
}

template <typename Scalar, typename Arg>
auto evaluate_derivative(const Series<Scalar>& a, const Arg& z) {
    using R = decltype(Scalar() * z);
    R acc(0);
    for (Eigen::Index j = a.size() - 1; j >= 1; --j) acc = acc * z + Scalar(static_cast<double>(j)) * a[j];
    return acc;
}

template <typename Scalar>
Series<Scalar> multiply(const Series<Scalar>& a, const Series<Scalar>& b, Eigen::Index n) {
    Series<Scalar> out = Series<Scalar>::Zero(n);
    for (Eigen::Index i = 0; i < std::min(n, a.size()); ++i) {
        if (a[i] == Scalar(0)) continue;
        for (Eigen::Index j = 0; i + j < n && j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

/// outer(inner(z)) for inner(0) = 0, by Horner's scheme in the series ring.
template <typename Scalar>
Series<Scalar> compose(const Series<Scalar>& outer, const Series<Scalar>& inner, Eigen::Index n) {
    if (inner.size() > 0 && inner[0] != Scalar(0))
        throw NonPositiveValuation("inner series of a composition must vanish at 0");
    Series<Scalar> acc = Series<Scalar>::Zero(n);
    for (Eigen::Index j = outer.size() - 1; j >= 0; --j) {
        acc = multiply(acc, inner, n);
        acc[0] += outer[j];
    }
    return acc;
}

/// z -> f(c z).
template <typename Scalar>
Series<Scalar> rescale_argument(const Series<Scalar>& f, Scalar c) {
    Series<Scalar> out = f;
    Scalar p(1);
    for (Eigen::Index j = 0; j < f.size(); ++j) {
        out[j] *= p;
        p *= c;
    }
    return out;
}

/// z -> f(z^m).
template <typename Scalar>
Series<Scalar> substitute_power(const Series<Scalar>& f, int m, Eigen::Index n) {
    Series<Scalar> out = Series<Scalar>::Zero(n);
    for (Eigen::Index j = 0; j < f.size() && j * m < n; ++j) out[j * m] = f[j];
    return out;
}

template <typename Scalar>
Series<Scalar> conjugate_coefficients(const Series<Scalar>& f) {
    return f.conjugate();
}

/// Lowest index with a nonzero coefficient, or nullopt for the zero series.
template <typename Scalar>
std::optional<Eigen::Index> valuation(const Series<Scalar>& f, double tol = 0.0) {
    for (Eigen::Index j = 0; j < f.size(); ++j)
        if (std::abs(f[j]) > tol) return j;
    return std::nullopt;
}

/// (f)^p for f(0) = 1 and real p, via the J.C.P. Miller recurrence.
template <typename Scalar>
Series<Scalar> power_unit(const Series<Scalar>& f, double p, Eigen::Index n) {
    if (f.size() == 0 || std::abs(f[0] - Scalar(1)) > 1e-14)
        throw Error("power_unit requires constant term 1");
    Series<Scalar> a = resized(f, n);
    Series<Scalar> out = Series<Scalar>::Zero(n);
    out[0] = Scalar(1);
    for (Eigen::Index k = 1; k < n; ++k) {
        Scalar s(0);
        for (Eigen::Index j = 1; j <= k; ++j)
            s += (p * static_cast<double>(j) - static_cast<double>(k - j)) * a[j] * out[k - j];
        out[k] = s / static_cast<double>(k);
    }
    return out;
}

/// Compositional inverse g with f(g(z)) = z for f(0) = 0, f'(0) != 0.
template <typename Scalar>
Series<Scalar> revert(const Series<Scalar>& f, Eigen::Index n) {
    if (f.size() < 2 || f[0] != Scalar(0) || std::abs(f[1]) == 0.0)
        throw InversionFailure("series reversion requires f(0) = 0 and f'(0) != 0");
    // Newton iteration in the series ring, doubling precision each step.
    Series<Scalar> g = Series<Scalar>::Zero(n);
    if (n > 1) g[1] = Scalar(1) / f[1];
    Eigen::Index prec = 2;
    while (prec < n) {
        prec = std::min<Eigen::Index>(2 * prec, n);
        Series<Scalar> fg = compose(resized(f, prec), resized(g, prec), prec);
        Series<Scalar> fprime = Series<Scalar>::Zero(std::max<Eigen::Index>(f.size() - 1, 1));
        for (Eigen::Index j = 1; j < f.size(); ++j) fprime[j - 1] = Scalar(static_cast<double>(j)) * f[j];
        Series<Scalar> dfg = compose(resized(fprime, prec), resized(g, prec), prec);
        fg[1] -= Scalar(1);
        // g <- g - (f(g) - z) / f'(g)
        Series<Scalar> inv = Series<Scalar>::Zero(prec);
        inv[0] = Scalar(1) / dfg[0];
        for (Eigen::Index k = 1; k < prec; ++k) {
            Scalar s(0);
            for (Eigen::Index j = 1; j <= k; ++j) s += dfg[j] * inv[k - j];
            inv[k] = -s / dfg[0];
        }
        Series<Scalar> corr = multiply(fg, inv, prec);
        Series<Scalar> gp = resized(g, prec) - corr;
        g.head(prec) = gp;
    }
    g[0] = Scalar(0);
    return g;
}

/// Root-test estimate of the radius of convergence from the tail of the jet.
template <typename Scalar>
double estimate_radius(const Series<Scalar>& f) {
    double best = std::numeric_limits<double>::infinity();
    const Eigen::Index n = f.size();
    for (Eigen::Index j = std::max<Eigen::Index>(2, n / 2); j < n; ++j) {
        double c = std::abs(f[j]);
        if (c == 0.0) continue;
        best = std::min(best, std::pow(c, -1.0 / static_cast<double>(j)));
    }
    return best;
}

/// Solves f(u) = w by Newton's method from `guess`. Throws InversionFailure
/// if the iteration does not settle.
template <typename Scalar>
Scalar newton_solve(const Series<Scalar>& f, Scalar w, Scalar guess, int max_iter = 50) {
    Scalar u = guess;
    const double scale = std::max(std::abs(w), std::abs(guess));
    for (int it = 0; it < max_iter; ++it) {
        Scalar r = evaluate(f, u) - w;
        Scalar d = evaluate_derivative(f, u);
        if (std::abs(d) == 0.0) break;
        Scalar step = r / d;
        u -= step;
        if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * std::max(scale, std::abs(u)))
            return u;
        if (!std::isfinite(std::abs(u))) break;
    }
    if (std::abs(evaluate(f, u) - w) <= 1e-13 * std::max(scale, 1e-300)) return u;
    throw InversionFailure("Newton inversion did not converge");
}

}  // namespace qcorner

#endif  // QCORNER_POWER_SERIES_HPP
