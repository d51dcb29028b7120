#ifndef QCORNER_SCMAP_HPP
#define QCORNER_SCMAP_HPP

// Ground-truth conformal maps: Moebius transforms, Schwarz-Christoffel maps
// of polygons and closed-form corner germs.

#include <vector>

#include "qcorner/map_germ.hpp"
#include "qcorner/rational.hpp"

namespace qcorner {

/// z -> (a z + b) / (c z + d).
struct Mobius {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    Mobius() = default;
    Mobius(cplx a_, cplx b_, cplx c_, cplx d_);

    cplx operator()(cplx z) const;
    cplx derivative(cplx z) const;
    cplx determinant() const { return a * d - b * c; }
    Mobius inverse() const;
    /// (*this)(other(z)).
    Mobius compose(const Mobius& other) const;
};

/// Upper half plane onto the unit disk, z -> (z - i) / (z + i).
Mobius mobius_H_to_disk();
/// Disk automorphism z -> rho (z - a) / (conj(a) z - 1), |a| < 1, |rho| = 1.
Mobius disk_automorphism(cplx a, cplx rho = 1.0);
/// Disk automorphism sending a to 0 with positive derivative there.
Mobius normalize_at(cplx a);
/// M o base with M(base(a)) = 0 and (M o base)'(a) > 0; base must map a into the unit disk.
Mobius normalize_at(const Mobius& base, cplx a);

/// int_{x_from}^{z} prod_k (t - x_k)^{beta_k} dt for z in the closed upper
/// half plane, along the segment from the prevertex x_from (an index into xs).
/// Branches take arg(t - x_k) in [0, pi].
cplx sc_integral(const std::vector<double>& xs, const std::vector<double>& betas, std::size_t from, cplx z);

struct SCPolygon {
    std::vector<cplx> vertices;        // counterclockwise
    std::vector<Rational> alpha;       // interior angles over pi
    std::vector<double> prevertices;   // x_1 = -1, x_2 = 0, x_n = 1
    cplx A{1.0};
    cplx B{0.0};                       // image of x_1
    double residual = 0.0;             // max side-ratio error of the solve
    int iterations = 0;

    std::vector<double> betas() const;
    /// Map value for z in the closed upper half plane.
    cplx operator()(cplx z) const;
    cplx derivative(cplx z) const;
};

/// Solves the parameter problem for a counterclockwise polygon.
/// Throws InvalidAngles if sum(1 - alpha_k) != 2 or some alpha_k is outside (0, 2],
/// NonConvergence if the side-ratio residual stays above tol.
SCPolygon solve_sc(const std::vector<cplx>& vertices, const std::vector<Rational>& alpha, double tol = 1e-10);
/// Angles read off the vertex geometry (snapped to rationals with denominator <= 64).
SCPolygon solve_sc(const std::vector<cplx>& vertices, double tol = 1e-10);

/// Germ of the SC map at prevertex k, translated so that z = 0 is x_k and
/// Phi(0) = 0. The series carries exponents alpha_k + n, n = 0..order-1.
MapGerm sc_corner_germ(const SCPolygon& sc, std::size_t k, int order = 60);

/// Phi(z) = z^alpha on the sector corner between directions 0 and alpha pi.
MapGerm model_corner_germ(const SymbolicReal& alpha);

/// A Riemann-map germ onto the analytic corner bounded by the negative axis
/// (arc1, parametrized by -t) and a regular analytic arc gamma leaving 0 in
/// direction pi (1 + alpha) with |gamma'(0)| = 1. Built as
/// Phi(z) = G(-z^alpha) with a real-coefficient series G solving
/// G(e^{i pi (1 + alpha)} s) = gamma(sigma(s)) for a real reparametrization sigma.
/// Needs (n - 1)(1 + alpha) to avoid the integers for n < order; throws
/// NormalizationError otherwise.
MapGerm straightened_corner_germ(const PuiseuxArc& gamma, const SymbolicReal& alpha, int order = 30);

}  // namespace qcorner

#endif  // QCORNER_SCMAP_HPP
