#ifndef QCORNER_REFLEKT_HPP
#define QCORNER_REFLEKT_HPP

// Continuation of a corner Riemann map to a quadratic domain on the
// Riemann surface of the logarithm by repeated Schwarz reflection.

#include <functional>
#include <memory>
#include <vector>

#include "qcorner/lsurface.hpp"
#include "qcorner/map_germ.hpp"
#include "qcorner/power_series.hpp"

namespace qcorner {

using ComplexFunction = std::function<cplx(cplx)>;

/// A holomorphic function on B(0, radius) with f(0) = 0, kept as a truncated
/// Taylor series together with the reverted series used to seed inversion.
struct AnalyticChart {
    SeriesXcd coeffs;
    SeriesXcd inverse_coeffs;
    double radius = 1.0;

    /// Needs coeffs[0] == 0 and coeffs[1] != 0.
    static AnalyticChart from_series(const SeriesXcd& coeffs, double radius);

    cplx operator()(cplx z) const { return evaluate(coeffs, z); }
    cplx derivative(cplx z) const { return evaluate_derivative(coeffs, z); }
    /// Preimage of w: reverted series polished by Newton. Throws
    /// ImageEscapesChart when the preimage leaves B(0, radius).
    cplx inverse(cplx w) const;
};

/// z -> phi(conj(phi^{-1}(f(conj z)))): reflection of the values of f across
/// the curve phi(R). An involution on functions.
ComplexFunction reflect_across(const AnalyticChart& phi, ComplexFunction f);

/// Extension of f from the closed upper half disk of radius r across [0, r),
/// assuming f([0, r)) lies on phi(R): f itself for Im z >= 0, the reflected
/// formula below the axis. Outside B(0, r) throws OutsideExtensionDomain.
ComplexFunction schwarz_reflect(const AnalyticChart& phi, ComplexFunction f, double r);

/// chi(z) = conj(phi(conj(phi^{-1}(z)))) as a series on B(0, phi.radius / 8).
/// Throws NormalizationError unless |phi'(0)| = 1.
AnalyticChart build_chi(const AnalyticChart& phi, Eigen::Index order = 40);

/// Sampled Koebe certificates for an injective chart with |f'(0)| = 1:
/// |f(z)| <= 4|z| on |z| = r/2 and f^{-1} defined on |w| = r/4.
bool koebe_certificate(const AnalyticChart& f, int samples = 64);

struct TowerLevel {
    int k = 0;
    double r = 0.0;  // chart radius
    double E = 0.0;  // |Phi_k(z)| <= E |z|^alpha on T_k
    double t = 0.0;  // Phi_k is defined on T_k cut to radius t
    double s = 0.0;  // min(t, E^{-2/alpha})
    AnalyticChart phi;
    AnalyticChart chi;
    /// Tail of the chi series beyond its order on B(0, r/32), from the Cauchy bound.
    double chi_tail_bound = 0.0;
    bool koebe_ok = false;
};

struct ReflectionTower {
    MapGerm germ;
    double alpha = 1.0;
    double rbar = 1.0;
    double r0 = 1.0;
    double E = 1.0;
    AnalyticChart phi1;  // the normalized chart of arc1
    std::vector<TowerLevel> levels;
    /// The same construction for z -> conj(Phi(-conj z)), used for arg z < 0.
    std::shared_ptr<const ReflectionTower> twin;

    int depth() const { return static_cast<int>(levels.size()) - 1; }
    /// t_k / t_{k+1}.
    double level_ratio() const { return std::pow(128.0, 1.0 / alpha); }
};

/// The germ z -> conj(Phi(-conj z)) onto the mirrored corner, arcs swapped.
MapGerm mirror_germ(const MapGerm& g);

/// Levels 0..K. The germ's arcs must be regular (multiplicity one). Throws
/// GermTooSmall for a germ with no usable radius and ImageEscapesChart if a
/// sampled value of Phi_k leaves B(0, r_k / 16).
ReflectionTower build_tower(const MapGerm& germ, int K, Eigen::Index order = 40, bool with_twin = true);

/// Phi_k at z in T_k (no radius check beyond the chart guards).
cplx evaluate_level(const ReflectionTower& tower, int k, const LPoint& z);
/// conj(chi_k(Phi_k(tau_k z))) for z in T'_{k+1}; agrees with evaluate_level on arg z = 2^k pi.
cplx reflected_value(const ReflectionTower& tower, int k, const LPoint& z);

bool in_extension_domain(const ReflectionTower& tower, const LPoint& z);
/// The continued map at any z of the tower's domain (both directions).
/// Throws OutsideExtensionDomain elsewhere.
cplx evaluate_extension(const ReflectionTower& tower, const LPoint& z);

struct CertifiedExtension {
    QuadraticDomain quad;
    /// Smallest K with t_k >= K^{-k} for every built level k >= 1.
    double K_growth = 1.0;
    /// The finite tower covers |arg z| <= max_phi.
    double max_phi = 0.0;

    bool contains(const LPoint& z) const { return std::abs(z.phi()) <= max_phi && quad.contains(z); }
};

/// A mirrored standard quadratic domain inside the union of T_k cut to radius t_k
/// over both directions, restricted to the arguments the finite tower reaches.
CertifiedExtension certify_quadratic_domain(const ReflectionTower& tower);

}  // namespace qcorner

#endif  // QCORNER_REFLEKT_HPP
