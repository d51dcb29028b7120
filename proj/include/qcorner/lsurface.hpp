#ifndef QCORNER_LSURFACE_HPP
#define QCORNER_LSURFACE_HPP

#include <complex>
#include <numbers>
#include <utility>

#include "qcorner/rational.hpp"

namespace qcorner {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

/// A point (r, phi) of the Riemann surface of the logarithm, r > 0, phi
/// unbounded. The argument is stored as an exact multiple of pi plus a
/// floating remainder so that sector boundaries phi = 2^k pi are hit exactly.
class LPoint {
public:
    LPoint(double r, double phi);
    static LPoint from_pi_multiple(double r, Rational turns, double remainder = 0.0);

    double r() const { return r_; }
    double phi() const { return pi_turns_.value() * kPi + remainder_; }
    const Rational& pi_turns() const { return pi_turns_; }
    double remainder() const { return remainder_; }

    /// Sign of phi - q*pi, exact when the remainder is zero.
    int compare_phi(const Rational& q) const;

    friend bool operator==(const LPoint&, const LPoint&) = default;

private:
    LPoint() = default;
    double r_ = 1.0;
    Rational pi_turns_;
    double remainder_ = 0.0;
};

/// log r + i phi.
cplx log_L(const LPoint& z);
/// exp(alpha * log_L(z)); alpha may be any real.
cplx pow_L(const LPoint& z, double alpha);
/// (r^rho, rho*phi); the pi-multiple part stays exact for rational rho.
LPoint pow_map(const LPoint& z, const Rational& rho);
LPoint pow_map(const LPoint& z, double rho);
/// (r1 r2, phi1 + phi2).
LPoint mul_map(const LPoint& a, const LPoint& b);

/// Identification of C \ R_{<=0} with R_{>0} x (-pi, pi).
LPoint embed(cplx w);
/// Inverse of embed; throws ProjectionError when |phi| >= pi.
cplx project(const LPoint& z);

/// T_k = {0 <= phi <= 2^k pi} or T'_k = {2^{k-1} pi <= phi <= 2^k pi} (k >= 1).
struct Sector {
    enum class Kind { T, TPrime };
    Kind kind = Kind::T;
    int k = 0;

    static Sector T(int k) { return {Kind::T, k}; }
    static Sector TPrime(int k);
    bool contains(const LPoint& z) const;
};

/// Smallest k with phi <= 2^k pi for phi >= 0 (so z lies in T_k, and in T'_k when k >= 1).
int sector_level(const LPoint& z);

/// tau_k : T'_{k+1} -> T_k, (r, phi) -> (r, 2^{k+1} pi - phi).
LPoint reflect_tau(int k, const LPoint& z);

/// (conj(log_L(tau_k z)), log_L(z) - i 2^{k+1} pi); the two agree.
std::pair<cplx, cplx> tau_log_identity_check(int k, const LPoint& z);
/// (conj(pow_L(tau_k z, alpha)), exp(-i alpha 2^{k+1} pi) pow_L(z, alpha)).
std::pair<cplx, cplx> tau_power_identity_check(int k, const LPoint& z, double alpha);

/// Standard quadratic domain {0 < r < c exp(-C sqrt|phi|)}. Without the
/// mirror flag only phi >= 0 belongs to it.
struct QuadraticDomain {
    double c = 1.0;
    double C = 1.0;
    bool mirrored = true;

    double radius_at(double phi) const;
    bool contains(const LPoint& z) const;
};

bool quad_contains(const QuadraticDomain& w, const LPoint& z);
QuadraticDomain quad_intersect(const QuadraticDomain& a, const QuadraticDomain& b);

}  // namespace qcorner

#endif  // QCORNER_LSURFACE_HPP
