#include "qcorner/lsurface.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcorner/errors.hpp"

namespace qcorner {

namespace {

Rational pow2(int k) { return Rational(std::int64_t{1} << k); }

}  // namespace

LPoint::LPoint(double r, double phi) : r_(r), remainder_(phi) {
    if (!(r > 0.0)) throw Error("LPoint requires r > 0");
}

LPoint LPoint::from_pi_multiple(double r, Rational turns, double remainder) {
    if (!(r > 0.0)) throw Error("LPoint requires r > 0");
    LPoint z;
    z.r_ = r;
    z.pi_turns_ = turns;
    z.remainder_ = remainder;
    return z;
}

int LPoint::compare_phi(const Rational& q) const {
    if (remainder_ == 0.0) {
        auto c = pi_turns_ <=> q;
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    double d = (pi_turns_ - q).value() * kPi + remainder_;
    return d < 0.0 ? -1 : (d > 0.0 ? 1 : 0);
}

cplx log_L(const LPoint& z) { return {std::log(z.r()), z.phi()}; }

cplx pow_L(const LPoint& z, double alpha) {
    if (alpha == 0.0) return 1.0;
    return std::polar(std::pow(z.r(), alpha), alpha * z.phi());
}

LPoint pow_map(const LPoint& z, const Rational& rho) {
    if (!(rho > Rational(0))) throw Error("pow_map requires rho > 0");
    return LPoint::from_pi_multiple(std::pow(z.r(), rho.value()), z.pi_turns() * rho, z.remainder() * rho.value());
}

LPoint pow_map(const LPoint& z, double rho) {
    if (!(rho > 0.0)) throw Error("pow_map requires rho > 0");
    return LPoint(std::pow(z.r(), rho), rho * z.phi());
}

LPoint mul_map(const LPoint& a, const LPoint& b) {
    return LPoint::from_pi_multiple(a.r() * b.r(), a.pi_turns() + b.pi_turns(), a.remainder() + b.remainder());
}

LPoint embed(cplx w) {
    if (w.imag() == 0.0 && w.real() <= 0.0) throw ProjectionError("point on the closed negative real axis");
    return LPoint(std::abs(w), std::arg(w));
}

cplx project(const LPoint& z) {
    if (z.compare_phi(1) >= 0 || z.compare_phi(-1) <= 0)
        throw ProjectionError("|arg| >= pi has no image in C \\ R_{<=0}");
    return std::polar(z.r(), z.phi());
}

Sector Sector::TPrime(int k) {
    if (k < 1) throw Error("T'_k requires k >= 1");
    return {Kind::TPrime, k};
}

bool Sector::contains(const LPoint& z) const {
    const Rational lo = kind == Kind::T ? Rational(0) : pow2(k - 1);
    return z.compare_phi(lo) >= 0 && z.compare_phi(pow2(k)) <= 0;
}

int sector_level(const LPoint& z) {
    if (z.compare_phi(0) < 0) throw OutOfSector("negative argument has no positive sector level");
    int k = 0;
    while (z.compare_phi(pow2(k)) > 0) {
        if (++k > 60) throw OutOfSector("argument too large");
    }
    return k;
}

LPoint reflect_tau(int k, const LPoint& z) {
    if (k < 0 || !Sector::TPrime(k + 1).contains(z))
        throw OutOfSector("tau_" + std::to_string(k) + " is defined on T'_" + std::to_string(k + 1) + " only");
    return LPoint::from_pi_multiple(z.r(), pow2(k + 1) - z.pi_turns(), -z.remainder());
}

std::pair<cplx, cplx> tau_log_identity_check(int k, const LPoint& z) {
    cplx lhs = std::conj(log_L(reflect_tau(k, z)));
    // log(z) - i 2^{k+1} pi, with the pi-multiples combined before rounding.
    double im = (z.pi_turns() - pow2(k + 1)).value() * kPi + z.remainder();
    cplx rhs(std::log(z.r()), im);
    return {lhs, rhs};
}

std::pair<cplx, cplx> tau_power_identity_check(int k, const LPoint& z, double alpha) {
    cplx lhs = std::conj(pow_L(reflect_tau(k, z), alpha));
    cplx rhs = std::polar(1.0, -alpha * pow2(k + 1).value() * kPi) * pow_L(z, alpha);
    return {lhs, rhs};
}

double QuadraticDomain::radius_at(double phi) const { return c * std::exp(-C * std::sqrt(std::abs(phi))); }

bool QuadraticDomain::contains(const LPoint& z) const {
    if (!mirrored && z.compare_phi(0) < 0) return false;
    return z.r() < radius_at(z.phi());
}

bool quad_contains(const QuadraticDomain& w, const LPoint& z) { return w.contains(z); }

QuadraticDomain quad_intersect(const QuadraticDomain& a, const QuadraticDomain& b) {
    return {std::min(a.c, b.c), std::max(a.C, b.C), a.mirrored && b.mirrored};
}

}  // namespace qcorner
