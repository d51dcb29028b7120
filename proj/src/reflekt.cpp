#include "qcorner/reflekt.hpp"

#include <cmath>

#include "qcorner/errors.hpp"

namespace qcorner {

namespace {

constexpr double kKoebeSlack = 1e-9;

// f(z / |f'(0)|), so that the derivative at 0 is unimodular.
AnalyticChart normalized_chart(const PuiseuxArc& arc, Eigen::Index order) {
    if (arc.multiplicity() != 1) throw NormalizationError("arcs of an analytic corner must be regular; normalize first");
    const double scale = std::abs(arc.jet[1]);
    SeriesXcd c = resized(rescale_argument<cplx>(arc.jet, cplx(1.0 / scale)), order);
    return AnalyticChart::from_series(c, arc.radius * scale);
}

cplx germ_at(const MapGerm& g, const LPoint& z) {
    // T_0 is the closed upper half plane.
    if (z.compare_phi(Rational(0)) < 0 || z.compare_phi(Rational(1)) > 0)
        throw OutsideExtensionDomain("germ evaluated off the closed upper half plane");
    if (z.compare_phi(Rational(1)) == 0) return g.eval(cplx(-z.r(), 0.0));
    return g.eval(std::polar(z.r(), z.phi()));
}

cplx apply_chi(const TowerLevel& L, cplx w) {
    if (!(std::abs(w) < L.r / 8.0)) throw ImageEscapesChart("value leaves the disk where chi_" + std::to_string(L.k) + " is defined");
    const cplx u = L.phi.inverse(w);
    return std::conj(L.phi(std::conj(u)));
}

// (r, pi - phi): the point of the twin tower carrying the value at z.
LPoint twin_point(const LPoint& z) { return LPoint::from_pi_multiple(z.r(), Rational(1) - z.pi_turns(), -z.remainder()); }

bool positive_side_ok(const ReflectionTower& t, const LPoint& z) {
    if (z.compare_phi(Rational(0)) < 0) return false;
    const int k = sector_level(z);
    return k <= t.depth() && z.r() < t.levels[k].t;
}

}  // namespace

AnalyticChart AnalyticChart::from_series(const SeriesXcd& coeffs, double radius) {
    if (coeffs.size() < 2 || coeffs[0] != cplx(0.0) || coeffs[1] == cplx(0.0))
        throw InvalidSeries("chart series needs f(0) = 0 and f'(0) != 0");
    if (!(radius > 0.0)) throw InvalidSeries("chart radius must be positive");
    AnalyticChart c;
    c.coeffs = coeffs;
    c.inverse_coeffs = revert<cplx>(coeffs, coeffs.size());
    c.radius = radius;
    return c;
}

cplx AnalyticChart::inverse(cplx w) const {
    const cplx guess = evaluate(inverse_coeffs, w);
    cplx u;
    try {
        u = newton_solve<cplx>(coeffs, w, guess);
    } catch (const InversionFailure&) {
        throw ImageEscapesChart("chart inversion failed to converge");
    }
    if (!(std::abs(u) < radius)) throw ImageEscapesChart("preimage leaves the chart disk");
    return u;
}

ComplexFunction reflect_across(const AnalyticChart& phi, ComplexFunction f) {
    return [phi, f = std::move(f)](cplx z) { return phi(std::conj(phi.inverse(f(std::conj(z))))); };
}

ComplexFunction schwarz_reflect(const AnalyticChart& phi, ComplexFunction f, double r) {
    auto below = reflect_across(phi, f);
    return [f = std::move(f), below = std::move(below), r](cplx z) {
        if (!(std::abs(z) < r)) throw OutsideExtensionDomain("schwarz_reflect: point outside the disk");
        return z.imag() >= 0.0 ? f(z) : below(z);
    };
}

AnalyticChart build_chi(const AnalyticChart& phi, Eigen::Index order) {
    if (std::abs(std::abs(phi.coeffs[1]) - 1.0) > 1e-12)
        throw NormalizationError("build_chi needs |phi'(0)| = 1; rescale the argument first");
    const SeriesXcd inv = revert<cplx>(resized(phi.coeffs, order), order);
    SeriesXcd chi = compose<cplx>(conjugate_coefficients<cplx>(resized(phi.coeffs, order)), inv, order);
    chi[0] = 0.0;
    return AnalyticChart::from_series(chi, phi.radius / 8.0);
}

bool koebe_certificate(const AnalyticChart& f, int samples) {
    for (int i = 0; i < samples; ++i) {
        const double th = 2.0 * kPi * i / samples;
        const cplx z = std::polar(0.5 * f.radius * (1.0 - kKoebeSlack), th);
        if (std::abs(f(z)) > 4.0 * std::abs(z) * (1.0 + kKoebeSlack)) return false;
        const cplx w = std::polar(0.25 * f.radius * (1.0 - kKoebeSlack), th);
        try {
            const cplx u = f.inverse(w);
            if (std::abs(f(u) - w) > 1e-10 * std::abs(w)) return false;
        } catch (const ImageEscapesChart&) {
            return false;
        }
    }
    return true;
}

MapGerm mirror_germ(const MapGerm& g) {
    MapGerm m;
    m.eval = [f = g.eval](cplx z) { return std::conj(f(-std::conj(z))); };
    m.tbar = g.tbar;
    m.alpha = g.alpha;
    m.E = g.E;
    auto flip = [](const PuiseuxArc& a) {
        std::optional<SymbolicReal> dir;
        if (a.direction) dir = -*a.direction;
        PuiseuxArc b = a;
        b.jet = a.jet.conjugate();
        b.direction = dir;
        return b;
    };
    m.arc1 = flip(g.arc2);
    m.arc2 = flip(g.arc1);
    if (g.on_surface)
        m.on_surface = [f = g.on_surface](const LPoint& z) {
            return std::conj(f(LPoint::from_pi_multiple(z.r(), Rational(1) - z.pi_turns(), -z.remainder())));
        };
    return m;
}

ReflectionTower build_tower(const MapGerm& germ, int K, Eigen::Index order, bool with_twin) {
    if (K < 0) throw InvalidDomain("tower depth must be nonnegative");
    if (!(germ.tbar > 0.0) || !(germ.E > 0.0) || !std::isfinite(germ.tbar) || !std::isfinite(germ.E))
        throw GermTooSmall("germ needs a positive radius and a finite growth constant");
    ReflectionTower tw;
    tw.germ = germ;
    tw.alpha = germ.alpha.value();
    tw.E = germ.E;
    tw.phi1 = normalized_chart(germ.arc1, order);
    const AnalyticChart phi2 = normalized_chart(germ.arc2, order);
    tw.rbar = std::min({1.0, 0.5 * tw.phi1.radius, 0.5 * phi2.radius});
    // The largest r0 <= rbar with (r0 / (16 E))^{1/alpha} <= tbar.
    tw.r0 = std::min(tw.rbar, 16.0 * tw.E * std::pow(germ.tbar, tw.alpha));
    if (!(tw.r0 > 0.0)) throw GermTooSmall("no admissible chart radius");

    const SeriesXcd phi1_bar = conjugate_coefficients<cplx>(tw.phi1.coeffs);
    for (int k = 0; k <= K; ++k) {
        TowerLevel L;
        L.k = k;
        if (k == 0) {
            L.r = tw.r0;
            L.E = tw.E;
            L.phi = phi2;
            L.phi.radius = L.r;
        } else {
            const TowerLevel& prev = tw.levels.back();
            L.r = prev.r / 32.0;
            L.E = prev.E * 4.0;
            // phi_k(z) = conj(chi_{k-1}(phi_(1)(conj z)))
            SeriesXcd c = compose<cplx>(conjugate_coefficients<cplx>(prev.chi.coeffs), phi1_bar, order);
            c[0] = 0.0;
            L.phi = AnalyticChart::from_series(c, L.r);
        }
        L.t = std::pow(L.r / (16.0 * L.E), 1.0 / tw.alpha);
        L.s = std::min(L.t, std::pow(L.E, -2.0 / tw.alpha));
        L.chi = build_chi(L.phi, order);
        const double rho = L.r / 32.0;
        L.chi_tail_bound = 8.0 * rho * std::pow(0.5, static_cast<double>(order));
        L.koebe_ok = koebe_certificate(L.phi) && koebe_certificate(L.chi);
        tw.levels.push_back(std::move(L));
    }

    // The inductive bound |Phi_k| <= r_k / 16 on T_k cut to t_k, sampled on the outer circle.
    for (int k = 0; k <= K; ++k) {
        const TowerLevel& L = tw.levels[k];
        const Rational lo = k == 0 ? Rational(0) : Rational(std::int64_t(1) << (k - 1));
        const Rational width = k == 0 ? Rational(1) : lo;
        for (int i = 0; i <= 8; ++i) {
            const LPoint z = LPoint::from_pi_multiple(L.t * (1.0 - 1e-12), lo + width * Rational(i, 8));
            const cplx v = evaluate_level(tw, k, z);
            if (std::abs(v) > L.r / 16.0 * (1.0 + 1e-9))
                throw ImageEscapesChart("Phi_" + std::to_string(k) + " exceeds r_k/16 on its sector");
        }
    }

    if (with_twin) tw.twin = std::make_shared<const ReflectionTower>(build_tower(mirror_germ(germ), K, order, false));
    return tw;
}

cplx evaluate_level(const ReflectionTower& tower, int k, const LPoint& z) {
    if (k < 0 || k > tower.depth()) throw OutsideExtensionDomain("level outside the built tower");
    if (z.compare_phi(Rational(0)) < 0 || sector_level(z) > k) throw OutsideExtensionDomain("point not in T_k");
    const int j = sector_level(z);
    if (j == 0) return germ_at(tower.germ, z);
    return reflected_value(tower, j - 1, z);
}

cplx reflected_value(const ReflectionTower& tower, int k, const LPoint& z) {
    if (k < 0 || k >= tower.depth()) throw OutsideExtensionDomain("reflection level outside the built tower");
    if (!Sector::TPrime(k + 1).contains(z)) throw OutsideExtensionDomain("point not in T'_{k+1}");
    const LPoint w = reflect_tau(k, z);
    return std::conj(apply_chi(tower.levels[k], evaluate_level(tower, k, w)));
}

bool in_extension_domain(const ReflectionTower& tower, const LPoint& z) {
    if (z.compare_phi(Rational(0)) >= 0) return positive_side_ok(tower, z);
    return tower.twin && positive_side_ok(*tower.twin, twin_point(z));
}

cplx evaluate_extension(const ReflectionTower& tower, const LPoint& z) {
    if (!in_extension_domain(tower, z)) throw OutsideExtensionDomain("point outside the continued domain");
    if (z.compare_phi(Rational(0)) >= 0) return evaluate_level(tower, sector_level(z), z);
    const LPoint w = twin_point(z);
    return std::conj(evaluate_level(*tower.twin, sector_level(w), w));
}

CertifiedExtension certify_quadratic_domain(const ReflectionTower& tower) {
    if (tower.depth() < 2) throw InvalidDomain("certification needs at least two reflection levels");
    CertifiedExtension ce;
    const double Kg = tower.level_ratio();
    double t0 = tower.levels[0].t;
    if (tower.twin) t0 = std::min(t0, tower.twin->levels[0].t);
    // T'_k holds arguments up to 2^k pi, so k <= 2 + log2(|phi| / pi) on both sides once |phi| >= pi.
    // With ln u <= (2 / e) sqrt(u), Kg^{-log2 u} >= exp(-C sqrt(pi u)) for the C below.
    ce.quad.c = t0 / (Kg * Kg);
    ce.quad.C = 2.0 * std::log2(Kg) / (std::exp(1.0) * std::sqrt(kPi));
    ce.quad.mirrored = static_cast<bool>(tower.twin);
    const double top = std::ldexp(1.0, tower.depth()) * kPi;
    ce.max_phi = tower.twin ? top - kPi : top;
    ce.K_growth = 1.0;
    for (int k = 1; k <= tower.depth(); ++k)
        ce.K_growth = std::max(ce.K_growth, std::pow(tower.levels[k].t, -1.0 / k));
    return ce;
}

}  // namespace qcorner
