#include <doctest.h>

#include <cmath>
#include <random>

#include "qcorner/reflekt.hpp"
#include "qcorner/scmap.hpp"

using namespace qcorner;

namespace {

AnalyticChart identity_chart(double radius = 10.0) {
    SeriesXcd c = SeriesXcd::Zero(2);
    c[1] = 1.0;
    return AnalyticChart::from_series(c, radius);
}

// F(w) = w / (1 + i c w): a Moebius map fixing 0 with F'(0) = 1, pole at i/c.
cplx moebius_F(cplx w, double c) { return w / (1.0 + cplx(0, c) * w); }

SeriesXcd moebius_F_jet(double c, cplx rotation, int order) {
    SeriesXcd j = SeriesXcd::Zero(order);
    cplx p = rotation;
    for (int n = 1; n < order; ++n) {
        j[n] = p;
        p *= cplx(0, -c) * rotation;
    }
    return j;
}

// Riemann map of H onto the corner F(sector of opening alpha pi): both arcs are circle arcs.
MapGerm curved_corner_germ(const SymbolicReal& alpha, double c) {
    const double a = alpha.value();
    MapGerm g;
    g.alpha = alpha;
    g.eval = [a, c](cplx z) { return moebius_F(std::pow(z, a), c); };
    // |F(w)| <= 2|w| when c|w| <= 1/2.
    g.tbar = std::pow(0.5 / c, 1.0 / a);
    g.E = 2.0;
    g.arc1 = PuiseuxArc::from_jet(moebius_F_jet(c, 1.0, 40), SymbolicReal(0), 1.0 / c);
    g.arc2 = PuiseuxArc::from_jet(moebius_F_jet(c, std::polar(1.0, a * kPi), 40), alpha, 1.0 / c);
    return g;
}

cplx curved_oracle(const LPoint& z, double a, double c) { return moebius_F(pow_L(z, a), c); }

}  // namespace

TEST_CASE("schwarz_reflect: classical cases") {
    auto id = identity_chart();
    auto sq = schwarz_reflect(id, [](cplx z) { return z * z; }, 1.0);
    auto rt = schwarz_reflect(id, [](cplx z) { return std::sqrt(z); }, 1.0);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int i = 0; i < 100; ++i) {
        cplx z(u(rng), u(rng));
        CHECK(std::abs(sq(z) - z * z) < 1e-14);
        // Branch tracking: the reflected square root continues the principal branch below the axis.
        CHECK(std::abs(rt(z) - std::sqrt(z)) < 1e-14);
    }
    CHECK_THROWS_AS(sq(cplx(1.5, -0.1)), OutsideExtensionDomain);
}

TEST_CASE("schwarz_reflect: curved boundary extends the analytic function") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    for (int trial = 0; trial < 20; ++trial) {
        SeriesXcd p = SeriesXcd::Zero(4);
        p[1] = std::polar(1.0, 3.0 * u(rng));
        p[2] = cplx(u(rng), u(rng));
        p[3] = cplx(u(rng), u(rng));
        auto phi = AnalyticChart::from_series(p, 1.0);
        // f = phi o h with h real on the real axis, so f([0, r)) lies on phi(R).
        auto h = [](cplx z) { return 0.8 * z + 0.3 * z * z - 0.1 * z * z * z; };
        auto f = [phi, h](cplx z) { return phi(h(z)); };
        auto ext = schwarz_reflect(phi, f, 0.3);
        for (int i = 0; i < 20; ++i) {
            cplx z(u(rng), -std::abs(u(rng)));
            CHECK(std::abs(ext(z) - f(z)) < 1e-13);
        }
    }
}

TEST_CASE("build_chi") {
    auto chi_id = build_chi(identity_chart(1.0));
    CHECK(std::abs(chi_id(cplx(0.01, 0.02)) - cplx(0.01, 0.02)) < 1e-16);

    // phi(z) = z / (1 - z) has real coefficients, so chi is the identity.
    SeriesXcd g = SeriesXcd::Ones(40);
    g[0] = 0.0;
    auto chi_g = build_chi(AnalyticChart::from_series(g, 1.0));
    for (Eigen::Index l = 2; l < chi_g.coeffs.size(); ++l) CHECK(std::abs(chi_g.coeffs[l]) < 1e-12);

    // phi(z) = z + a z^2, inverse by the quadratic formula.
    const cplx a(0.1, 0.35);
    SeriesXcd q = SeriesXcd::Zero(3);
    q[1] = 1.0;
    q[2] = a;
    const double r = 1.0;
    auto chi = build_chi(AnalyticChart::from_series(q, r));
    CHECK(std::abs(chi(0.0)) == 0.0);
    CHECK(std::abs(std::abs(chi.coeffs[1]) - 1.0) < 1e-15);
    for (Eigen::Index l = 1; l < chi.coeffs.size(); ++l)
        CHECK(std::abs(chi.coeffs[l]) <= 4.0 * std::pow(16.0 / r, l - 1.0));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        cplx w = std::polar(r / 16.0 * std::abs(u(rng)), kPi * u(rng));
        const cplx pre = (-1.0 + std::sqrt(1.0 + 4.0 * a * w)) / (2.0 * a);
        const cplx want = std::conj(std::conj(pre) + a * std::conj(pre) * std::conj(pre));
        CHECK(std::abs(chi(w) - want) < 1e-13);
        CHECK(std::abs(chi(w)) <= 4.0 * std::abs(w));
    }
    CHECK(koebe_certificate(chi));

    SeriesXcd bad = q;
    bad[1] = 2.0;
    CHECK_THROWS_AS(build_chi(AnalyticChart::from_series(bad, 1.0)), NormalizationError);
}

TEST_CASE("tower constants follow their recurrences exactly") {
    for (const auto& alpha : {SymbolicReal(Rational(1, 2)), SymbolicReal::generator("sqrt2")}) {
        auto tw = build_tower(curved_corner_germ(alpha, 0.7), 8);
        const double a = alpha.value();
        REQUIRE(tw.depth() == 8);
        CHECK(std::pow(tw.r0 / (16.0 * tw.E), 1.0 / a) <= tw.germ.tbar * (1 + 1e-15));
        CHECK(tw.r0 <= tw.rbar);
        for (int k = 0; k <= 8; ++k) {
            const auto& L = tw.levels[k];
            CHECK(L.koebe_ok);
            CHECK(L.t == std::pow(L.r / (16.0 * L.E), 1.0 / a));
            CHECK(L.s == std::min(L.t, std::pow(L.E, -2.0 / a)));
            if (k > 0) {
                CHECK(L.r * 32.0 == tw.levels[k - 1].r);
                CHECK(L.E == tw.levels[k - 1].E * 4.0);
                CHECK(tw.levels[k - 1].t / L.t == doctest::Approx(tw.level_ratio()).epsilon(1e-13));
            }
            CHECK(L.E == tw.E * std::ldexp(1.0, 2 * k));
        }
        auto ce = certify_quadratic_domain(tw);
        for (int k = 1; k <= 8; ++k) CHECK(tw.levels[k].t >= std::pow(ce.K_growth, -k) * (1 - 1e-12));
    }
}

TEST_CASE("sector tower reproduces exp(alpha log z)") {
    for (const auto& alpha : {SymbolicReal(Rational(1, 3)), SymbolicReal(Rational(1, 2)), SymbolicReal::generator("sqrt2")}) {
        const double a = alpha.value();
        auto tw = build_tower(model_corner_germ(alpha), 6);
        for (int k = 0; k <= 6; ++k) CHECK(tw.levels[k].koebe_ok);
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 300; ++i) {
            const double phi = (u(rng) * 2.0 - 1.0) * 63.0 * kPi;
            const LPoint z(tw.levels[6].t * u(rng), phi);
            if (!in_extension_domain(tw, z)) continue;
            const cplx v = evaluate_extension(tw, z), want = pow_L(z, a);
            CHECK(std::abs(v - want) <= 1e-10 * std::abs(want));
        }
        // The example point (r, 3 pi).
        const LPoint z3(0.5 * tw.levels[2].t, 3.0 * kPi);
        CHECK(std::abs(evaluate_extension(tw, z3) - std::exp(a * cplx(std::log(z3.r()), 3 * kPi))) <=
              1e-10 * std::abs(pow_L(z3, a)));
    }
}

TEST_CASE("curved corner: tower matches the closed-form continuation") {
    const double c = 0.7;
    for (const auto& alpha : {SymbolicReal(Rational(1, 2)), SymbolicReal(Rational(3, 2)), SymbolicReal::generator("sqrt2", Rational(1, 2))}) {
        const double a = alpha.value();
        auto tw = build_tower(curved_corner_germ(alpha, c), 5);
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int tested = 0;
        for (int i = 0; i < 400; ++i) {
            const double phi = (u(rng) * 2.0 - 1.0) * 31.0 * kPi;
            const LPoint z(tw.levels[5].t * std::pow(u(rng), 3.0), phi);
            if (!in_extension_domain(tw, z)) continue;
            ++tested;
            const cplx want = curved_oracle(z, a, c);
            CHECK(std::abs(evaluate_extension(tw, z) - want) <= 1e-10 * std::abs(want));
        }
        CHECK(tested > 300);

        // Both pieces agree on the rays fixed by tau_k.
        for (int k = 0; k < 5; ++k) {
            const LPoint ray = LPoint::from_pi_multiple(0.3 * tw.levels[k + 1].t, Rational(std::int64_t(1) << k));
            const cplx direct = evaluate_level(tw, k, ray), refl = reflected_value(tw, k, ray);
            CHECK(std::abs(direct - refl) <= 1e-10 * std::abs(direct));
        }
        // |Phi_k(z)| <= E_k |z|^alpha on T_k cut to t_k.
        for (int k = 0; k <= 5; ++k)
            for (int i = 0; i < 20; ++i) {
                const LPoint z(tw.levels[k].t * u(rng), std::ldexp(1.0, k) * kPi * u(rng));
                CHECK(std::abs(evaluate_level(tw, k, z)) <= tw.levels[k].E * std::pow(z.r(), a));
            }
    }
}

TEST_CASE("certified quadratic domain") {
    auto tw = build_tower(model_corner_germ(SymbolicReal(Rational(1, 2))), 6);
    auto ce = certify_quadratic_domain(tw);
    CHECK(ce.quad.mirrored);
    CHECK(ce.max_phi == doctest::Approx(63.0 * kPi));
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double phi = (2.0 * u(rng) - 1.0) * ce.max_phi;
        const LPoint z(ce.quad.radius_at(phi) * u(rng), phi);
        REQUIRE(ce.contains(z));
        CHECK(in_extension_domain(tw, z));
        const cplx want = pow_L(z, 0.5);
        CHECK(std::abs(evaluate_extension(tw, z) - want) <= 1e-10 * std::abs(want));
    }
    // A deeper tower keeps (c, C) and reaches further.
    auto deeper = certify_quadratic_domain(build_tower(model_corner_germ(SymbolicReal(Rational(1, 2))), 8));
    CHECK(deeper.quad.c == ce.quad.c);
    CHECK(deeper.quad.C == ce.quad.C);
    CHECK(deeper.max_phi > ce.max_phi);

    CHECK_THROWS_AS(evaluate_extension(tw, LPoint(0.5, 200.0 * kPi)), OutsideExtensionDomain);
    CHECK_THROWS_AS(certify_quadratic_domain(build_tower(model_corner_germ(SymbolicReal(1)), 1)), InvalidDomain);
}

TEST_CASE("tower input validation") {
    auto g = model_corner_germ(SymbolicReal(Rational(1, 2)));
    g.tbar = 0.0;
    CHECK_THROWS_AS(build_tower(g, 3), GermTooSmall);
    auto h = model_corner_germ(SymbolicReal(Rational(1, 2)));
    h.arc1 = PuiseuxArc::from_graph(2, {0.0, 0.0, 1.0}, SymbolicReal(0));
    CHECK_THROWS_AS(build_tower(h, 3), NormalizationError);
    // An understated growth constant is caught by the sampled bound.
    auto lie = curved_corner_germ(SymbolicReal(Rational(1, 2)), 0.7);
    lie.E = 0.01;
    CHECK_THROWS_AS(build_tower(lie, 3), ImageEscapesChart);
}
