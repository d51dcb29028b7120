#include <doctest.h>

#include <cmath>
#include <random>

#include "qcorner/domains.hpp"

using namespace qcorner;

namespace {

SymbolicReal q(std::int64_t p, std::int64_t d = 1) { return SymbolicReal(Rational(p, d)); }

// Germ of the circle of radius rad at center + rad e^{i s0}, traversed by arclength:
// t -> rad e^{i s0} (e^{i sign t / rad} - 1).
PuiseuxArc circle_arc(double rad, double s0, int sign, SymbolicReal direction, int order = 25) {
    SeriesXcd jet = SeriesXcd::Zero(order);
    cplx ifac(1.0);
    for (int j = 1; j < order; ++j) {
        ifac *= cplx(0.0, sign / rad) / static_cast<double>(j);
        jet[j] = rad * std::polar(1.0, s0) * ifac;
    }
    return PuiseuxArc::from_jet(jet, direction);
}

}  // namespace

TEST_CASE("corner_angle on rays and slits") {
    CornerSpec quarter{PuiseuxArc::ray(q(0)), PuiseuxArc::ray(q(1, 2)), 0.0, false, std::nullopt};
    CHECK(*corner_angle(quarter).exact == q(1, 2));

    CornerSpec slit_end{PuiseuxArc::ray(q(1)), PuiseuxArc::ray(q(1)), 0.5, true, std::nullopt};
    CHECK(*corner_angle(slit_end).exact == q(2));

    CornerSpec reflex{PuiseuxArc::ray(q(1, 2)), PuiseuxArc::ray(q(0)), 0.0, false, std::nullopt};
    CHECK(*corner_angle(reflex).exact == q(3, 2));
}

TEST_CASE("tangent circles give a cusp") {
    // |z - 1| = 1 and |z - 1/2| = 1/2 near 0, upper component: both leave in direction pi/2.
    auto outer = circle_arc(1.0, kPi, -1, q(1, 2));
    auto inner = circle_arc(0.5, kPi, -1, q(1, 2));
    CHECK(std::abs(outer(0.3) - (1.0 + std::polar(1.0, kPi - 0.3))) < 1e-14);
    CHECK(std::abs(inner(0.3) - (0.5 + 0.5 * std::polar(1.0, kPi - 0.6))) < 1e-14);
    CornerSpec upper{inner, outer, 0.0, false, std::nullopt};
    CHECK_THROWS_AS(corner_angle(upper), CuspAngleZero);

    DomainSpec lune;
    lune.corners.push_back(upper);
    auto lower_outer = circle_arc(1.0, kPi, 1, q(-1, 2));
    auto lower_inner = circle_arc(0.5, kPi, 1, q(-1, 2));
    lune.corners.push_back({lower_outer, lower_inner, 0.0, false, std::nullopt});
    auto sing = singular_points(lune);
    REQUIRE(sing.size() == 1);
    CHECK(sing[0].angles.size() == 2);
    for (const auto& a : sing[0].angles) CHECK(a.exact->is_zero());
}

TEST_CASE("singular points of the slit disk") {
    DomainSpec d;
    d.corners.push_back({PuiseuxArc::ray(q(1)), PuiseuxArc::ray(q(1)), 0.5, true, std::nullopt});
    d.corners.push_back({PuiseuxArc::ray(q(0)), PuiseuxArc::ray(q(0)), -0.5, true, std::nullopt});
    // Interior slit point: two straight components.
    d.corners.push_back({PuiseuxArc::ray(q(0)), PuiseuxArc::ray(q(1)), 0.0, false, std::nullopt});
    d.corners.push_back({PuiseuxArc::ray(q(1)), PuiseuxArc::ray(q(0)), 0.0, false, std::nullopt});
    // A point of the unit circle.
    d.corners.push_back({circle_arc(1.0, 0.0, 1, q(1, 2)), circle_arc(1.0, 0.0, -1, q(-1, 2)), 1.0, false,
                         std::nullopt});
    auto sing = singular_points(d);
    REQUIRE(sing.size() == 2);
    CHECK(sing[0].point == cplx(0.5));
    CHECK(sing[1].point == cplx(-0.5));
    for (const auto& s : sing) {
        REQUIRE(s.angles.size() == 1);
        CHECK(*s.angles[0].exact == q(2));
    }
}

TEST_CASE("polygons") {
    auto square = polygon_domain({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}});
    auto sing = singular_points(square);
    CHECK(sing.size() == 4);
    for (const auto& s : sing) CHECK(*s.angles[0].exact == q(1, 2));

    // Clockwise input and a straight vertex on a side.
    auto with_mid = polygon_domain({{-1, -1}, {-1, 1}, {1, 1}, {1, 0}, {1, -1}});
    CHECK(singular_points(with_mid).size() == 4);

    CHECK_THROWS_AS(polygon_domain({{0, 0}, {1, 0}, {0, 1}}, {q(1, 2), q(1, 2), q(1, 2)}), InvalidDomain);
    auto tri = polygon_domain({{0, 0}, {1, 0}, {0, 1}}, {q(1, 2), q(1, 4), q(1, 4)});
    CHECK(*corner_angle(tri.corners[1]).exact == q(1, 4));

    DomainSpec smooth;
    CHECK(singular_points(smooth).empty());
}

TEST_CASE("rationality_class") {
    CHECK(rationality_class(PiAngle::of(q(1, 2))) == AngleClass::RATIONAL_PI_MULTIPLE);
    CHECK(rationality_class(PiAngle::of(SymbolicReal::generator("sqrt2"))) == AngleClass::IRRATIONAL_PI_MULTIPLE);
    CHECK_THROWS_AS(rationality_class(PiAngle::numeric(0.7071)), UnknownClass);
}

TEST_CASE("inversion at infinity") {
    DomainSpec half_plane;
    half_plane.bounded = false;
    half_plane.ends.push_back({{0.0, q(0)}, {0.0, q(1)}});
    CHECK_THROWS_AS(invert_at_infinity(half_plane), RequiresTranslation);

    // Im z > 1: the line maps to a circle through 0, so infinity is not singular.
    auto shifted = translate(half_plane, cplx(0, 1));
    auto inv = invert_at_infinity(shifted);
    REQUIRE(inv.corners.size() == 1);
    CHECK(*corner_angle(inv.corners[0]).exact == q(1));
    CHECK(arcs_form_analytic_curve(inv.corners[0].arc1, inv.corners[0].arc2, 1e-10));
    CHECK(singular_points(shifted).empty());
    // Oracle: 1/(i + s) lies on the circle |w + i/2| = 1/2.
    for (double t : {0.05, 0.1, 0.2}) {
        CHECK(std::abs(std::abs(inv.corners[0].arc1(t) + cplx(0, 0.5)) - 0.5) < 1e-12);
        CHECK(std::abs(std::abs(inv.corners[0].arc2(t) + cplx(0, 0.5)) - 0.5) < 1e-12);
    }

    // Sector {0 < arg z < alpha pi}, moved off the origin along its bisector.
    for (auto alpha : {q(1, 2), q(3, 2), SymbolicReal::generator("sqrt2", Rational(1, 2))}) {
        DomainSpec sector;
        sector.bounded = false;
        sector.ends.push_back({{0.0, q(0)}, {0.0, alpha}});
        auto moved = translate(sector, std::polar(1.0, alpha.value() * kPi / 2));
        auto corner = invert_at_infinity(moved).corners.at(0);
        CHECK(*corner_angle(corner).exact == alpha);
        auto sing = singular_points(moved);
        REQUIRE(sing.size() == 1);
        CHECK(sing[0].at_infinity);
    }

    DomainSpec exterior;
    exterior.bounded = false;
    CHECK(invert_at_infinity(exterior).corners.empty());
}

TEST_CASE("normalize_corner: regular corner on the negative axis is a fixed point") {
    CornerSpec c{PuiseuxArc::ray(q(1)), PuiseuxArc::ray(q(4, 3)), 0.0, false, std::nullopt};
    auto n = normalize_corner(c);
    CHECK(n.chain.m1 == 1);
    CHECK(n.chain.m2 == 1);
    CHECK(*n.final_angle.exact == q(1, 3));
    for (cplx z : {cplx(-0.1, 0.02), cplx(0.01, 0.05), cplx(-0.03, 0.001)})
        CHECK(std::abs(n.chain.forward(z) - z) < 1e-14);
}

TEST_CASE("normalize_corner: cusp arc against an irrational ray") {
    const auto angle = SymbolicReal::generator("sqrt2", Rational(1, 2));
    auto cusp = PuiseuxArc::from_graph(2, {0.0, 0.0, 0.0, 1.0}, q(0));
    CHECK(cusp.multiplicity() == 2);
    CHECK(std::abs(cusp(0.5) - cplx(0.25, 0.125)) < 1e-15);

    CornerSpec c{cusp, PuiseuxArc::ray(angle), 0.0, false, std::nullopt};
    auto n = normalize_corner(c);
    CHECK(n.chain.m1 == 2);
    CHECK(n.chain.m2 == 1);
    CHECK(*n.angle_after_step1.exact == *n.original_angle.exact / Rational(2));
    CHECK(*n.final_angle.exact * Rational(n.chain.m1 * n.chain.m2) == *n.original_angle.exact);
    CHECK(rationality_class(n.final_angle) == rationality_class(n.original_angle));

    // Level-3 arcs: arc1 is the negative axis, arc2 is regular with unit speed.
    CHECK(n.corner.arc1.multiplicity() == 1);
    CHECK(n.corner.arc2.multiplicity() == 1);
    CHECK(std::abs(std::abs(n.corner.arc2.jet[1]) - 1.0) < 1e-14);
    CHECK(std::abs(std::arg(n.corner.arc2.jet[1]) - (kPi * (1 + n.final_angle.value) - 2 * kPi)) < 1e-12);

    // The chain maps boundary onto boundary.
    for (double t : {1e-3, 1e-2, 5e-2}) {
        cplx w = n.chain.forward(cusp(t));
        CHECK(std::abs(w.imag()) < 1e-12);
        CHECK(w.real() < 0);
        cplx back = n.chain.inverse(n.corner.arc2(t));
        CHECK(std::abs(std::arg(back) - angle.value() * kPi) < 1e-11);
    }

    // forward o inverse = id on sampled interior points.
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ur(1e-4, 5e-2), ua(0.05, 0.95);
    for (int i = 0; i < 200; ++i) {
        const double r = ur(rng), a = ua(rng) * kPi * n.final_angle.value;
        cplx w3 = std::polar(r, kPi + a);
        cplx z = n.chain.inverse(w3);
        CHECK(std::abs(n.chain.forward(z) - w3) < 1e-10 * std::max(1.0, r));
        CHECK(std::arg(z) > 0);
        CHECK(std::arg(z) < angle.value() * kPi);
    }
}

TEST_CASE("TransformChain on series") {
    // Corner of angle pi/2 whose first arc is the cusp t^2 + i t^3.
    auto cusp = PuiseuxArc::from_graph(2, {0.0, 0.0, 0.0, 1.0}, q(0));
    CornerSpec c{cusp, PuiseuxArc::ray(q(1, 2)), 0.0, false, std::nullopt};
    auto n = normalize_corner(c);
    REQUIRE(*n.final_angle.exact == q(1, 4));
    // Level-3 germ: -z^{1/4} + 0.3 z^{1/2}.
    LogSeries phi3;
    phi3.add_term(q(1, 4), {cplx(-1.0)});
    phi3.add_term(q(1, 2), {cplx(0.3)});
    const Horizon cap = Horizon::exact(q(2));
    auto phi = n.chain.inverse(phi3, cap);
    CHECK(*phi.valuation() == q(1, 2));
    auto back = n.chain.forward(phi, Horizon::exact(q(3, 2)));
    for (const auto& [e, p] : phi3.terms()) CHECK(std::abs(back.coefficient(e)[0] - p[0]) < 1e-12);
    // Pointwise agreement of the series images on a sample ray.
    LPoint z(1e-3, 0.4);
    CHECK(std::abs(n.chain.inverse(eval_finite(phi3, z)) - eval_finite(phi, z)) < 1e-6);
}

TEST_CASE("normalize_corner: both arcs singular") {
    auto arc1 = PuiseuxArc::from_graph(2, {0.0, 0.0, 0.0, 1.0}, q(0));
    auto arc2 = PuiseuxArc::from_graph(3, {0.0, 0.0, 0.0, 0.0, -0.5}, q(2, 3));
    CHECK(arc2.multiplicity() == 3);
    CornerSpec c{arc1, arc2, cplx(0.2, -0.1), false, std::nullopt};
    auto n = normalize_corner(c);
    CHECK(n.chain.m1 == 2);
    CHECK(n.chain.m2 == 3);
    CHECK(*n.final_angle.exact == q(1, 9));
    for (double t : {1e-3, 1e-2}) {
        cplx w = n.chain.forward(c.vertex + arc2(t));
        CHECK(std::abs(std::arg(w) - kPi * (1.0 + 1.0 / 9.0) + 2 * kPi) < 1e-2);
        CHECK(std::abs(n.chain.inverse(w) - (c.vertex + arc2(t))) < 1e-13);
        cplx w1 = n.chain.forward(c.vertex + arc1(t));
        CHECK(std::abs(w1.imag()) < 1e-12);
    }
}
