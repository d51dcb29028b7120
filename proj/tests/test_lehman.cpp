#include <doctest.h>

#include <cmath>
#include <random>

#include "qcorner/lehman.hpp"
#include "qcorner/scmap.hpp"

using namespace qcorner;

namespace {

SurfaceFunction power_function(double a) {
    return [a](const LPoint& z) { return pow_L(z, a); };
}

cplx coefficient_at(const LogSeries& g, const Exponent& e, int j = 0) {
    auto q = g.coefficient(e);
    return static_cast<std::size_t>(j) < q.size() ? q[j] : cplx(0.0);
}

}  // namespace

TEST_CASE("expansion lattices") {
    auto m = ExpansionModel::lattice(SymbolicReal(Rational(1, 2)), 2.0);
    REQUIRE(m.exponents.size() == 4);
    CHECK(m.exponents[0] == SymbolicReal(Rational(1, 2)));
    CHECK(m.exponents[3] == SymbolicReal(2));
    const auto s2 = SymbolicReal::generator("sqrt2");
    auto n = ExpansionModel::lattice(s2, 3.0);
    REQUIRE(n.exponents.size() == 3);
    CHECK(n.exponents[1] == s2 + SymbolicReal(1));
    CHECK(n.exponents[2] == s2 * Rational(2));
    CHECK(next_lattice_exponent(std::sqrt(2.0), 1.5) == doctest::Approx(std::sqrt(2.0) + 1.0));
    CHECK(next_lattice_exponent(0.5, 1.0) == doctest::Approx(1.5));
}

TEST_CASE("fit: exact one-term target") {
    const auto s2 = SymbolicReal::generator("sqrt2");
    auto fit = fit_expansion(power_function(std::sqrt(2.0)), ExpansionModel::lattice(s2, 4.0, 1));
    CHECK(std::abs(coefficient_at(fit.series, s2) - 1.0) < 1e-8);
    for (const auto& [e, q] : fit.series.terms())
        for (std::size_t j = 0; j < q.size(); ++j)
            if (!(e == s2 && j == 0)) CHECK(std::abs(q[j]) < 1e-8);
    CHECK(fit.condition < 1e12);
}

TEST_CASE("fit: synthetic log-power round trip") {
    const SurfaceFunction f = [](const LPoint& z) {
        return pow_L(z, 0.5) + 0.3 * log_L(z) * pow_L(z, 1.0) + pow_L(z, 1.5);
    };
    auto fit = fit_expansion(f, ExpansionModel::lattice(SymbolicReal(Rational(1, 2)), 1.5, 1));
    CHECK(std::abs(coefficient_at(fit.series, SymbolicReal(Rational(1, 2))) - 1.0) < 1e-8);
    CHECK(std::abs(coefficient_at(fit.series, SymbolicReal(1), 1) - 0.3) < 1e-8);
    CHECK(std::abs(coefficient_at(fit.series, SymbolicReal(1), 0)) < 1e-8);
    CHECK(std::abs(coefficient_at(fit.series, SymbolicReal(Rational(3, 2))) - 1.0) < 1e-8);
    CHECK(std::abs(coefficient_at(fit.series, SymbolicReal(Rational(1, 2)), 1)) < 1e-8);

    // Random finite series with well separated exponents.
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = SymbolicReal::generator("sqrt2", Rational(1, 2));
        auto model = ExpansionModel::lattice(a, 2.2, 0);
        LogSeries g;
        for (const auto& e : model.exponents) g.add_term(e, {cplx(u(rng), u(rng))});
        auto fit = fit_expansion([&](const LPoint& z) { return eval_finite(g, z); }, model);
        for (const auto& e : model.exponents) CHECK(std::abs(coefficient_at(fit.series, e) - coefficient_at(g, e)) < 1e-8);
    }
}

TEST_CASE("fit: SC rectangle corner against termwise integration") {
    auto sc = solve_sc({{0, 0}, {2, 0}, {2, 1}, {0, 1}});
    const std::size_t k = 1;
    const auto& x = sc.prevertices;
    const double gap = std::min(x[k] - x[k - 1], x[k + 1] - x[k]);
    const cplx wk = sc(x[k]);
    const SurfaceFunction f = [&](const LPoint& z) { return sc(x[k] + std::polar(z.r(), z.phi())) - wk; };

    // Phi'(z) = A prod_j (z + x_k - x_j)^{beta_j}; expand the j != k factors to first order and integrate.
    const double alpha = 0.5;
    cplx C = sc.A;
    cplx p1 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (j == k) continue;
        const double d = x[k] - x[j], beta = -0.5;
        C *= d > 0 ? std::pow(d, beta) : std::polar(std::pow(-d, beta), kPi * beta);
        p1 += beta / d;
    }
    const cplx c0 = C / alpha, c1 = C * p1 / (alpha + 1.0);

    auto model = ExpansionModel::lattice(SymbolicReal(Rational(1, 2)), 5.0, 0);
    SamplingPlan plan;
    plan.rho0 = 0.05 * gap;
    auto fit = fit_expansion(f, model, plan);
    CHECK(std::abs(coefficient_at(fit.series, SymbolicReal(Rational(1, 2))) - c0) < 1e-8 * std::abs(c0));
    CHECK(std::abs(coefficient_at(fit.series, SymbolicReal(Rational(3, 2))) - c1) < 1e-6 * std::abs(c1));
    // Higher coefficients are only resolved through their size on the outer shell:
    // integer exponents vanish and half-integers match the germ's termwise series.
    auto germ = sc_corner_germ(sc, k);
    for (const auto& e : model.exponents) {
        const cplx want = coefficient_at(*germ.series, e);
        if (e.rational_part().is_integer()) CHECK(want == cplx(0.0));
        const double seen = std::abs(coefficient_at(fit.series, e) - want) * std::pow(plan.rho0, e.value() - alpha);
        CHECK(seen < 1e-6 * std::abs(c0));
    }
    CHECK(fit.series.max_log_degree() == 0);
}

TEST_CASE("verify_asymptotic") {
    const double s2 = std::sqrt(2.0);
    const auto S2 = SymbolicReal::generator("sqrt2");
    QuadraticDomain half{1.0, 0.0, false};
    VerifyOptions opt;
    opt.plan.rho0 = 0.1;
    for (double R : {s2, 2.0, 2.8}) {
        auto cert = verify_asymptotic(power_function(s2), LogSeries::monomial(S2), R, half, opt);
        CHECK(cert.passed);
        for (const auto& sh : cert.shells) CHECK(sh.sup_ratio == 0.0);
    }
    // Wrong leading exponent.
    auto bad = verify_asymptotic(power_function(0.5), LogSeries::monomial(SymbolicReal(Rational(1, 3))), 0.4, half, opt);
    CHECK_FALSE(bad.passed);
    CHECK(bad.witness_valid());
    CHECK_THROWS_AS(bad.require(), FailedCertificate);

    // A genuine remainder z^{2 sqrt2}: the ratio decays like |z|^{2 sqrt2 - R}, which the
    // twelve shells resolve below 1e-2 up to R = 2; beyond 2 sqrt2 it grows.
    const SurfaceFunction two_terms = [s2](const LPoint& z) { return pow_L(z, s2) + pow_L(z, 2 * s2); };
    opt.tol = 1e-2;
    bool previous = true;
    for (double R : {0.5, 1.5, 2.0, 2.5, 3.0, 3.5}) {
        auto cert = verify_asymptotic(two_terms, LogSeries::monomial(S2), R, half, opt);
        CHECK(cert.passed == (R <= 2.0));
        if (R > 2 * s2) CHECK(cert.reason.find("increases") != std::string::npos);
        if (cert.passed) CHECK(previous);
        previous = cert.passed;
    }
}

TEST_CASE("verify_asymptotic on the continued sector map") {
    const auto a = SymbolicReal::generator("sqrt2");
    auto tw = build_tower(model_corner_germ(a), 6);
    auto ce = certify_quadratic_domain(tw);
    VerifyOptions opt;
    opt.plan.rho0 = 0.5 * ce.quad.c;
    opt.plan.phi_lo = -ce.max_phi;
    opt.plan.phi_hi = ce.max_phi;
    opt.tol = 1e-10;
    const SurfaceFunction f = [&](const LPoint& z) { return evaluate_extension(tw, z); };
    for (double R : {a.value(), 2 * a.value(), 3 * a.value()}) {
        auto cert = verify_asymptotic(f, LogSeries::monomial(a), R, ce.quad, opt);
        CHECK(cert.passed);
        CHECK(cert.shells.back().phi_hi > 1.0);
    }
}

TEST_CASE("dichotomy") {
    const auto S2 = SymbolicReal::generator("sqrt2");
    auto fit = fit_expansion(power_function(std::sqrt(2.0)), ExpansionModel::lattice(S2, 3.0, 1));
    auto v = dichotomy_check(fit.series, AngleClass::IRRATIONAL_PI_MULTIPLE);
    CHECK(v.max_log_coefficient < 1e-8);

    const SurfaceFunction planted = [](const LPoint& z) {
        return pow_L(z, std::sqrt(2.0)) + 1e-3 * log_L(z) * pow_L(z, 2 * std::sqrt(2.0));
    };
    auto pf = fit_expansion(planted, ExpansionModel::lattice(S2, 3.0, 1));
    CHECK(std::abs(coefficient_at(pf.series, S2 * Rational(2), 1) - 1e-3) < 1e-9);
    CHECK_THROWS_AS(dichotomy_check(pf.series, AngleClass::IRRATIONAL_PI_MULTIPLE), DichotomyViolation);
    // Rational angles carry no constraint.
    CHECK(dichotomy_check(pf.series, AngleClass::RATIONAL_PI_MULTIPLE).log_terms_present);
}

TEST_CASE("error tower constants") {
    for (const auto& a : {SymbolicReal(Rational(1, 2)), SymbolicReal::generator("sqrt2")}) {
        auto tw = build_tower(model_corner_germ(a), 12);
        for (double R : {0.3, 1.0, 2.5}) {
            auto s = error_tower_constants(tw, R, a);
            CHECK(s.m * a.value() / 2.0 > R);
            CHECK(s.S > R);
            CHECK(s.S < next_lattice_exponent(a.value(), R));
            CHECK(s.T > R);
            CHECK(s.T_bar > R);
            CHECK(s.T_bar < s.T);
            CHECK(s.T - s.T_bar <= 1.0);
            REQUIRE(s.levels.size() == 13);
            CHECK(s.levels[0].log_D == s.log_L);
            for (int k = 1; k <= 12; ++k) {
                const auto& e = s.levels[k];
                const auto& p = s.levels[k - 1];
                CHECK(e.log_D - p.log_D == doctest::Approx(std::log(3.0) + (k - 1) * s.log_L).epsilon(1e-14));
                CHECK(e.log_q + k * k * s.log_M == 0.0);
                CHECK(e.log_q <= e.log_p);
                CHECK(e.log_D <= k * k * s.log_M);
                CHECK(e.log_p == std::min(std::log(tw.levels[k].s), -s.T * p.log_D));
            }
        }
    }

    // Sector map: eps_k vanishes below the next exponent, so the sampled ratio sits far below M^{k^2}.
    const auto a = SymbolicReal(Rational(1, 2));
    auto tw = build_tower(model_corner_germ(a), 4);
    auto s = error_tower_constants(tw, 0.4, a);
    const auto g = LogSeries::monomial(a);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k <= 4; ++k) {
        const double log_r = std::min(s.levels[k].log_q, std::log(tw.levels[k].t));
        if (log_r < -700.0) continue;
        for (int i = 0; i < 20; ++i) {
            const LPoint z(std::exp(log_r) * u(rng), std::ldexp(1.0, k) * kPi * u(rng));
            const double eps = std::abs(evaluate_level(tw, k, z) - eval_finite(g, z));
            CHECK(std::log(eps / std::pow(z.r(), s.T) + 1e-300) <= k * k * s.log_M);
        }
    }
}

TEST_CASE("fit guards") {
    ExpansionModel m;
    m.exponents = {SymbolicReal(1), SymbolicReal(1) + SymbolicReal::generator("sqrt2", Rational(1, 10000000000000))};
    m.R = 1.1;
    CHECK_THROWS_AS(fit_expansion(power_function(1.0), m), IllConditioned);
    ExpansionModel bad;
    bad.exponents = {SymbolicReal(2), SymbolicReal(1)};
    CHECK_THROWS_AS(fit_expansion(power_function(1.0), bad), InvalidSeries);
}
