#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "qcorner/io.hpp"
#include "qcorner/log_power_series.hpp"

using namespace qcorner;
using C = std::complex<double>;

namespace {

Exponent q(std::int64_t p, std::int64_t d = 1) { return Exponent(Rational(p, d)); }
Exponent sqrt2(std::int64_t k = 1) { return SymbolicReal::generator("sqrt2", k); }

// Brute-force product over explicit (exponent, coefficient) lists of pure series.
std::map<Rational, double> brute_product(const std::vector<std::pair<Rational, double>>& a,
                                         const std::vector<std::pair<Rational, double>>& b) {
    std::map<Rational, double> out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) out[ea + eb] += ca * cb;
    return out;
}

}  // namespace

TEST_CASE("add: inverse, like terms, identity") {
    auto f = LogSeries::monomial(q(1, 2));
    auto g = LogSeries::monomial(q(1, 2), -1.0);
    CHECK(add(f, g).is_zero());

    auto h = add(LogSeries::monomial(sqrt2()), LogSeries::monomial(sqrt2(), 1.0, 1));
    REQUIRE(h.size() == 1);
    CHECK(h.coefficient(sqrt2()) == LogSeries::LogPoly{C(1), C(1)});

    auto lehman = LogSeries::monomial(sqrt2());
    CHECK(add(lehman, LogSeries()) == lehman);
}

TEST_CASE("mul: exponent addition and log polynomials") {
    auto root = LogSeries::monomial(q(1, 2));
    auto sq = mul(root, root);
    REQUIRE(sq.size() == 1);
    CHECK(sq.coefficient(q(1)) == LogSeries::LogPoly{C(1)});

    auto lz = LogSeries::monomial(q(1), 1.0, 1);
    auto l2 = mul(lz, lz);
    CHECK(l2.coefficient(q(2)) == LogSeries::LogPoly{C(0), C(0), C(1)});
}

TEST_CASE("mul: (z^{1/3} + z^{2/3})^2 against brute-force enumeration") {
    std::vector<std::pair<Rational, double>> a{{Rational(1, 3), 1.0}, {Rational(2, 3), 1.0}};
    auto expected = brute_product(a, a);
    LogSeries f;
    for (const auto& [e, c] : a) f.add_term(Exponent(e), {C(c)});
    auto p = mul(f, f);
    REQUIRE(p.size() == expected.size());
    for (const auto& [e, c] : expected) CHECK(p.coefficient(Exponent(e)) == LogSeries::LogPoly{C(c)});
    CHECK(p.coefficient(q(1)) == LogSeries::LogPoly{C(2)});
}

TEST_CASE("mul: truncation bound keeps every retained exponent exact") {
    LogSeries f(Horizon::exact(q(2)));
    f.add_term(q(1, 2), {C(1)});
    f.add_term(q(3, 2), {C(1)});
    LogSeries g(Horizon::exact(q(3)));
    g.add_term(q(1), {C(1)});
    auto p = mul(f, g);
    // min(2 + 1, 3 + 1/2)
    CHECK(p.truncation_bound() == Horizon::exact(q(3)));
    CHECK(*p.valuation() == q(3, 2));
}

TEST_CASE("compose_power_substitute") {
    LogSeries inner;
    inner.add_term(q(1, 2), {C(1)});
    inner.add_term(q(1), {C(1)});

    // z^2 o (z^{1/2} + z), hand expansion z + 2 z^{3/2} + z^2
    auto sq = compose_power_substitute(LogSeries::monomial(q(2)), inner);
    CHECK(sq.coefficient(q(1)) == LogSeries::LogPoly{C(1)});
    CHECK(sq.coefficient(q(3, 2)) == LogSeries::LogPoly{C(2)});
    CHECK(sq.coefficient(q(2)) == LogSeries::LogPoly{C(1)});
    CHECK(sq.size() == 3);

    CHECK(compose_power_substitute(LogSeries::monomial(q(1)), inner) == inner);

    LogSeries affine;
    affine.add_term(q(0), {C(1)});
    affine.add_term(q(1), {C(1)});
    auto out = compose_power_substitute(affine, LogSeries::monomial(sqrt2()));
    CHECK(out.size() == 2);
    CHECK(out.coefficient(q(0)) == LogSeries::LogPoly{C(1)});
    CHECK(out.coefficient(sqrt2()) == LogSeries::LogPoly{C(1)});

    LogSeries unit;
    unit.add_term(q(0), {C(1)});
    unit.add_term(q(1), {C(1)});
    CHECK_THROWS_AS(compose_power_substitute(affine, unit), NonPositiveValuation);
}

TEST_CASE("pow_rational matches the binomial series") {
    // (z + z^2)^{1/2} = z^{1/2} (1 + z)^{1/2} = z^{1/2} + z^{3/2}/2 - z^{5/2}/8 + ...
    LogSeries f;
    f.add_term(q(1), {C(1)});
    f.add_term(q(2), {C(1)});
    auto r = pow_rational(f, Rational(1, 2), Horizon::exact(q(3)));
    CHECK(std::abs(r.coefficient(q(1, 2))[0] - 1.0) < 1e-15);
    CHECK(std::abs(r.coefficient(q(3, 2))[0] - 0.5) < 1e-15);
    CHECK(std::abs(r.coefficient(q(5, 2))[0] + 0.125) < 1e-15);
    CHECK_FALSE(r.truncation_bound().admits(q(7, 2)));
}

TEST_CASE("truncate") {
    LogSeries f;
    f.add_term(q(1, 2), {C(1)});
    f.add_term(q(1), {C(1)});
    f.add_term(q(3, 2), {C(1)});
    auto t = truncate(f, q(1));
    CHECK(t.size() == 2);
    CHECK(t.truncation_bound() == Horizon::exact(q(1)));

    auto t0 = truncate(f, q(0));
    CHECK(t0.is_zero());

    // Polygon-corner support lies in N0 + N*alpha; keep it up to 2*alpha.
    const Exponent alpha = q(1, 2);
    LogSeries lehman;
    for (int a = 0; a <= 3; ++a)
        for (int b = 1; b <= 4; ++b) lehman.add_term(q(a) + alpha * Rational(b), {C(1.0 / (a + b))});
    auto cut = truncate(lehman, alpha * Rational(2));
    for (const auto& e : cut.support()) CHECK(e <= alpha * Rational(2));
    CHECK(cut.support() == std::vector<Exponent>{q(1, 2), q(1)});
}

TEST_CASE("eval_finite tracks the branch through phi") {
    CHECK(std::abs(eval_finite(LogSeries::monomial(q(1, 2)), LPoint(4.0, 2 * kPi)) - C(-2.0)) < 1e-14);
    auto logz = LogSeries::monomial(q(0), 1.0, 1);
    CHECK(std::abs(eval_finite(logz, LPoint(std::exp(1.0), kPi / 2)) - C(1.0, kPi / 2)) < 1e-14);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ur(0.01, 3.0), uphi(-20.0, 20.0);
    for (int i = 0; i < 100; ++i) {
        double r = ur(rng), phi = uphi(rng);
        C oracle = std::exp(std::sqrt(2.0) * C(std::log(r), phi));
        C got = eval_finite(LogSeries::monomial(sqrt2()), LPoint(r, phi));
        CHECK(std::abs(got - oracle) <= 1e-14 * std::max(1.0, std::abs(oracle)));
    }
}

TEST_CASE("series_class") {
    auto pure = add(LogSeries::monomial(sqrt2()), LogSeries::monomial(sqrt2(2)));
    CHECK(series_class(pure) == SeriesClass::PURE_POWER);
    auto logs = add(LogSeries::monomial(q(1)), LogSeries::monomial(q(2), 1.0, 1));
    CHECK(series_class(logs) == SeriesClass::LOG_POWER);
    CHECK(series_class(LogSeries()) == SeriesClass::PURE_POWER);
}

TEST_CASE("monic decomposition round trip and P_0 = 1") {
    LogSeries f;
    f.add_term(q(3, 2), {C(0.5, 1.0), C(2.0, -1.0), C(-3.0, 0.25)});
    auto [a, p] = f.monic_decomposition(q(3, 2));
    CHECK(p.back() == C(1));
    auto q_back = p;
    for (auto& c : q_back) c *= a;
    for (std::size_t j = 0; j < q_back.size(); ++j) CHECK(std::abs(q_back[j] - f.coefficient(q(3, 2))[j]) < 1e-15);

    LogSeries bad;
    bad.add_term(q(0), {C(1), C(1)});
    CHECK_THROWS_AS(bad.validate(), InvalidSeries);
}

TEST_CASE("truncate composes as a minimum") {
    LogSeries f;
    for (int i = 0; i < 8; ++i) f.add_term(q(i, 3), {C(i + 1.0)});
    CHECK(truncate(truncate(f, q(5, 3)), q(1)) == truncate(f, q(1)));
    CHECK(truncate(truncate(f, q(1)), q(5, 3)) == truncate(f, q(1)));
}

TEST_CASE("series JSON round trip") {
    LogSeries f(Horizon::exact(sqrt2(3)));
    f.add_term(sqrt2(), {C(1, 2)});
    f.add_term(q(1) + sqrt2(), {C(0.5), C(-1, 1)});
    auto back = series_from_json(to_json(f));
    CHECK(back == f);
}
