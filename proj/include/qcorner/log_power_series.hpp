#ifndef QCORNER_LOG_POWER_SERIES_HPP
#define QCORNER_LOG_POWER_SERIES_HPP

// Generalized log-power series  sum_alpha Q_alpha(log z) z^alpha  with
// exponents alpha >= 0 kept symbolically and log-polynomial coefficients
// Q_alpha stored low-to-high.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "qcorner/errors.hpp"
#include "qcorner/horizon.hpp"
#include "qcorner/lsurface.hpp"
#include "qcorner/power_series.hpp"
#include "qcorner/symbolic_real.hpp"

namespace qcorner {

enum class SeriesClass { PURE_POWER, LOG_POWER };

template <typename Scalar = std::complex<double>>
class LogPowerSeries {
public:
    using scalar_type = Scalar;
    using LogPoly = std::vector<Scalar>;
    using TermMap = std::map<Exponent, LogPoly>;

    /// The zero series, known exactly (infinite truncation bound).
    LogPowerSeries() = default;
    explicit LogPowerSeries(Horizon bound) : bound_(std::move(bound)) {}

    static LogPowerSeries monomial(const Exponent& e, Scalar coef = Scalar(1), int log_degree = 0) {
        LogPowerSeries s;
        LogPoly q(static_cast<std::size_t>(log_degree) + 1, Scalar(0));
        q.back() = coef;
        s.add_term(e, q);
        return s;
    }

    /// Accumulates Q into the coefficient at exponent e. Terms beyond the
    /// truncation bound are dropped; zero polynomials are pruned.
    void add_term(const Exponent& e, const LogPoly& q) {
        if (e < Exponent(0)) throw InvalidSeries("negative exponent " + e.str());
        if (!bound_.admits(e)) return;
        LogPoly& slot = terms_[e];
        if (slot.size() < q.size()) slot.resize(q.size(), Scalar(0));
        for (std::size_t j = 0; j < q.size(); ++j) slot[j] += q[j];
        trim(slot);
        if (slot.empty()) terms_.erase(e);
    }

    const TermMap& terms() const { return terms_; }
    const Horizon& truncation_bound() const { return bound_; }
    void set_truncation_bound(const Horizon& h) {
        bound_ = h;
        for (auto it = terms_.begin(); it != terms_.end();) it = bound_.admits(it->first) ? std::next(it) : terms_.erase(it);
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    std::vector<Exponent> support() const {
        std::vector<Exponent> out;
        for (const auto& [e, q] : terms_) out.push_back(e);
        return out;
    }

    /// nu = min supp, or nullopt for the zero series.
    std::optional<Exponent> valuation() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first;
    }

    int max_log_degree() const {
        int d = 0;
        for (const auto& [e, q] : terms_) d = std::max(d, static_cast<int>(q.size()) - 1);
        return d;
    }

    LogPoly coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? LogPoly{} : it->second;
    }

    /// (a_alpha, P_alpha) with Q_alpha = a_alpha * P_alpha and P_alpha monic.
    std::pair<Scalar, LogPoly> monic_decomposition(const Exponent& e) const {
        LogPoly q = coefficient(e);
        if (q.empty()) throw InvalidSeries("no term at exponent " + e.str());
        Scalar a = q.back();
        for (auto& c : q) c /= a;
        q.back() = Scalar(1);
        return {a, q};
    }

    /// Checks the defining conditions: P_0 = 1, i.e. Q_0 has degree 0.
    void validate() const {
        auto it = terms_.find(Exponent(0));
        if (it != terms_.end() && it->second.size() > 1)
            throw InvalidSeries("the constant term must not carry logarithms");
    }

    friend bool operator==(const LogPowerSeries&, const LogPowerSeries&) = default;

private:
    static void trim(LogPoly& q) {
        while (!q.empty() && q.back() == Scalar(0)) q.pop_back();
    }

    TermMap terms_;
    Horizon bound_;
};

using LogSeries = LogPowerSeries<std::complex<double>>;

namespace detail {

template <typename Scalar>
Horizon effective_valuation(const LogPowerSeries<Scalar>& f) {
    if (auto v = f.valuation()) return Horizon::exact(*v);
    return f.truncation_bound();
}

template <typename Scalar>
Horizon horizon_sum(const Horizon& a, const Horizon& b) {
    if (a.is_infinite() || b.is_infinite()) return Horizon::infinite();
    const bool strict = a.is_strict() || b.is_strict();
    if (a.is_exact() && b.is_exact()) return Horizon::exact(*a.exact_value() + *b.exact_value(), strict);
    return Horizon::numeric(a.value() + b.value(), strict);
}

template <typename Scalar>
std::vector<Scalar> poly_mul(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    std::vector<Scalar> out(a.size() + b.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace detail

template <typename Scalar>
LogPowerSeries<Scalar> add(const LogPowerSeries<Scalar>& f, const LogPowerSeries<Scalar>& g) {
    LogPowerSeries<Scalar> out(min(f.truncation_bound(), g.truncation_bound()));
    for (const auto& [e, q] : f.terms()) out.add_term(e, q);
    for (const auto& [e, q] : g.terms()) out.add_term(e, q);
    return out;
}

template <typename Scalar>
LogPowerSeries<Scalar> scale(const LogPowerSeries<Scalar>& f, Scalar c) {
    LogPowerSeries<Scalar> out(f.truncation_bound());
    if (c == Scalar(0)) return out;
    for (const auto& [e, q] : f.terms()) {
        auto qq = q;
        for (auto& x : qq) x *= c;
        out.add_term(e, qq);
    }
    return out;
}

template <typename Scalar>
LogPowerSeries<Scalar> subtract(const LogPowerSeries<Scalar>& f, const LogPowerSeries<Scalar>& g) {
    return add(f, scale(g, Scalar(-1)));
}

/// Cauchy product. The result's truncation bound is
/// min(R_f + nu(g), R_g + nu(f)), so every retained exponent is exact.
template <typename Scalar>
LogPowerSeries<Scalar> mul(const LogPowerSeries<Scalar>& f, const LogPowerSeries<Scalar>& g,
                           const Horizon& cap = Horizon::infinite()) {
    Horizon b1 = detail::horizon_sum<Scalar>(f.truncation_bound(), detail::effective_valuation(g));
    Horizon b2 = detail::horizon_sum<Scalar>(g.truncation_bound(), detail::effective_valuation(f));
    LogPowerSeries<Scalar> out(min(min(b1, b2), cap));
    for (const auto& [a, p] : f.terms())
        for (const auto& [b, q] : g.terms()) out.add_term(a + b, detail::poly_mul(p, q));
    return out;
}

template <typename Scalar>
LogPowerSeries<Scalar> truncate(const LogPowerSeries<Scalar>& f, const Horizon& r) {
    LogPowerSeries<Scalar> out = f;
    out.set_truncation_bound(min(f.truncation_bound(), r));
    return out;
}

template <typename Scalar>
LogPowerSeries<Scalar> truncate(const LogPowerSeries<Scalar>& f, const Exponent& r) {
    if (r < Exponent(0)) throw InvalidSeries("truncation bound must be >= 0");
    return truncate(f, Horizon::exact(r));
}

template <typename Scalar>
LogPowerSeries<Scalar> truncate(const LogPowerSeries<Scalar>& f, double r) {
    if (r < 0) throw InvalidSeries("truncation bound must be >= 0");
    return truncate(f, Horizon::numeric(r));
}

/// Sum of all stored terms at z, with log z = log r + i phi on the log surface.
template <typename Scalar>
Scalar eval_finite(const LogPowerSeries<Scalar>& f, const LPoint& z) {
    using Real = typename Scalar::value_type;
    const Scalar logz(std::log(static_cast<Real>(z.r())), static_cast<Real>(z.phi()));
    Scalar acc(0);
    for (const auto& [e, q] : f.terms()) {
        Scalar poly(0);
        for (auto it = q.rbegin(); it != q.rend(); ++it) poly = poly * logz + *it;
        acc += poly * std::exp(static_cast<Real>(e.value()) * logz);
    }
    return acc;
}

template <typename Scalar>
SeriesClass series_class(const LogPowerSeries<Scalar>& f) {
    return f.max_log_degree() == 0 ? SeriesClass::PURE_POWER : SeriesClass::LOG_POWER;
}

/// f^p for rational p. The leading term must be log-free; its coefficient's
/// argument is taken in (branch_center - pi, branch_center + pi].
template <typename Scalar>
LogPowerSeries<Scalar> pow_rational(const LogPowerSeries<Scalar>& f, const Rational& p, const Horizon& cap,
                                    double branch_center = 0.0) {
    using Real = typename Scalar::value_type;
    auto nu = f.valuation();
    if (!nu) throw InvalidSeries("power of the zero series");
    if (p.is_integer() && p >= Rational(0)) {
        LogPowerSeries<Scalar> out = LogPowerSeries<Scalar>::monomial(Exponent(0));
        for (std::int64_t i = 0; i < p.num(); ++i) out = mul(out, f, cap);
        return truncate(out, cap);
    }
    auto lead = f.coefficient(*nu);
    if (lead.size() != 1) throw InvalidSeries("fractional power of a series whose leading term carries logarithms");
    const Scalar a = lead[0];
    // u = f / (a z^nu) - 1
    LogPowerSeries<Scalar> u(f.truncation_bound().plus(-*nu));
    for (const auto& [e, q] : f.terms()) {
        if (e == *nu) continue;
        auto qq = q;
        for (auto& x : qq) x /= a;
        u.add_term(e - *nu, qq);
    }
    const Exponent shift = *nu * p;
    const Horizon rel_cap = cap.is_infinite() ? cap : cap.plus(-shift);
    Horizon target = min(u.truncation_bound(), rel_cap);
    if (target.is_infinite() && !u.is_zero())
        throw InvalidSeries("fractional power of an infinite series needs a finite cap");

    // a^p on the requested branch
    Real arg = std::arg(a);
    while (arg <= branch_center - kPi) arg += 2 * kPi;
    while (arg > branch_center + kPi) arg -= 2 * kPi;
    const Scalar ap = std::polar(std::pow(std::abs(a), static_cast<Real>(p.value())), arg * static_cast<Real>(p.value()));

    LogPowerSeries<Scalar> sum(target);
    sum.add_term(Exponent(0), {Scalar(1)});
    if (!u.is_zero()) {
        const Exponent mu = *u.valuation();
        LogPowerSeries<Scalar> upow = LogPowerSeries<Scalar>::monomial(Exponent(0));
        Real binom = 1;
        for (int n = 1;; ++n) {
            if (!target.admits(mu * Rational(n))) break;
            binom *= (static_cast<Real>(p.value()) - static_cast<Real>(n - 1)) / static_cast<Real>(n);
            upow = mul(upow, u, target);
            sum = add(sum, scale(upow, Scalar(binom)));
        }
        sum.set_truncation_bound(target);
    }
    LogPowerSeries<Scalar> out(sum.truncation_bound().plus(shift));
    for (const auto& [e, q] : sum.terms()) {
        auto qq = q;
        for (auto& x : qq) x *= ap;
        out.add_term(e + shift, qq);
    }
    return out;
}

/// outer(inner) for an ordinary power series `outer` (coefficients of z^n).
/// `outer_bound` is the truncation bound of outer's coefficient list.
template <typename Scalar>
LogPowerSeries<Scalar> compose_power_series(const Series<Scalar>& outer, const Horizon& outer_bound,
                                            const LogPowerSeries<Scalar>& inner, const Horizon& cap) {
    auto nu = inner.valuation();
    if (!nu || !(Exponent(0) < *nu))
        throw NonPositiveValuation("substitution requires an inner series with positive valuation");
    Horizon target = min(inner.truncation_bound(), cap);
    if (!outer_bound.is_infinite()) {
        // Unknown outer terms start at n = floor(R_outer) + 1.
        const std::int64_t n_known = static_cast<std::int64_t>(std::floor(outer_bound.value()));
        target = min(target, Horizon::exact(*nu * Rational(n_known + 1), true));
    }
    LogPowerSeries<Scalar> out(target);
    if (outer.size() > 0 && outer[0] != Scalar(0)) out.add_term(Exponent(0), {outer[0]});
    LogPowerSeries<Scalar> power = LogPowerSeries<Scalar>::monomial(Exponent(0));
    for (Eigen::Index n = 1; n < outer.size(); ++n) {
        if (!target.admits(*nu * Rational(n))) break;
        power = mul(power, inner, target);
        if (outer[n] != Scalar(0)) out = add(out, scale(power, outer[n]));
    }
    if (target.is_infinite()) return out;
    out.set_truncation_bound(target);
    return out;
}

/// Substitution f(inner) for the two shapes used by corner normalization:
/// an integer-exponent, log-free outer series, or a single monomial z^{p/q}.
template <typename Scalar>
LogPowerSeries<Scalar> compose_power_substitute(const LogPowerSeries<Scalar>& f, const LogPowerSeries<Scalar>& inner,
                                                const Horizon& cap = Horizon::infinite()) {
    if (f.size() == 1 && f.max_log_degree() == 0) {
        const auto& [e, q] = *f.terms().begin();
        if (e.is_rational() && f.truncation_bound().is_infinite()) {
            auto inner_nu = inner.valuation();
            if (!inner_nu) throw InvalidSeries("substitution into the zero series");
            auto powered = pow_rational(inner, e.rational_part(), cap);
            return scale(powered, q[0]);
        }
    }
    if (f.max_log_degree() != 0) throw InvalidSeries("outer series must be log-free");
    std::int64_t top = 0;
    for (const auto& [e, q] : f.terms()) {
        if (!e.is_rational() || !e.rational_part().is_integer())
            throw InvalidSeries("outer series must have integer exponents");
        top = std::max(top, e.rational_part().num());
    }
    auto inner_nu = inner.valuation();
    if (!inner_nu || !(Exponent(0) < *inner_nu))
        throw NonPositiveValuation("substitution requires an inner series with positive valuation");
    Series<Scalar> outer = Series<Scalar>::Zero(top + 1);
    for (const auto& [e, q] : f.terms()) outer[e.rational_part().num()] = q[0];
    return compose_power_series(outer, f.truncation_bound(), inner, cap);
}

}  // namespace qcorner

#endif  // QCORNER_LOG_POWER_SERIES_HPP
