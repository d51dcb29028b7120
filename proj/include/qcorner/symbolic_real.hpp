#ifndef QCORNER_SYMBOLIC_REAL_HPP
#define QCORNER_SYMBOLIC_REAL_HPP

#include <compare>
#include <map>
#include <string>
#include <string_view>

#include "qcorner/rational.hpp"

namespace qcorner {

/// Registers an irrational generator under `name`. Registered generators are
/// assumed linearly independent over the rationals together with 1, so that
/// equality of symbolic reals reduces to coefficient equality.
///
/// Built in: sqrt2, sqrt3, sqrt5, phi (golden ratio). Re-registering a name
/// with a different value throws.
void register_generator(const std::string& name, double value);
bool has_generator(const std::string& name);
double generator_value(const std::string& name);

/// q0 + sum_i q_i * g_i with rational q's and registered irrational g's.
///
/// Used both for exponents of generalized power series and for angles
/// expressed as multiples of pi. Equality is decided on the coefficients,
/// never on floating values.
class SymbolicReal {
public:
    SymbolicReal() = default;
    SymbolicReal(Rational r) : rational_(r) {}  // NOLINT: implicit by design of the algebra
    SymbolicReal(std::int64_t n) : rational_(n) {}  // NOLINT

    static SymbolicReal generator(const std::string& name, Rational multiple = 1);

    /// Parses "1/2", "sqrt2", "sqrt2/2", "3*phi", "1+sqrt2", "-1/3*sqrt5".
    static SymbolicReal parse(std::string_view text);

    const Rational& rational_part() const { return rational_; }
    const std::map<std::string, Rational>& irrational_parts() const { return irr_; }

    double value() const;
    bool is_rational() const { return irr_.empty(); }
    bool is_zero() const { return irr_.empty() && rational_.is_zero(); }

    SymbolicReal operator-() const;
    friend SymbolicReal operator+(const SymbolicReal& a, const SymbolicReal& b);
    friend SymbolicReal operator-(const SymbolicReal& a, const SymbolicReal& b) { return a + (-b); }
    friend SymbolicReal operator*(const SymbolicReal& a, const Rational& k);
    friend SymbolicReal operator*(const Rational& k, const SymbolicReal& a) { return a * k; }
    friend SymbolicReal operator/(const SymbolicReal& a, const Rational& k);
    SymbolicReal& operator+=(const SymbolicReal& o) { return *this = *this + o; }

    friend bool operator==(const SymbolicReal& a, const SymbolicReal& b) = default;
    /// Orders by value; ties between structurally different values at
    /// floating resolution are broken structurally so the order is total.
    friend std::strong_ordering operator<=>(const SymbolicReal& a, const SymbolicReal& b);

    std::string str() const;

private:
    Rational rational_;
    std::map<std::string, Rational> irr_;
};

using Exponent = SymbolicReal;

/// Largest integer n with n <= x, decided exactly where possible.
std::int64_t floor_of(const SymbolicReal& x);

}  // namespace qcorner

#endif  // QCORNER_SYMBOLIC_REAL_HPP
