#ifndef QCORNER_HORIZON_HPP
#define QCORNER_HORIZON_HPP

#include <limits>
#include <optional>
#include <string>

#include "qcorner/symbolic_real.hpp"

namespace qcorner {

/// Truncation bound of a series: exponents admitted by the horizon are
/// represented exactly; everything beyond it is unknown (not zero).
class Horizon {
public:
    static Horizon infinite() { return Horizon(); }
    static Horizon exact(const Exponent& e, bool strict = false) {
        Horizon h;
        h.exact_ = e;
        h.value_ = e.value();
        h.strict_ = strict;
        return h;
    }
    static Horizon numeric(double v, bool strict = false) {
        Horizon h;
        h.value_ = v;
        h.numeric_ = true;
        h.strict_ = strict;
        return h;
    }

    bool is_infinite() const { return !exact_ && !numeric_; }
    bool is_exact() const { return exact_.has_value(); }
    bool is_strict() const { return strict_; }
    double value() const { return is_infinite() ? std::numeric_limits<double>::infinity() : value_; }
    const std::optional<Exponent>& exact_value() const { return exact_; }

    bool admits(const Exponent& e) const {
        if (is_infinite()) return true;
        if (exact_) return strict_ ? e < *exact_ : e <= *exact_;
        return strict_ ? e.value() < value_ : e.value() <= value_;
    }

    Horizon plus(const Exponent& e) const {
        if (is_infinite()) return *this;
        if (exact_) return exact(*exact_ + e, strict_);
        return numeric(value_ + e.value(), strict_);
    }

    friend Horizon min(const Horizon& a, const Horizon& b) {
        if (a.is_infinite()) return b;
        if (b.is_infinite()) return a;
        if (a.exact_ && b.exact_) {
            if (*a.exact_ == *b.exact_) return a.strict_ ? a : b;
            return *a.exact_ < *b.exact_ ? a : b;
        }
        if (a.value_ == b.value_) return a.strict_ ? a : b;
        return a.value_ < b.value_ ? a : b;
    }

    friend bool operator==(const Horizon& a, const Horizon& b) {
        if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
        if (a.strict_ != b.strict_) return false;
        if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
        return a.value() == b.value();
    }

    std::string str() const {
        if (is_infinite()) return "inf";
        std::string s = strict_ ? "<" : "<=";
        return s + (exact_ ? exact_->str() : std::to_string(value_));
    }

private:
    std::optional<Exponent> exact_;
    double value_ = std::numeric_limits<double>::infinity();
    bool numeric_ = false;
    bool strict_ = false;
};

}  // namespace qcorner

#endif  // QCORNER_HORIZON_HPP
