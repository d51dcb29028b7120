#include "qcorner/symbolic_real.hpp"

#include <cctype>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <tuple>

#include "qcorner/errors.hpp"

namespace qcorner {

namespace {

struct Registry {
    std::shared_mutex mutex;
    std::map<std::string, double> values{
        {"sqrt2", std::sqrt(2.0)},
        {"sqrt3", std::sqrt(3.0)},
        {"sqrt5", std::sqrt(5.0)},
        {"phi", 0.5 * (1.0 + std::sqrt(5.0))},
    };
};

Registry& registry() {
    static Registry r;
    return r;
}

std::int64_t parse_int(std::string_view s) {
    if (s.empty()) throw Error("empty integer in symbolic real");
    std::int64_t v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("bad integer '" + std::string(s) + "'");
        v = v * 10 + (c - '0');
    }
    return v;
}

// One product term like "3", "1/2", "sqrt2", "3*sqrt2", "sqrt2/2", "1/3*phi".
SymbolicReal parse_term(std::string_view t) {
    Rational coef = 1;
    std::string gen;
    std::size_t i = 0;
    auto read_factor = [&](bool divide) {
        std::size_t j = i;
        while (j < t.size() && t[j] != '*' && t[j] != '/') ++j;
        std::string_view f = t.substr(i, j - i);
        i = j;
        if (f.empty()) throw Error("empty factor in symbolic real");
        if (std::isdigit(static_cast<unsigned char>(f[0]))) {
            Rational v(parse_int(f));
            coef = divide ? coef / v : coef * v;
        } else {
            if (divide) throw Error("cannot divide by a generator");
            if (!gen.empty()) throw Error("products of generators are not supported");
            gen = std::string(f);
            if (!has_generator(gen)) throw UnknownClass("undeclared generator '" + gen + "'");
        }
    };
    read_factor(false);
    while (i < t.size()) {
        char op = t[i++];
        read_factor(op == '/');
    }
    if (gen.empty()) return SymbolicReal(coef);
    return SymbolicReal::generator(gen, coef);
}

}  // namespace

void register_generator(const std::string& name, double value) {
    auto& r = registry();
    std::unique_lock lock(r.mutex);
    auto it = r.values.find(name);
    if (it != r.values.end()) {
        if (it->second != value) throw Error("generator '" + name + "' already registered with another value");
        return;
    }
    if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0])))
        throw Error("invalid generator name '" + name + "'");
    r.values.emplace(name, value);
}

bool has_generator(const std::string& name) {
    auto& r = registry();
    std::shared_lock lock(r.mutex);
    return r.values.count(name) != 0;
}

double generator_value(const std::string& name) {
    auto& r = registry();
    std::shared_lock lock(r.mutex);
    auto it = r.values.find(name);
    if (it == r.values.end()) throw UnknownClass("undeclared generator '" + name + "'");
    return it->second;
}

SymbolicReal SymbolicReal::generator(const std::string& name, Rational multiple) {
    if (!has_generator(name)) throw UnknownClass("undeclared generator '" + name + "'");
    SymbolicReal s;
    if (!multiple.is_zero()) s.irr_.emplace(name, multiple);
    return s;
}

SymbolicReal SymbolicReal::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw Error("empty symbolic real");
    SymbolicReal out;
    std::size_t i = 0;
    while (i < s.size()) {
        bool neg = false;
        if (s[i] == '+' || s[i] == '-') {
            neg = s[i] == '-';
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        SymbolicReal term = parse_term(std::string_view(s).substr(i, j - i));
        out += neg ? -term : term;
        i = j;
    }
    return out;
}

double SymbolicReal::value() const {
    double v = rational_.value();
    for (const auto& [name, q] : irr_) v += q.value() * generator_value(name);
    return v;
}

SymbolicReal SymbolicReal::operator-() const {
    SymbolicReal s;
    s.rational_ = -rational_;
    for (const auto& [name, q] : irr_) s.irr_.emplace(name, -q);
    return s;
}

SymbolicReal operator+(const SymbolicReal& a, const SymbolicReal& b) {
    SymbolicReal s = a;
    s.rational_ += b.rational_;
    for (const auto& [name, q] : b.irr_) {
        Rational sum = s.irr_[name] + q;
        if (sum.is_zero())
            s.irr_.erase(name);
        else
            s.irr_[name] = sum;
    }
    return s;
}

SymbolicReal operator*(const SymbolicReal& a, const Rational& k) {
    if (k.is_zero()) return SymbolicReal();
    SymbolicReal s;
    s.rational_ = a.rational_ * k;
    for (const auto& [name, q] : a.irr_) s.irr_.emplace(name, q * k);
    return s;
}

SymbolicReal operator/(const SymbolicReal& a, const Rational& k) { return a * (Rational(1) / k); }

std::strong_ordering operator<=>(const SymbolicReal& a, const SymbolicReal& b) {
    if (a == b) return std::strong_ordering::equal;
    SymbolicReal d = a - b;
    if (d.is_rational()) return d.rational_ <=> Rational(0);
    double va = a.value();
    double vb = b.value();
    double scale = std::max({1.0, std::abs(va), std::abs(vb)});
    if (std::abs(va - vb) > 1e-13 * scale) return va < vb ? std::strong_ordering::less : std::strong_ordering::greater;
    // Floating resolution exhausted: fall back to a deterministic structural order.
    if (auto c = a.rational_ <=> b.rational_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.irr_.begin(), a.irr_.end(), b.irr_.begin(), b.irr_.end());
}

std::string SymbolicReal::str() const {
    std::ostringstream os;
    bool first = true;
    if (!rational_.is_zero() || irr_.empty()) {
        os << rational_.str();
        first = false;
    }
    for (const auto& [name, q] : irr_) {
        Rational mag = q.num() < 0 ? -q : q;
        if (q.num() < 0)
            os << (first ? "-" : "-");
        else if (!first)
            os << "+";
        if (mag.num() != 1) os << mag.num() << "*";
        os << name;
        if (mag.den() != 1) os << "/" << mag.den();
        first = false;
    }
    return os.str();
}

std::int64_t floor_of(const SymbolicReal& x) {
    if (x.is_rational()) return x.rational_part().floor();
    return static_cast<std::int64_t>(std::floor(x.value()));
}

}  // namespace qcorner
