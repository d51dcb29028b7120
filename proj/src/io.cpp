#include "qcorner/io.hpp"

namespace qcorner {

namespace {

json rational_json(const Rational& r) { return json::array({r.num(), r.den()}); }

Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_array() && j.size() == 2) return Rational(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
    throw Error("expected a rational [p, q]");
}

}  // namespace

json to_json(const SymbolicReal& x) {
    json irr = json::object();
    for (const auto& [name, q] : x.irrational_parts()) irr[name] = rational_json(q);
    return {{"rational", rational_json(x.rational_part())}, {"irrational_multiples", irr}};
}

SymbolicReal symbolic_from_json(const json& j) {
    if (j.is_string()) return SymbolicReal::parse(j.get<std::string>());
    if (j.is_number_integer()) return SymbolicReal(j.get<std::int64_t>());
    if (!j.is_object()) throw Error("expected a symbolic real");
    SymbolicReal x = rational_from(j.value("rational", json::array({0, 1})));
    if (j.contains("irrational_multiples"))
        for (const auto& [name, q] : j["irrational_multiples"].items()) x += SymbolicReal::generator(name, rational_from(q));
    return x;
}

json to_json(const Horizon& h) {
    if (h.is_infinite()) return nullptr;
    if (h.is_exact()) return {{"exact", to_json(*h.exact_value())}, {"strict", h.is_strict()}};
    return {{"numeric", h.value()}, {"strict", h.is_strict()}};
}

Horizon horizon_from_json(const json& j) {
    if (j.is_null()) return Horizon::infinite();
    if (j.is_number()) return Horizon::numeric(j.get<double>());
    const bool strict = j.value("strict", false);
    if (j.contains("exact")) return Horizon::exact(symbolic_from_json(j["exact"]), strict);
    return Horizon::numeric(j.at("numeric").get<double>(), strict);
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json to_json(const LogSeries& s) {
    json terms = json::array();
    for (const auto& [e, q] : s.terms()) {
        json poly = json::array();
        for (const auto& c : q) poly.push_back(complex_to_json(c));
        terms.push_back({{"exponent", to_json(e)}, {"log_poly", poly}});
    }
    return {{"terms", terms}, {"truncation_bound", to_json(s.truncation_bound())}};
}

LogSeries series_from_json(const json& j) {
    const json& terms = j.is_array() ? j : j.at("terms");
    LogSeries s(j.is_object() ? horizon_from_json(j.value("truncation_bound", json())) : Horizon::infinite());
    for (const auto& t : terms) {
        LogSeries::LogPoly q;
        for (const auto& c : t.at("log_poly")) q.push_back(complex_from_json(c));
        s.add_term(symbolic_from_json(t.at("exponent")), q);
    }
    s.validate();
    return s;
}

json to_json(const LPoint& z) { return {{"r", z.r()}, {"phi", z.phi()}}; }

LPoint lpoint_from_json(const json& j) {
    if (j.is_array()) return LPoint(j.at(0).get<double>(), j.at(1).get<double>());
    return LPoint(j.at("r").get<double>(), j.at("phi").get<double>());
}

json to_json(const QuadraticDomain& w) { return {{"c", w.c}, {"C", w.C}, {"mirrored", w.mirrored}}; }

QuadraticDomain quad_from_json(const json& j) {
    return {j.at("c").get<double>(), j.at("C").get<double>(), j.value("mirrored", true)};
}

}  // namespace qcorner
