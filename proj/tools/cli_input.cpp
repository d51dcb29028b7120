#include "cli_input.hpp"

#include <fstream>

namespace qcorner::cli {

namespace {

SymbolicReal dir_from_json(const json& j, const char* what) {
    try {
        return symbolic_from_json(j);
    } catch (const std::exception& e) {
        throw BadInput(std::string(what) + ": " + e.what());
    }
}

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw BadInput(std::string("missing \"") + key + "\"");
    return j.at(key);
}

PuiseuxArc circle_arc(const json& c, int order) {
    const double rho = need(c, "radius").get<double>();
    if (!(rho > 0.0)) throw BadInput("circle radius must be positive");
    const SymbolicReal at = dir_from_json(need(c, "at"), "circle start");
    const int sign = c.value("sign", 1);
    if (sign != 1 && sign != -1) throw BadInput("circle sign must be 1 or -1");
    // t -> rho e^{i at pi} (e^{i sign t / rho} - 1), by arclength.
    SeriesXcd jet = SeriesXcd::Zero(order);
    cplx term(1.0);
    for (int j = 1; j < order; ++j) {
        term *= cplx(0.0, sign / rho) / static_cast<double>(j);
        jet[j] = rho * std::polar(1.0, at.value() * kPi) * term;
    }
    return PuiseuxArc::from_jet(jet, at + SymbolicReal(Rational(sign, 2)), kPi * rho);
}

}  // namespace

cplx point_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw BadInput("a point is [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

PuiseuxArc arc_from_json(const json& j) {
    if (!j.is_object()) throw BadInput("an arc is a JSON object");
    if (j.contains("ray")) return PuiseuxArc::ray(dir_from_json(j["ray"], "ray direction"), j.value("length", 1.0));
    if (j.contains("graph")) {
        const json& g = j["graph"];
        return PuiseuxArc::from_graph(need(g, "d").get<int>(), need(g, "chi").get<std::vector<double>>(),
                                      dir_from_json(g.value("rotation", json(0)), "graph rotation"), j.value("radius", 1.0));
    }
    if (j.contains("jet")) {
        const json& c = j["jet"];
        SeriesXcd jet(static_cast<Eigen::Index>(c.size()));
        for (std::size_t i = 0; i < c.size(); ++i) jet[static_cast<Eigen::Index>(i)] = point_from_json(c[i]);
        std::optional<SymbolicReal> dir;
        if (j.contains("direction")) dir = dir_from_json(j["direction"], "jet direction");
        return PuiseuxArc::from_jet(jet, dir, j.value("radius", 1.0));
    }
    if (j.contains("circle")) return circle_arc(j["circle"], j.value("order", 25));
    throw BadInput("unknown arc kind; expected ray, graph, jet or circle");
}

CornerSpec corner_from_json(const json& j) {
    CornerSpec c{arc_from_json(need(j, "arc1")), arc_from_json(need(j, "arc2")), point_from_json(j.value("vertex", json(0.0))),
                 j.value("wraps", false), std::nullopt};
    if (j.contains("angle")) c.declared_angle = PiAngle::of(dir_from_json(j["angle"], "declared angle"));
    return c;
}

DomainSpec domain_from_json(const json& j) {
    DomainSpec d;
    d.bounded = j.value("bounded", true);
    for (const auto& c : j.value("corners", json::array())) d.corners.push_back(corner_from_json(c));
    for (const auto& e : j.value("ends", json::array())) {
        auto ray = [](const json& r) {
            return Ray{point_from_json(r.value("base", json(0.0))), dir_from_json(need(r, "direction"), "ray direction")};
        };
        d.ends.push_back({ray(need(e, "ray1")), ray(need(e, "ray2"))});
    }
    if (d.bounded && !d.ends.empty()) throw BadInput("a bounded domain has no ends at infinity");
    return d;
}

PolygonInput polygon_from_json(const json& j) {
    PolygonInput p;
    for (const auto& v : need(j, "vertices")) p.vertices.push_back(point_from_json(v));
    if (p.vertices.size() < 3) throw BadInput("a polygon needs at least three vertices");
    for (const auto& a : j.value("angles", json::array())) {
        const SymbolicReal s = dir_from_json(a, "polygon angle");
        if (!s.is_rational()) throw BadInput("polygon angles must be rational multiples of pi");
        p.angles.push_back(s.rational_part());
    }
    if (!p.angles.empty() && p.angles.size() != p.vertices.size()) throw BadInput("one angle per vertex");
    return p;
}

SCPolygon solve_polygon(const PolygonInput& p, double tol) {
    return p.angles.empty() ? solve_sc(p.vertices, tol) : solve_sc(p.vertices, p.angles, tol);
}

GermSource germ_from_input(const json& input, const std::optional<std::string>& alpha, int order) {
    GermSource src;
    if (alpha) {
        const SymbolicReal a = dir_from_json(json(*alpha), "--alpha");
        if (!(a.value() > 0.0 && a.value() <= 2.0)) throw BadInput("--alpha must lie in (0, 2]");
        src.germ = model_corner_germ(a);
        src.kind = "model";
        src.provenance = {{"alpha", a.str()}};
        const double av = a.value();
        src.oracle = [av](const LPoint& z) { return pow_L(z, av); };
        return src;
    }
    const json& g = need(input, "germ");
    if (g.contains("model")) return germ_from_input(json::object(), dir_from_json(g["model"], "model angle").str(), order);
    if (g.contains("corner")) {
        const NormalizedCorner n = normalize_corner(corner_from_json(g["corner"]), order);
        if (!n.final_angle.exact) throw BadInput("the corner angle must be exact to straighten the corner");
        src.germ = straightened_corner_germ(n.corner.arc2, *n.final_angle.exact, order);
        src.kind = "corner";
        src.provenance = {{"original_angle", n.original_angle.str()},
                          {"angle_after_step1", n.angle_after_step1.str()},
                          {"final_angle", n.final_angle.str()},
                          {"m1", n.chain.m1},
                          {"m2", n.chain.m2},
                          {"angle_class", to_string(rationality_class(n.original_angle))}};
        return src;
    }
    if (g.contains("polygon")) {
        const SCPolygon sc = solve_polygon(polygon_from_json(g["polygon"]), 1e-10);
        const int k = need(g, "vertex").get<int>();
        if (k < 0 || static_cast<std::size_t>(k) >= sc.vertices.size()) throw BadInput("vertex index out of range");
        src.germ = sc_corner_germ(sc, static_cast<std::size_t>(k));
        src.kind = "polygon";
        src.provenance = {{"vertex", k}, {"alpha", sc.alpha[static_cast<std::size_t>(k)].str()}, {"sc_residual", sc.residual}};
        return src;
    }
    throw BadInput("germ must be one of model, corner, polygon");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw BadInput(path + ": " + e.what());
    }
}

}  // namespace qcorner::cli
