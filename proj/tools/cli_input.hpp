#ifndef QCORNER_TOOLS_CLI_INPUT_HPP
#define QCORNER_TOOLS_CLI_INPUT_HPP

// JSON job inputs for the command-line front end.
//
//   ARC     {"ray": DIR, "length": L}
//         | {"graph": {"d": 2, "chi": [..], "rotation": DIR}, "radius": r}
//         | {"jet": [[re, im], ..], "direction": DIR, "radius": r}
//         | {"circle": {"radius": rho, "at": DIR, "sign": 1 | -1}, "order": n}
//   CORNER  {"vertex": [x, y], "arc1": ARC, "arc2": ARC, "wraps": false, "angle": DIR}
//   DOMAIN  {"bounded": true, "corners": [CORNER, ..],
//            "ends": [{"ray1": {"base": [x, y], "direction": DIR}, "ray2": {..}}]}
//   POLYGON {"vertices": [[x, y], ..], "angles": [DIR, ..]}
//   GERM    {"model": DIR} | {"corner": CORNER} | {"polygon": POLYGON, "vertex": k}
//
// DIR is a multiple of pi written as "1/2", "sqrt2/2", 3 or the structured
// symbolic form. Circle arcs start at the point of the circle of radius rho
// with argument DIR * pi and run counterclockwise for sign = 1.

#include <optional>
#include <string>

#include "qcorner/domains.hpp"
#include "qcorner/io.hpp"
#include "qcorner/map_germ.hpp"
#include "qcorner/scmap.hpp"

namespace qcorner::cli {

/// Malformed or inconsistent input file.
class BadInput : public Error {
public:
    explicit BadInput(const std::string& what) : Error("BadInput: " + what) {}
};

cplx point_from_json(const json& j);
PuiseuxArc arc_from_json(const json& j);
CornerSpec corner_from_json(const json& j);
DomainSpec domain_from_json(const json& j);

struct PolygonInput {
    std::vector<cplx> vertices;
    std::vector<Rational> angles;  // empty: read off the geometry
};
PolygonInput polygon_from_json(const json& j);
SCPolygon solve_polygon(const PolygonInput& p, double tol);

/// A map germ plus the bookkeeping that produced it.
struct GermSource {
    MapGerm germ;
    std::string kind;  // "model", "corner" or "polygon"
    json provenance;   // angle bookkeeping and solver data
    /// Exact closed form of the continued map, known for the model corner.
    std::function<cplx(const LPoint&)> oracle;
};

/// From --alpha when given, otherwise from the input's "germ" entry.
GermSource germ_from_input(const json& input, const std::optional<std::string>& alpha, int order);

/// Reads a JSON file; throws BadInput on I/O or syntax errors.
json read_json_file(const std::string& path);

}  // namespace qcorner::cli

#endif  // QCORNER_TOOLS_CLI_INPUT_HPP
