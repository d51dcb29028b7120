#ifndef QCORNER_IO_HPP
#define QCORNER_IO_HPP

// JSON encodings shared by the CLI and the tests.

#include <json.hpp>

#include "qcorner/log_power_series.hpp"
#include "qcorner/lsurface.hpp"
#include "qcorner/symbolic_real.hpp"

namespace qcorner {

using json = nlohmann::json;

/// {"rational": [p, q], "irrational_multiples": {"sqrt2": [p, q], ...}}
json to_json(const SymbolicReal& x);
/// Also accepts a bare string ("sqrt2/2") or an integer.
SymbolicReal symbolic_from_json(const json& j);

json to_json(const Horizon& h);
Horizon horizon_from_json(const json& j);

/// {"terms": [{"exponent": ..., "log_poly": [[re, im], ...]}, ...],
///  "truncation_bound": null | {"exact": ..., "strict": b} | {"numeric": v, "strict": b}}
json to_json(const LogSeries& s);
LogSeries series_from_json(const json& j);

json to_json(const LPoint& z);
LPoint lpoint_from_json(const json& j);

json to_json(const QuadraticDomain& w);
QuadraticDomain quad_from_json(const json& j);

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

}  // namespace qcorner

#endif  // QCORNER_IO_HPP
