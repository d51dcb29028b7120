#ifndef QCORNER_MAP_GERM_HPP
#define QCORNER_MAP_GERM_HPP

#include <functional>
#include <optional>

#include "qcorner/domains.hpp"
#include "qcorner/log_power_series.hpp"
#include "qcorner/lsurface.hpp"

namespace qcorner {

/// Germ at 0 of a Riemann map Phi of the upper half plane onto a corner:
/// Phi(0) = 0, Phi([0, tbar)) in arc1, Phi((-tbar, 0]) in arc2 and
/// |Phi(z)| <= E |z|^alpha on the closed half disk of radius tbar.
struct MapGerm {
    std::function<cplx(cplx)> eval;  // closed upper half plane, |z| < tbar
    double tbar = 1.0;
    SymbolicReal alpha;              // interior angle over pi
    double E = 1.0;
    PuiseuxArc arc1;
    PuiseuxArc arc2;
    /// Known expansion at 0, if any.
    std::optional<LogSeries> series;
    /// Closed-form continuation to the Riemann surface of the log, when one is known.
    std::function<cplx(const LPoint&)> on_surface;
};

/// Argument in [0, pi] for points of the closed upper half plane (-0 counts as 0).
inline double upper_arg(cplx z) { return std::atan2(z.imag() > 0 ? z.imag() : 0.0, z.real()); }

}  // namespace qcorner

#endif  // QCORNER_MAP_GERM_HPP
