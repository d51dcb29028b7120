#ifndef QCORNER_DOMAINS_HPP
#define QCORNER_DOMAINS_HPP

// Boundary model near singular points: Puiseux arcs, corners, interior
// angles, inversion at infinity and the normalization of a corner to an
// analytic corner.
//
// Conventions. An arc is a germ t -> vertex + phi(t), t in [0, radius), with
// phi(0) = 0. A corner is the germ of a domain bounded by two arcs; the
// domain lies counterclockwise from arc1 to arc2, so a Riemann map of the
// upper half plane sends the positive axis to arc1 and the negative axis to
// arc2. Angles are stored in units of pi.

#include <optional>
#include <string>
#include <vector>

#include "qcorner/log_power_series.hpp"
#include "qcorner/lsurface.hpp"
#include "qcorner/power_series.hpp"
#include "qcorner/symbolic_real.hpp"

namespace qcorner {

/// An angle as a multiple of pi; exact when derivable from exact arc data.
struct PiAngle {
    std::optional<SymbolicReal> exact;
    double value = 0.0;

    static PiAngle of(const SymbolicReal& x) { return {x, x.value()}; }
    static PiAngle numeric(double v) { return {std::nullopt, v}; }
    double radians() const { return value * kPi; }
    std::string str() const;
};

enum class AngleClass { RATIONAL_PI_MULTIPLE, IRRATIONAL_PI_MULTIPLE };

/// Decided on the exact representation; throws UnknownClass for numeric angles.
AngleClass rationality_class(const PiAngle& angle);
const char* to_string(AngleClass c);

struct PuiseuxArc {
    SeriesXcd jet;                          // phi(t) = sum jet[j] t^j, jet[0] = 0
    std::optional<SymbolicReal> direction;  // exact arg of the leading coefficient, over pi
    int d = 1;                              // ramification index of the graph form
    double radius = 1.0;

    /// e^{i pi rotation} (t^d + i chi(t)), chi real with chi(0) = 0.
    static PuiseuxArc from_graph(int d, const std::vector<double>& chi, const SymbolicReal& rotation,
                                 double radius = 1.0);
    /// t -> e^{i pi direction} t.
    static PuiseuxArc ray(const SymbolicReal& direction, double length = 1.0);
    static PuiseuxArc from_jet(SeriesXcd jet, std::optional<SymbolicReal> direction = std::nullopt,
                               double radius = 1.0);

    /// Order of vanishing of phi at 0.
    int multiplicity() const;
    cplx leading_coefficient() const;
    /// Tangent direction of the arc at the vertex.
    PiAngle tangent_direction() const;
    cplx operator()(double t) const { return evaluate(jet, cplx(t)); }
};

struct CornerSpec {
    PuiseuxArc arc1;
    PuiseuxArc arc2;
    cplx vertex{0.0, 0.0};
    /// Tangent arcs bound a full turn (slit ends) rather than a cusp.
    bool wraps = false;
    /// Set when the exact angle is known from elsewhere (conformal images).
    std::optional<PiAngle> declared_angle;
};

/// Interior angle in (0, 2]; throws CuspAngleZero for tangent arcs that do not wrap.
PiAngle corner_angle(const CornerSpec& c);

/// An end of an unbounded domain bounded by two rays base + e^{i pi direction} s.
struct Ray {
    cplx base{0.0, 0.0};
    SymbolicReal direction;
};
struct InfinityEnd {
    Ray ray1;
    Ray ray2;  // the domain near infinity lies counterclockwise from ray1 to ray2
};

struct DomainSpec {
    bool bounded = true;
    std::vector<CornerSpec> corners;  // one entry per germ component at a boundary point
    std::vector<InfinityEnd> ends;    // only for unbounded domains
};

struct SingularPoint {
    cplx point;
    bool at_infinity = false;
    std::vector<PiAngle> angles;  // angle of every germ component; 0 for cusps
};

/// True when the two regular arcs of a straight-angle corner continue each other analytically.
bool arcs_form_analytic_curve(const PuiseuxArc& a, const PuiseuxArc& b, double tol = 1e-12);

std::vector<SingularPoint> singular_points(const DomainSpec& d);

/// Reflects the boundary data through z -> 1/z. Ends become corners at 0.
/// Throws RequiresTranslation when 0 lies in the closure of the domain near infinity.
DomainSpec invert_at_infinity(const DomainSpec& d);
DomainSpec translate(const DomainSpec& d, cplx shift);

/// Counterclockwise polygon; angles are snapped to rationals with
/// denominator <= 64 when the vertex data allows it.
DomainSpec polygon_domain(const std::vector<cplx>& vertices, const std::vector<SymbolicReal>& angles = {});

/// The conformal chain z -> w3 taking a corner to an analytic corner with
/// arc1 = (-r, 0] and arc2 leaving 0 in direction pi (1 + final angle).
class TransformChain {
public:
    int m1 = 1;             // multiplicity of arc1
    int m2 = 1;             // multiplicity of arc2 after steps 0-2
    cplx vertex{0.0, 0.0};
    double bisector1 = 0.0;  // branch center of the first root (radians)
    double bisector3 = 0.0;  // branch center of the last root (radians)
    cplx rho{1.0, 0.0};
    SeriesXcd psi;           // arc1 after the first root
    SeriesXcd psi_inverse;   // its reversion, used as Newton start

    cplx forward(cplx z) const;
    cplx inverse(cplx w) const;
    /// Chain applied to a map series Phi(z) with Phi(0) = vertex.
    LogSeries forward(const LogSeries& phi, const Horizon& cap) const;
    LogSeries inverse(const LogSeries& phi3, const Horizon& cap) const;
};

struct NormalizedCorner {
    CornerSpec corner;          // arc1 = -t, arc2 with |phi'(0)| = 1, vertex 0
    TransformChain chain;
    PiAngle original_angle;
    PiAngle angle_after_step1;  // original / m1
    PiAngle final_angle;        // original / (m1 m2)
};

NormalizedCorner normalize_corner(const CornerSpec& c, int order = 30);

}  // namespace qcorner

#endif  // QCORNER_DOMAINS_HPP
