#include "qcorner/domains.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcorner {

namespace {

constexpr double kNumericAngleTol = 1e-9;

// Representative of x modulo 2 in [0, 2).
SymbolicReal mod2(const SymbolicReal& x) {
    return x - SymbolicReal(Rational(2 * floor_of(x / Rational(2))));
}

double mod2(double x) {
    double r = std::fmod(x, 2.0);
    return r < 0 ? r + 2.0 : r;
}

// Angle in [lo, lo + 2 pi).
double wrap_from(double a, double lo) {
    double r = std::fmod(a - lo, 2 * kPi);
    if (r < 0) r += 2 * kPi;
    return lo + r;
}

PiAngle divide(const PiAngle& a, int m) {
    if (a.exact) return PiAngle::of(*a.exact / Rational(m));
    return PiAngle::numeric(a.value / m);
}

std::optional<Rational> snap_rational(double x, int max_den = 64, double tol = 1e-9) {
    for (int q = 1; q <= max_den; ++q) {
        const double p = std::round(x * q);
        if (std::abs(x - p / q) < tol) return Rational(static_cast<std::int64_t>(p), q);
    }
    return std::nullopt;
}

bool is_straight(const PiAngle& a) {
    if (a.exact) return *a.exact == SymbolicReal(1);
    return std::abs(a.value - 1.0) < kNumericAngleTol;
}

// f / (lead t^m), the unit factor of a jet of multiplicity m.
SeriesXcd unit_part(const SeriesXcd& f, int m) {
    const cplx lead = f[m];
    SeriesXcd u = f.tail(f.size() - m) / lead;
    return u;
}

// r^{1/m} e^{i arg/m} for a prescribed representative of arg.
cplx root_with_arg(cplx a, double arg_rep, int m) {
    return std::polar(std::pow(std::abs(a), 1.0 / m), arg_rep / m);
}

// Representative of arg(a) closest to `target`.
double arg_near(cplx a, double target) {
    double arg = std::arg(a);
    arg += 2 * kPi * std::round((target - arg) / (2 * kPi));
    return arg;
}

SeriesXcd shift_up(const SeriesXcd& u, int m, Eigen::Index n) {
    SeriesXcd out = SeriesXcd::Zero(n);
    for (Eigen::Index j = 0; j + m < n && j < u.size(); ++j) out[j + m] = u[j];
    return out;
}

double winding_number(const std::vector<cplx>& poly, cplx p) {
    double total = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        cplx a = poly[i] - p, b = poly[(i + 1) % poly.size()] - p;
        total += std::arg(b / a);
    }
    return total / (2 * kPi);
}

double distance_to_ray(cplx p, const Ray& r) {
    const cplx dir = std::polar(1.0, r.direction.value() * kPi);
    const double s = std::max(0.0, std::real((p - r.base) * std::conj(dir)));
    return std::abs(p - (r.base + s * dir));
}

bool origin_in_end_closure(const InfinityEnd& e) {
    if (distance_to_ray(0.0, e.ray1) < 1e-12 || distance_to_ray(0.0, e.ray2) < 1e-12) return true;
    // Close the end by a large counterclockwise arc and count windings.
    const double big = 1e6 * (1.0 + std::abs(e.ray1.base) + std::abs(e.ray2.base));
    const double t1 = e.ray1.direction.value() * kPi;
    double t2 = wrap_from(e.ray2.direction.value() * kPi, t1);
    if (t2 <= t1) t2 += 2 * kPi;
    std::vector<cplx> poly{e.ray2.base, e.ray1.base};
    for (int i = 0; i <= 512; ++i) poly.push_back(std::polar(big, t1 + (t2 - t1) * i / 512.0));
    return std::abs(winding_number(poly, 0.0)) > 0.5;
}

PuiseuxArc inverted_ray(const Ray& r, int order) {
    // 1/(a + e^{i theta}/t) = e^{-i theta} t / (1 + a e^{-i theta} t)
    const cplx e = std::polar(1.0, -r.direction.value() * kPi);
    SeriesXcd jet = SeriesXcd::Zero(order);
    cplx p = e;
    for (int j = 1; j < order; ++j) {
        jet[j] = p;
        p *= -r.base * e;
    }
    const double radius = std::abs(r.base) > 0 ? 0.5 / std::abs(r.base) : 1.0;
    return PuiseuxArc::from_jet(jet, -r.direction, radius);
}

PuiseuxArc inverted_arc(const PuiseuxArc& a, cplx v) {
    // 1/(v + phi) - 1/v = -(phi / v^2) / (1 + phi / v)
    const Eigen::Index n = a.jet.size();
    SeriesXcd geom(n);
    for (Eigen::Index j = 0; j < n; ++j) geom[j] = (j % 2 == 0) ? 1.0 : -1.0;
    SeriesXcd g = a.jet / v;
    SeriesXcd out = multiply<cplx>(a.jet, compose<cplx>(geom, g, n), n) * (-1.0 / (v * v));
    return PuiseuxArc::from_jet(out, std::nullopt, std::min(a.radius, 0.5 * std::abs(v)));
}

}  // namespace

std::string PiAngle::str() const {
    if (exact) return exact->str();
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

AngleClass rationality_class(const PiAngle& angle) {
    if (!angle.exact) throw UnknownClass("angle " + angle.str() + "*pi has no exact representation");
    return angle.exact->is_rational() ? AngleClass::RATIONAL_PI_MULTIPLE : AngleClass::IRRATIONAL_PI_MULTIPLE;
}

const char* to_string(AngleClass c) {
    return c == AngleClass::RATIONAL_PI_MULTIPLE ? "RATIONAL_PI_MULTIPLE" : "IRRATIONAL_PI_MULTIPLE";
}

PuiseuxArc PuiseuxArc::from_graph(int d, const std::vector<double>& chi, const SymbolicReal& rotation, double radius) {
    if (d < 1) throw InvalidDomain("ramification index must be positive");
    if (!chi.empty() && chi[0] != 0.0) throw InvalidDomain("chi(0) must vanish");
    const Eigen::Index n = std::max<Eigen::Index>(d + 1, static_cast<Eigen::Index>(chi.size()));
    const cplx rot = std::polar(1.0, rotation.value() * kPi);
    SeriesXcd jet = SeriesXcd::Zero(n);
    jet[d] = 1.0;
    for (std::size_t j = 0; j < chi.size(); ++j) jet[j] += cplx(0.0, chi[j]);
    jet *= rot;

    std::size_t k = 1;
    while (k < chi.size() && chi[k] == 0.0) ++k;
    std::optional<SymbolicReal> dir;
    if (k >= chi.size() || static_cast<int>(k) > d) {
        dir = rotation;
    } else if (static_cast<int>(k) < d) {
        dir = rotation + SymbolicReal(Rational(chi[k] > 0 ? 1 : -1, 2));
    } else if (std::abs(chi[k]) == 1.0) {
        dir = rotation + SymbolicReal(Rational(chi[k] > 0 ? 1 : -1, 4));
    }
    PuiseuxArc a{jet, dir, d, radius};
    return a;
}

PuiseuxArc PuiseuxArc::ray(const SymbolicReal& direction, double length) {
    SeriesXcd jet = SeriesXcd::Zero(2);
    jet[1] = std::polar(1.0, direction.value() * kPi);
    return {jet, direction, 1, length};
}

PuiseuxArc PuiseuxArc::from_jet(SeriesXcd jet, std::optional<SymbolicReal> direction, double radius) {
    if (jet.size() == 0 || jet[0] != cplx(0.0)) throw InvalidDomain("arc jet must vanish at the vertex");
    if (!valuation(jet)) throw InvalidDomain("arc jet is identically zero");
    return {std::move(jet), std::move(direction), 1, radius};
}

int PuiseuxArc::multiplicity() const {
    auto v = valuation(jet);
    if (!v) throw InvalidDomain("arc jet is identically zero");
    return static_cast<int>(*v);
}

cplx PuiseuxArc::leading_coefficient() const { return jet[multiplicity()]; }

PiAngle PuiseuxArc::tangent_direction() const {
    if (direction) return PiAngle::of(*direction);
    return PiAngle::numeric(std::arg(leading_coefficient()) / kPi);
}

PiAngle corner_angle(const CornerSpec& c) {
    if (c.declared_angle) return *c.declared_angle;
    const PiAngle d1 = c.arc1.tangent_direction(), d2 = c.arc2.tangent_direction();
    if (d1.exact && d2.exact) {
        SymbolicReal a = mod2(*d2.exact - *d1.exact);
        if (a.is_zero()) {
            if (!c.wraps) throw CuspAngleZero("tangent arcs bound a cusp");
            a = SymbolicReal(2);
        }
        return PiAngle::of(a);
    }
    double a = mod2(d2.value - d1.value);
    if (a < kNumericAngleTol || a > 2.0 - kNumericAngleTol) {
        if (!c.wraps) throw CuspAngleZero("tangent arcs bound a cusp");
        a = 2.0;
    }
    return PiAngle::numeric(a);
}

bool arcs_form_analytic_curve(const PuiseuxArc& a, const PuiseuxArc& b, double tol) {
    if (a.multiplicity() != 1 || b.multiplicity() != 1) return false;
    const Eigen::Index n = std::max(a.jet.size(), b.jet.size());
    SeriesXcd h = compose<cplx>(revert<cplx>(resized(a.jet, n), n), resized(b.jet, n), n);
    if (h[1].real() >= 0) return false;
    for (Eigen::Index j = 1; j < n; ++j)
        if (std::abs(h[j].imag()) > tol * std::max(1.0, std::abs(h[j]))) return false;
    return true;
}

std::vector<SingularPoint> singular_points(const DomainSpec& d) {
    std::vector<SingularPoint> out;
    std::vector<bool> singular;
    auto component = [&](const CornerSpec& c, cplx at, bool infinity) {
        PiAngle angle;
        bool sing = false;
        try {
            angle = corner_angle(c);
        } catch (const CuspAngleZero&) {
            angle = PiAngle::of(SymbolicReal(0));
            sing = true;
        }
        if (!sing)
            sing = c.arc1.multiplicity() > 1 || c.arc2.multiplicity() > 1 || !is_straight(angle) ||
                   !arcs_form_analytic_curve(c.arc1, c.arc2);
        auto it = std::find_if(out.begin(), out.end(), [&](const SingularPoint& p) {
            return p.at_infinity == infinity && (infinity || std::abs(p.point - at) < 1e-12);
        });
        if (it == out.end()) {
            out.push_back({at, infinity, {}});
            singular.push_back(false);
            it = out.end() - 1;
        }
        it->angles.push_back(angle);
        singular[it - out.begin()] = singular[it - out.begin()] || sing;
    };
    for (const auto& c : d.corners) component(c, c.vertex, false);
    for (const auto& e : d.ends) {
        // Angle at infinity is the angle of the inverted end at 0.
        CornerSpec c{inverted_ray(e.ray2, 30), inverted_ray(e.ray1, 30), 0.0, false, std::nullopt};
        component(c, 0.0, true);
    }
    std::vector<SingularPoint> result;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (singular[i]) result.push_back(out[i]);
    return result;
}

DomainSpec translate(const DomainSpec& d, cplx shift) {
    DomainSpec out = d;
    for (auto& c : out.corners) c.vertex += shift;
    for (auto& e : out.ends) {
        e.ray1.base += shift;
        e.ray2.base += shift;
    }
    return out;
}

DomainSpec invert_at_infinity(const DomainSpec& d) {
    DomainSpec out;
    out.bounded = true;
    for (const auto& e : d.ends) {
        if (origin_in_end_closure(e)) throw RequiresTranslation("0 lies in the closure of the domain; translate first");
        // z -> 1/z reverses arguments, so the counterclockwise order of the rays swaps.
        out.corners.push_back({inverted_ray(e.ray2, 30), inverted_ray(e.ray1, 30), 0.0, false, std::nullopt});
    }
    for (const auto& c : d.corners) {
        if (std::abs(c.vertex) < 1e-12) throw RequiresTranslation("0 is a boundary point; translate first");
        CornerSpec ci{inverted_arc(c.arc1, c.vertex), inverted_arc(c.arc2, c.vertex), 1.0 / c.vertex, c.wraps,
                      std::nullopt};
        try {
            ci.declared_angle = corner_angle(c);
        } catch (const CuspAngleZero&) {
        }
        out.corners.push_back(std::move(ci));
    }
    return out;
}

DomainSpec polygon_domain(const std::vector<cplx>& vertices_in, const std::vector<SymbolicReal>& angles_in) {
    const std::size_t n = vertices_in.size();
    if (n < 3) throw InvalidDomain("a polygon needs at least three vertices");
    if (!angles_in.empty() && angles_in.size() != n) throw InvalidDomain("one angle per vertex expected");
    double area = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const cplx a = vertices_in[k], b = vertices_in[(k + 1) % n];
        area += a.real() * b.imag() - b.real() * a.imag();
    }
    if (area == 0.0) throw InvalidDomain("degenerate polygon");
    std::vector<cplx> v = vertices_in;
    std::vector<SymbolicReal> angles = angles_in;
    if (area < 0) {
        std::reverse(v.begin(), v.end());
        std::reverse(angles.begin(), angles.end());
    }
    auto exact_direction = [](cplx w) -> std::optional<SymbolicReal> {
        if (auto q = snap_rational(std::arg(w) / kPi)) return SymbolicReal(*q);
        return std::nullopt;
    };
    DomainSpec d;
    d.bounded = true;
    for (std::size_t k = 0; k < n; ++k) {
        const cplx here = v[k], next = v[(k + 1) % n], prev = v[(k + n - 1) % n];
        if (std::abs(next - here) == 0.0 || std::abs(prev - here) == 0.0) throw InvalidDomain("repeated vertex");
        CornerSpec c;
        c.vertex = here;
        auto d1 = exact_direction(next - here);
        auto d2 = exact_direction(prev - here);
        SeriesXcd j1 = SeriesXcd::Zero(2), j2 = SeriesXcd::Zero(2);
        j1[1] = (next - here) / std::abs(next - here);
        j2[1] = (prev - here) / std::abs(prev - here);
        c.arc1 = PuiseuxArc::from_jet(j1, d1, std::abs(next - here));
        c.arc2 = PuiseuxArc::from_jet(j2, d2, std::abs(prev - here));
        if (!angles.empty()) {
            const double geometric = mod2(std::arg(j2[1] / j1[1]) / kPi);
            const double declared = angles[k].value();
            if (std::abs(mod2(declared - geometric + 1.0) - 1.0) > 1e-9)
                throw InvalidDomain("declared angle does not match the vertex geometry");
            c.declared_angle = PiAngle::of(angles[k]);
        }
        d.corners.push_back(std::move(c));
    }
    return d;
}

cplx TransformChain::forward(cplx z) const {
    const cplx w = z - vertex;
    if (w == cplx(0.0)) return 0.0;
    const double a1 = wrap_from(std::arg(w), bisector1 - kPi);
    const cplx w1 = std::polar(std::pow(std::abs(w), 1.0 / m1), a1 / m1);
    const cplx w2 = -newton_solve<cplx>(psi, w1, evaluate(psi_inverse, w1));
    if (w2 == cplx(0.0)) return 0.0;
    const double a2 = wrap_from(std::arg(w2), bisector3 - kPi);
    return rho * std::polar(std::pow(std::abs(w2), 1.0 / m2), a2 / m2);
}

cplx TransformChain::inverse(cplx w3) const {
    const cplx w2 = std::pow(w3 / rho, m2);
    const cplx w1 = evaluate(psi, -w2);
    return vertex + std::pow(w1, m1);
}

LogSeries TransformChain::forward(const LogSeries& phi, const Horizon& cap) const {
    const Horizon outer_bound = Horizon::exact(SymbolicReal(psi.size() - 1));
    LogSeries centered = add(phi, LogSeries::monomial(SymbolicReal(0), -vertex));
    LogSeries s1 = pow_rational(centered, Rational(1, m1), cap, bisector1);
    LogSeries s2 = compose_power_series<cplx>(-psi_inverse, outer_bound, s1, cap);
    return scale(pow_rational(s2, Rational(1, m2), cap, bisector3), rho);
}

LogSeries TransformChain::inverse(const LogSeries& phi3, const Horizon& cap) const {
    const Horizon outer_bound = Horizon::exact(SymbolicReal(psi.size() - 1));
    LogSeries s2 = pow_rational(scale(phi3, 1.0 / rho), Rational(m2), cap);
    LogSeries s1 = compose_power_series<cplx>(psi, outer_bound, scale(s2, cplx(-1.0)), cap);
    LogSeries s0 = pow_rational(s1, Rational(m1), cap);
    return add(s0, LogSeries::monomial(SymbolicReal(0), vertex));
}

NormalizedCorner normalize_corner(const CornerSpec& c, int order) {
    const PiAngle angle = corner_angle(c);
    const Eigen::Index n = order;
    TransformChain chain;
    chain.vertex = c.vertex;
    chain.m1 = c.arc1.multiplicity();
    const int m2raw = c.arc2.multiplicity();
    const int m1 = chain.m1;

    // Step 1: m1-th root on the branch centered at the bisector.
    const cplx c1 = c.arc1.leading_coefficient();
    const double theta1 = std::arg(c1);
    const double theta2 = theta1 + angle.radians();
    chain.bisector1 = theta1 + angle.radians() / 2;
    SeriesXcd u1 = resized(unit_part(c.arc1.jet, m1), n);
    chain.psi = shift_up(power_unit<cplx>(u1, 1.0 / m1, n), 1, n) * root_with_arg(c1, theta1, m1);

    // Step 0 folded in: arc2(s^{m1})^{1/m1} = c2^{1/m1} s^{m2} u2(s^{m1})^{1/m1}.
    const cplx c2 = c.arc2.leading_coefficient();
    const double arg2 = arg_near(c2, theta2);
    if (std::abs(arg2 - theta2) > 1e-8) throw NormalizationError("arc2 direction disagrees with the corner angle");
    SeriesXcd u2 = substitute_power<cplx>(resized(unit_part(c.arc2.jet, m2raw), n), m1, n);
    SeriesXcd arc2_1 = shift_up(power_unit<cplx>(u2, 1.0 / m1, n), m2raw, n) * root_with_arg(c2, arg2, m1);

    // Step 2: -psi^{-1} straightens arc1 onto the negative axis.
    chain.psi_inverse = revert<cplx>(chain.psi, n);
    SeriesXcd arc2_2 = -compose<cplx>(chain.psi_inverse, arc2_1, n);
    auto v2 = valuation(arc2_2, 1e-300);
    if (!v2) throw NormalizationError("arc2 collapsed during straightening");
    chain.m2 = static_cast<int>(*v2);
    const int m2 = chain.m2;
    const PiAngle angle1 = divide(angle, m1);

    // Step 3: m2-th root with rho chosen so that the negative axis stays put.
    chain.bisector3 = kPi + angle1.radians() / 2;
    chain.rho = std::polar(1.0, kPi * (1.0 - 1.0 / m2));
    const cplx lead = arc2_2[m2];
    const double lead_arg = arg_near(lead, kPi + angle1.radians());
    if (std::abs(lead_arg - (kPi + angle1.radians())) > 1e-8)
        throw NormalizationError("straightened arc2 direction disagrees with the corner angle");
    SeriesXcd u3 = resized(unit_part(arc2_2, m2), n);
    SeriesXcd arc2_3 = shift_up(power_unit<cplx>(u3, 1.0 / m2, n), 1, n) * root_with_arg(lead, lead_arg, m2) * chain.rho;
    arc2_3 = rescale_argument<cplx>(arc2_3, cplx(1.0 / std::abs(arc2_3[1])));

    NormalizedCorner out;
    out.chain = chain;
    out.original_angle = angle;
    out.angle_after_step1 = angle1;
    out.final_angle = divide(angle1, m2);
    std::optional<SymbolicReal> dir2;
    if (out.final_angle.exact) dir2 = SymbolicReal(1) + *out.final_angle.exact;
    double radius = estimate_radius(arc2_3);
    if (!std::isfinite(radius)) radius = 1.0;
    out.corner.arc1 = PuiseuxArc::ray(SymbolicReal(1));
    out.corner.arc2 = PuiseuxArc::from_jet(arc2_3, dir2, std::min(1.0, 0.5 * radius));
    out.corner.vertex = 0.0;
    out.corner.wraps = c.wraps;
    out.corner.declared_angle = out.final_angle;
    return out;
}

}  // namespace qcorner
