#include "qcorner/scmap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcorner/quadrature.hpp"

namespace qcorner {

namespace {

// u^beta with arg(u) in [0, pi].
cplx pow_upper(cplx u, double beta) {
    const double r = std::abs(u);
    if (r == 0.0) return beta == 0.0 ? cplx(1.0) : cplx(0.0);
    return std::polar(std::pow(r, beta), beta * upper_arg(u));
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// int_p^q prod_k (t - x_k)^{beta_k} dt along the segment, where the factor of
// prevertex `s` (at p) and of prevertex `e` (at q) are absorbed into a Jacobi weight.
cplx integrate_segment(const std::vector<double>& xs, const std::vector<double>& betas, cplx p, cplx q,
                       std::size_t s, std::size_t e) {
    const double b = (s == kNone) ? 0.0 : betas[s];
    const double a = (e == kNone) ? 0.0 : betas[e];
    const cplx half = (q - p) / 2.0;
    cplx scale = half;
    if (s != kNone) scale *= pow_upper(half, b);
    if (e != kNone) scale *= pow_upper(-half, a);
    cplx prev(0.0);
    for (int n = 16;; n *= 2) {
        const QuadratureRule rule = gauss_jacobi(n, a, b);
        cplx sum(0.0);
        for (int i = 0; i < n; ++i) {
            const cplx t = p + half * (1.0 + rule.nodes[i]);
            cplx f(rule.weights[i]);
            for (std::size_t k = 0; k < xs.size(); ++k) {
                if (k == s || k == e || betas[k] == 0.0) continue;
                f *= pow_upper(t - xs[k], betas[k]);
            }
            sum += f;
        }
        sum *= scale;
        if (n > 16 && std::abs(sum - prev) <= 1e-14 * std::abs(sum)) return sum;
        if (n >= 512) return sum;
        prev = sum;
    }
}

cplx side_integral(const std::vector<double>& xs, const std::vector<double>& betas, std::size_t k) {
    const double mid = 0.5 * (xs[k] + xs[k + 1]);
    return integrate_segment(xs, betas, xs[k], mid, k, kNone) + integrate_segment(xs, betas, mid, xs[k + 1], kNone, k + 1);
}

std::size_t nearest(const std::vector<double>& xs, cplx z) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < xs.size(); ++k)
        if (std::abs(z - xs[k]) < std::abs(z - xs[best])) best = k;
    return best;
}

std::vector<double> to_betas(const std::vector<Rational>& alpha) {
    std::vector<double> b;
    for (const auto& a : alpha) b.push_back(a.value() - 1.0);
    return b;
}

std::vector<double> prevertices_from(const Eigen::VectorXd& y, std::size_t n) {
    // x_0 = -1, x_1 = 0, x_{n-1} = 1; the n - 2 gaps in [0, 1] are a softmax of (0, y).
    Eigen::VectorXd logits(n - 2);
    logits[0] = 0.0;
    logits.tail(n - 3) = y;
    Eigen::VectorXd w = (logits.array() - logits.maxCoeff()).exp();
    w /= w.sum();
    std::vector<double> xs(n);
    xs[0] = -1.0;
    xs[1] = 0.0;
    for (std::size_t k = 2; k + 1 < n; ++k) xs[k] = xs[k - 1] + w[k - 2];
    xs[n - 1] = 1.0;
    return xs;
}

}  // namespace

Mobius::Mobius(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {
    if (std::abs(determinant()) < 1e-300) throw DegenerateTransform("ad - bc = 0");
}

cplx Mobius::operator()(cplx z) const { return (a * z + b) / (c * z + d); }

cplx Mobius::derivative(cplx z) const {
    const cplx den = c * z + d;
    return determinant() / (den * den);
}

Mobius Mobius::inverse() const { return {d, -b, -c, a}; }

Mobius Mobius::compose(const Mobius& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mobius mobius_H_to_disk() { return {1.0, cplx(0, -1), 1.0, cplx(0, 1)}; }

Mobius disk_automorphism(cplx a, cplx rho) {
    if (std::abs(a) >= 1.0) throw DegenerateTransform("automorphism center must lie in the open disk");
    return {rho, -rho * a, std::conj(a), -1.0};
}

Mobius normalize_at(const Mobius& base, cplx a) {
    const cplx w0 = base(a);
    const cplx D = base.derivative(a) / (std::norm(w0) - 1.0);
    return disk_automorphism(w0, std::conj(D) / std::abs(D)).compose(base);
}

Mobius normalize_at(cplx a) { return normalize_at(Mobius(), a); }

cplx sc_integral(const std::vector<double>& xs, const std::vector<double>& betas, std::size_t from, cplx z) {
    const cplx p = xs.at(from);
    if (z == p) return 0.0;
    std::size_t to = kNone;
    for (std::size_t k = 0; k < xs.size(); ++k)
        if (z == cplx(xs[k])) to = k;
    const cplx mid = p + (z - p) / 2.0;
    return integrate_segment(xs, betas, p, mid, from, kNone) + integrate_segment(xs, betas, mid, z, kNone, to);
}

std::vector<double> SCPolygon::betas() const { return to_betas(alpha); }

cplx SCPolygon::operator()(cplx z) const {
    const std::size_t j = nearest(prevertices, z);
    cplx base = B;
    const auto bs = betas();
    for (std::size_t k = 0; k < j; ++k) base += A * side_integral(prevertices, bs, k);
    return base + A * sc_integral(prevertices, bs, j, z);
}

cplx SCPolygon::derivative(cplx z) const {
    cplx f = A;
    const auto bs = betas();
    for (std::size_t k = 0; k < prevertices.size(); ++k) f *= pow_upper(z - prevertices[k], bs[k]);
    return f;
}

SCPolygon solve_sc(const std::vector<cplx>& w, const std::vector<Rational>& alpha, double tol) {
    const std::size_t n = w.size();
    if (n < 3 || alpha.size() != n) throw InvalidAngles("need n >= 3 vertices with one angle each");
    Rational turning(0);
    for (const auto& a : alpha) {
        if (a <= Rational(0) || a > Rational(2)) throw InvalidAngles("angles must lie in (0, 2] pi");
        turning += Rational(1) - a;
    }
    if (turning != Rational(2)) throw InvalidAngles("sum of (1 - alpha_k) must equal 2");

    const auto betas = to_betas(alpha);
    std::vector<double> logL(n);
    for (std::size_t k = 0; k < n; ++k) logL[k] = std::log(std::abs(w[(k + 1) % n] - w[k]));

    const Eigen::Index m = static_cast<Eigen::Index>(n) - 3;
    auto residual = [&](const Eigen::VectorXd& y) {
        const auto xs = prevertices_from(y, n);
        const double i0 = std::log(std::abs(side_integral(xs, betas, 0)));
        Eigen::VectorXd r(m);
        for (Eigen::Index k = 1; k <= m; ++k)
            r[k - 1] = std::log(std::abs(side_integral(xs, betas, k))) - i0 - (logL[k] - logL[0]);
        return r;
    };

    SCPolygon sc;
    sc.vertices = w;
    sc.alpha = alpha;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
    if (m > 0) {
        Eigen::VectorXd r = residual(y);
        int it = 0;
        for (; it < 100 && r.cwiseAbs().maxCoeff() >= tol; ++it) {
            Eigen::MatrixXd J(m, m);
            for (Eigen::Index j = 0; j < m; ++j) {
                Eigen::VectorXd yp = y;
                const double h = 1e-6 * std::max(1.0, std::abs(y[j]));
                yp[j] += h;
                J.col(j) = (residual(yp) - r) / h;
            }
            const Eigen::VectorXd step = J.colPivHouseholderQr().solve(-r);
            double lambda = 1.0;
            bool accepted = false;
            for (int ls = 0; ls < 40; ++ls, lambda /= 2) {
                Eigen::VectorXd trial = y + lambda * step;
                Eigen::VectorXd rt = residual(trial);
                if (rt.allFinite() && rt.norm() < r.norm()) {
                    y = trial;
                    r = rt;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) break;
        }
        sc.iterations = it;
        sc.residual = r.cwiseAbs().maxCoeff();
        if (!(sc.residual < tol))
            throw NonConvergence("SC parameter problem: residual " + std::to_string(sc.residual));
    }
    sc.prevertices = prevertices_from(y, n);
    sc.A = (w[1] - w[0]) / side_integral(sc.prevertices, betas, 0);
    sc.B = w[0];

    // The angles must be those of the vertices, otherwise the images drift.
    double diam = 0.0;
    for (const auto& p : w)
        for (const auto& q : w) diam = std::max(diam, std::abs(p - q));
    cplx image = sc.B;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        image += sc.A * side_integral(sc.prevertices, betas, k);
        if (std::abs(image - w[k + 1]) > 1e-8 * diam)
            throw InvalidAngles("angles are inconsistent with the vertex positions");
    }
    return sc;
}

SCPolygon solve_sc(const std::vector<cplx>& vertices, double tol) {
    const DomainSpec d = polygon_domain(vertices);
    std::vector<cplx> w;
    std::vector<Rational> alpha;
    for (const auto& c : d.corners) {
        const PiAngle a = corner_angle(c);
        if (!a.exact || !a.exact->is_rational()) throw InvalidAngles("polygon angles are not rational multiples of pi");
        w.push_back(c.vertex);
        alpha.push_back(a.exact->rational_part());
    }
    return solve_sc(w, alpha, tol);
}

MapGerm sc_corner_germ(const SCPolygon& sc, std::size_t k, int order) {
    const std::size_t n = sc.prevertices.size();
    if (k >= n) throw Error("sc_corner_germ: vertex index out of range");
    const auto betas = sc.betas();
    const double xk = sc.prevertices[k];
    const double alpha = sc.alpha[k].value();

    // prod_{j != k} (s + d_j)^{beta_j} = C * sum p_n s^n, d_j = x_k - x_j.
    SeriesXcd p = SeriesXcd::Zero(order);
    p[0] = 1.0;
    cplx C = 1.0;
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        const double dj = xk - sc.prevertices[j];
        gap = std::min(gap, std::abs(dj));
        C *= pow_upper(dj, betas[j]);
        SeriesXcd binom = SeriesXcd::Zero(order);
        binom[0] = 1.0;
        for (int m = 1; m < order; ++m) binom[m] = binom[m - 1] * ((betas[j] - (m - 1)) / m) / dj;
        p = multiply<cplx>(p, binom, order);
    }
    // Phi(z) = A C sum p_n z^{alpha + n} / (alpha + n)
    SeriesXcd h(order);
    for (int m = 0; m < order; ++m) h[m] = sc.A * C * p[m] / (alpha + m);

    MapGerm g;
    g.alpha = SymbolicReal(sc.alpha[k]);
    g.tbar = 0.5 * gap;
    double bound = 0.0;
    for (int m = 0; m < order; ++m) bound += std::abs(h[m]) * std::pow(g.tbar, m);
    g.E = bound;
    g.eval = [h, alpha](cplx z) { return pow_upper(z, alpha) * evaluate(h, z); };
    g.on_surface = [h, alpha](const LPoint& z) {
        return pow_L(z, alpha) * evaluate(h, std::polar(z.r(), z.phi()));
    };
    LogSeries s(Horizon::exact(SymbolicReal(sc.alpha[k] + Rational(order - 1))));
    for (int m = 0; m < order; ++m)
        if (h[m] != cplx(0.0)) s.add_term(SymbolicReal(sc.alpha[k] + Rational(m)), {h[m]});
    g.series = s;

    const DomainSpec d = polygon_domain(sc.vertices);
    g.arc1 = d.corners[k].arc1;
    g.arc2 = d.corners[k].arc2;
    return g;
}

MapGerm model_corner_germ(const SymbolicReal& alpha) {
    if (!(SymbolicReal(0) < alpha) || SymbolicReal(2) < alpha) throw Error("model corner needs 0 < alpha <= 2");
    const double a = alpha.value();
    MapGerm g;
    g.alpha = alpha;
    g.tbar = 1.0;
    g.E = 1.0;
    g.eval = [a](cplx z) { return pow_upper(z, a); };
    g.on_surface = [a](const LPoint& z) { return pow_L(z, a); };
    g.series = LogSeries::monomial(alpha);
    g.arc1 = PuiseuxArc::ray(SymbolicReal(0));
    g.arc2 = PuiseuxArc::ray(alpha);
    return g;
}

MapGerm straightened_corner_germ(const PuiseuxArc& gamma, const SymbolicReal& alpha, int order) {
    const double beta = kPi * (1.0 + alpha.value());
    SeriesXcd gm = resized(gamma.jet, order);
    if (std::abs(gm[1] - std::polar(1.0, beta)) > 1e-10)
        throw NormalizationError("arc2 must leave 0 with unit speed in direction pi (1 + alpha)");
    const cplx rot = std::polar(1.0, -beta);

    Eigen::VectorXd G = Eigen::VectorXd::Zero(order), sigma = Eigen::VectorXd::Zero(order);
    G[1] = sigma[1] = 1.0;
    for (int n = 2; n < order; ++n) {
        // c = [s^n] sum_{k >= 2} gamma_k sigma(s)^k with sigma known below degree n.
        SeriesXcd sig = sigma.head(n + 1).cast<cplx>();
        SeriesXcd power = sig;
        cplx c(0.0);
        for (int k = 2; k <= n; ++k) {
            power = multiply<cplx>(power, sig, n + 1);
            c += gm[k] * power[n];
        }
        const cplx d = c * rot;
        const double sn = std::sin((n - 1) * beta);
        if (std::abs(sn) < 1e-12) throw NormalizationError("resonant angle: (n - 1)(1 + alpha) is an integer");
        G[n] = d.imag() / sn;
        sigma[n] = G[n] * std::cos((n - 1) * beta) - d.real();
    }
    double radius = estimate_radius(G);
    if (!std::isfinite(radius)) radius = 1.0;
    const double smax = 0.5 * std::min(radius, 2.0 * gamma.radius);
    const double a = alpha.value();

    MapGerm g;
    g.alpha = alpha;
    g.tbar = std::pow(smax, 1.0 / a);
    double bound = 0.0;
    for (int n = 1; n < order; ++n) bound += std::abs(G[n]) * std::pow(smax, n - 1);
    g.E = bound;
    g.eval = [G, a](cplx z) { return evaluate(G, -pow_upper(z, a)); };
    g.on_surface = [G, a](const LPoint& z) { return evaluate(G, -pow_L(z, a)); };
    LogSeries s(Horizon::exact(alpha * Rational(order - 1)));
    for (int n = 1; n < order; ++n)
        if (G[n] != 0.0) s.add_term(alpha * Rational(n), {cplx(n % 2 == 0 ? G[n] : -G[n])});
    g.series = s;
    g.arc1 = PuiseuxArc::ray(SymbolicReal(1));
    g.arc2 = gamma;
    return g;
}

}  // namespace qcorner
