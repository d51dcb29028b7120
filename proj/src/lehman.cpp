#include "qcorner/lehman.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <set>
#include <sstream>

#include "qcorner/errors.hpp"

namespace qcorner {

namespace {

struct Design {
    Eigen::MatrixXcd A;
    Eigen::VectorXcd b;
    std::vector<LPoint> pts;
};

std::vector<cplx> basis_row(const ExpansionModel& m, const LPoint& z) {
    const cplx ell = log_L(z);
    std::vector<cplx> row;
    for (const auto& e : m.exponents) {
        cplx p = std::exp(e.value() * ell);
        for (int j = 0; j <= m.max_log_degree; ++j) {
            row.push_back(p);
            p *= ell;
        }
    }
    return row;
}

// Rows weighted by |z|^{-nu}, nu the lowest model exponent: each row then carries
// evaluation noise of the same relative size. Weighting by |z|^{-R} would inflate
// rounding on the inner shells by |z|^{nu - R}.
Design build_design(const SurfaceFunction& f, const ExpansionModel& m, const SamplingPlan& plan, int first_shell) {
    Design d;
    for (int j = first_shell; j < plan.shells; ++j)
        for (const auto& z : plan.shell(j)) d.pts.push_back(z);
    const Eigen::Index cols = static_cast<Eigen::Index>(m.exponents.size()) * (m.max_log_degree + 1);
    d.A.resize(static_cast<Eigen::Index>(d.pts.size()), cols);
    d.b.resize(static_cast<Eigen::Index>(d.pts.size()));
    for (Eigen::Index i = 0; i < d.A.rows(); ++i) {
        const LPoint& z = d.pts[i];
        const double w = std::pow(z.r(), -m.exponents.front().value());
        auto row = basis_row(m, z);
        for (Eigen::Index c = 0; c < cols; ++c) d.A(i, c) = w * row[c];
        d.b[i] = w * f(z);
    }
    return d;
}

struct Solve {
    Eigen::VectorXcd x;
    double condition = 0.0;
};

Solve solve_equilibrated(const Design& d) {
    Eigen::VectorXd colnorm = d.A.colwise().norm().transpose();
    for (Eigen::Index c = 0; c < colnorm.size(); ++c)
        if (colnorm[c] == 0.0) throw IllConditioned("a model column vanishes on every sample");
    Eigen::MatrixXcd An = d.A * colnorm.cwiseInverse().asDiagonal();
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(An, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    Solve s;
    s.condition = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1] : std::numeric_limits<double>::infinity();
    s.x = svd.solve(d.b).cwiseQuotient(colnorm.cast<cplx>());
    return s;
}

LogSeries to_series(const ExpansionModel& m, const Eigen::VectorXcd& x) {
    LogSeries g(Horizon::numeric(m.R));
    Eigen::Index c = 0;
    for (const auto& e : m.exponents) {
        LogSeries::LogPoly q(static_cast<std::size_t>(m.max_log_degree) + 1);
        for (int j = 0; j <= m.max_log_degree; ++j) q[j] = x[c++];
        g.add_term(e, q);
    }
    return g;
}

// Arguments a radius rho admits in {r < c exp(-C sqrt|phi|)}, intersected with [lo, hi].
std::pair<double, double> admissible_args(const QuadraticDomain& U, double rho, double lo, double hi) {
    if (!(rho < U.c)) return {1.0, 0.0};
    double reach = std::numeric_limits<double>::infinity();
    if (U.C > 0.0) {
        const double q = std::log(U.c / rho) / U.C;
        reach = q * q;
    }
    // Stay strictly inside the open domain.
    reach *= 1.0 - 1e-12;
    return {std::max(lo, U.mirrored ? -reach : 0.0), std::min(hi, reach)};
}

}  // namespace

ExpansionModel ExpansionModel::lattice(const SymbolicReal& alpha, double R, int max_log_degree) {
    const double a = alpha.value();
    if (!(a > 0.0)) throw InvalidSeries("lattice needs a positive angle");
    std::set<Exponent> ex;
    for (int j = 1; j * a <= R + 1e-12; ++j)
        for (int i = 0; i + j * a <= R + 1e-12; ++i) ex.insert(alpha * Rational(j) + SymbolicReal(Rational(i)));
    ExpansionModel m;
    m.exponents.assign(ex.begin(), ex.end());
    m.max_log_degree = max_log_degree;
    m.R = R;
    return m;
}

std::vector<LPoint> SamplingPlan::shell(int j) const {
    const double rho = std::ldexp(rho0, -j);
    std::vector<LPoint> pts;
    for (int i = 0; i < points_per_shell; ++i) {
        const double f = points_per_shell == 1 ? 0.5 : static_cast<double>(i) / (points_per_shell - 1);
        pts.emplace_back(rho, phi_lo + f * (phi_hi - phi_lo));
    }
    return pts;
}

FitResult fit_expansion(const SurfaceFunction& f, const ExpansionModel& model, const SamplingPlan& plan,
                        double max_condition) {
    if (model.exponents.empty()) throw InvalidSeries("empty expansion model");
    for (std::size_t i = 1; i < model.exponents.size(); ++i)
        if (!(model.exponents[i - 1] < model.exponents[i])) throw InvalidSeries("model exponents must increase strictly");
    const Design d = build_design(f, model, plan, 0);
    if (d.A.rows() < d.A.cols()) throw IllConditioned("fewer samples than unknowns");
    const Solve s = solve_equilibrated(d);
    if (!(s.condition <= max_condition)) {
        std::ostringstream os;
        os << "fit design matrix condition " << s.condition << " exceeds " << max_condition;
        throw IllConditioned(os.str());
    }
    FitResult out;
    out.series = to_series(model, s.x);
    out.condition = s.condition;
    const Eigen::VectorXcd res = d.A * s.x - d.b;
    out.residual = res.cwiseAbs().maxCoeff();
    if (plan.shells > 1) {
        const Design d1 = build_design(f, model, plan, 1);
        if (d1.A.rows() >= d1.A.cols()) out.stability = (solve_equilibrated(d1).x - s.x).cwiseAbs().maxCoeff();
    }
    return out;
}

void AsymptoticCertificate::require() const {
    if (passed) return;
    std::ostringstream os;
    os << "asymptotic certificate failed at R = " << R << ": " << reason;
    throw FailedCertificate(os.str());
}

bool AsymptoticCertificate::witness_valid() const {
    for (const auto& sh : shells)
        if (sh.sup_ratio > 0.0 && sh.witness.r() == sh.rho) return true;
    return false;
}

AsymptoticCertificate verify_asymptotic(const SurfaceFunction& f, const LogSeries& g, double R, const QuadraticDomain& U,
                                        const VerifyOptions& opt) {
    const SamplingPlan& plan = opt.plan;
    AsymptoticCertificate cert;
    cert.series = g;
    cert.R = R;
    cert.tol = opt.tol;
    cert.noise_floor = opt.noise_floor;
    cert.U_R = U;
    cert.U_R.c = std::min(U.c, 2.0 * plan.rho0);
    const LogSeries gR = truncate(g, R);

    for (int j = 0; j < plan.shells; ++j) {
        ShellRecord rec;
        rec.rho = std::ldexp(plan.rho0, -j);
        auto [lo, hi] = admissible_args(cert.U_R, rec.rho, plan.phi_lo, plan.phi_hi);
        if (lo > hi) throw InvalidDomain("sampling shell lies outside the quadratic domain");
        rec.phi_lo = lo;
        rec.phi_hi = hi;
        rec.witness = LPoint(rec.rho, lo);
        const double scale = std::pow(rec.rho, R);
        for (int i = 0; i < plan.points_per_shell; ++i) {
            const double t = plan.points_per_shell == 1 ? 0.5 : static_cast<double>(i) / (plan.points_per_shell - 1);
            const LPoint z(rec.rho, lo + t * (hi - lo));
            const cplx fv = f(z), gv = eval_finite(gR, z);
            const double diff = std::max(0.0, std::abs(fv - gv) - opt.noise_floor * std::max(std::abs(fv), std::abs(gv)));
            const double ratio = diff / scale;
            if (!(ratio <= rec.sup_ratio)) {
                rec.sup_ratio = ratio;
                rec.witness = z;
            }
        }
        cert.shells.push_back(rec);
    }

    const auto& sh = cert.shells;
    const std::size_t n = sh.size();
    std::ostringstream why;
    cert.passed = true;
    const std::size_t tail_start = n > static_cast<std::size_t>(opt.monotone_tail) ? n - opt.monotone_tail : 0;
    for (std::size_t j = tail_start + 1; j < n && cert.passed; ++j)
        if (sh[j].sup_ratio > sh[j - 1].sup_ratio * (1.0 + 1e-9)) {
            cert.passed = false;
            cert.failing_shell = static_cast<int>(j);
            why << "ratio increases from shell " << j - 1 << " to shell " << j << " (" << sh[j - 1].sup_ratio << " -> "
                << sh[j].sup_ratio << "); witness r = " << sh[j].witness.r() << ", phi = " << sh[j].witness.phi();
        }
    if (cert.passed && !(sh.back().sup_ratio < opt.tol)) {
        cert.passed = false;
        cert.failing_shell = static_cast<int>(n) - 1;
        why << "last shell ratio " << sh.back().sup_ratio << " is not below " << opt.tol << "; witness r = "
            << sh.back().witness.r() << ", phi = " << sh.back().witness.phi();
    }
    cert.reason = cert.passed ? "ratios decrease below tolerance" : why.str();
    return cert;
}

DichotomyVerdict dichotomy_check(const LogSeries& g, AngleClass angle_class, double tol) {
    DichotomyVerdict v;
    v.angle_class = angle_class;
    std::ostringstream bad;
    int offending = 0;
    for (const auto& [e, q] : g.terms())
        for (std::size_t j = 1; j < q.size(); ++j) {
            const double mag = std::abs(q[j]);
            v.max_log_coefficient = std::max(v.max_log_coefficient, mag);
            if (mag >= tol) {
                v.log_terms_present = true;
                if (offending++) bad << ", ";
                bad << "(log z)^" << j << " z^" << e.str() << " with |coefficient| " << mag;
            }
        }
    if (angle_class == AngleClass::IRRATIONAL_PI_MULTIPLE && v.log_terms_present)
        throw DichotomyViolation("irrational angle but the expansion carries log terms: " + bad.str());
    return v;
}

double next_lattice_exponent(double alpha, double R) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 1;; ++j) {
        const double base = j * alpha;
        if (base > best) break;
        const double i = base > R ? 0.0 : std::floor(R - base) + 1.0;
        best = std::min(best, base + i);
    }
    return best;
}

ErrorSchedule error_tower_constants(const ReflectionTower& tower, double R, const SymbolicReal& alpha) {
    if (!(R > 0.0)) throw InvalidSeries("R must be positive");
    const double a = alpha.value();
    const int K = tower.depth();
    ErrorSchedule s;
    s.R = R;
    s.m = static_cast<int>(std::floor(2.0 * R / a)) + 1;
    s.S = 0.5 * (R + next_lattice_exponent(a, R));
    s.T = std::min(a * (s.m + 1) / 2.0, s.S);
    const double m = s.m;
    const double log16r = std::log(16.0 / tower.r0);
    s.log_A = std::log(4.0 * (m + 1.0)) + m * log16r;
    // A concrete L_hat for the w_k bound and the Q_k bound: m 2^m 4 max(1, 16/r0)^m max(1, E)^m.
    s.log_L_hat = std::log(m) + m * std::log(2.0) + std::log(4.0) + m * std::max(0.0, log16r) +
                  m * std::max(0.0, std::log(tower.E));
    s.log_L = std::log(2.0) + std::max(s.log_A, 0.0) + m * std::log(32.0) + s.log_L_hat;

    s.levels.resize(static_cast<std::size_t>(K) + 1);
    s.log_M = 0.0;
    for (int k = 0; k <= K; ++k) {
        ErrorLevel& e = s.levels[k];
        e.k = k;
        const double log_s = std::log(tower.levels[k].s);
        if (k == 0) {
            e.log_D = s.log_L;
            e.log_p = log_s;
        } else {
            const ErrorLevel& prev = s.levels[k - 1];
            e.log_D = std::log(3.0) + (k - 1) * s.log_L + prev.log_D;
            e.log_p = std::min(log_s, -s.T * prev.log_D);
            const double kk = static_cast<double>(k) * k;
            s.log_M = std::max({s.log_M, e.log_D / kk, -e.log_p / kk});
        }
    }
    // M^0 = 1 cannot lie below p_0 < 1, so level 0 keeps q_0 = p_0.
    for (auto& e : s.levels) e.log_q = e.k == 0 ? e.log_p : -static_cast<double>(e.k) * e.k * s.log_M;

    s.T_bar = std::max(0.5 * (R + s.T), s.T - 1.0);
    const double mu = s.log_M / (s.T - s.T_bar);
    // Both directions: an argument |phi| >= pi sits at level <= 2 + log2(|phi| / pi), smaller ones at level <= 1.
    s.C = std::max(mu, 1.0);
    double log_c = std::min(-mu, s.levels[0].log_p);
    for (double x = 0.0; x <= 400.0; x += 0.01) {
        const double u = std::exp2(x);
        const double k = 2.0 + x;
        log_c = std::min(log_c, -mu * k * k + s.C * std::sqrt(kPi * u));
    }
    s.log_c = log_c;
    return s;
}

}  // namespace qcorner
