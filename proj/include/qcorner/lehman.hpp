#ifndef QCORNER_LEHMAN_HPP
#define QCORNER_LEHMAN_HPP

// Corner asymptotic expansions: coefficient fitting on shrinking shells,
// numerical little-o certificates, the irrational-angle dichotomy and the
// error-constant schedule of the continued tower.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcorner/domains.hpp"
#include "qcorner/log_power_series.hpp"
#include "qcorner/reflekt.hpp"

namespace qcorner {

using SurfaceFunction = std::function<cplx(const LPoint&)>;

/// Candidate support for a fit: exponents (strictly increasing) and the
/// highest power of log z allowed with each.
struct ExpansionModel {
    std::vector<Exponent> exponents;
    int max_log_degree = 0;
    double R = 0.0;

    /// The exponents i + j alpha <= R with i >= 0, j >= 1.
    static ExpansionModel lattice(const SymbolicReal& alpha, double R, int max_log_degree = 0);
};

/// Geometric shells rho_j = rho0 2^{-j}, j < shells, each sampled at
/// points_per_shell arguments evenly spread over [phi_lo, phi_hi].
struct SamplingPlan {
    double rho0 = 0.1;
    int shells = 12;
    int points_per_shell = 64;
    double phi_lo = 0.0;
    double phi_hi = kPi;

    std::vector<LPoint> shell(int j) const;
};

struct FitResult {
    LogSeries series;
    double condition = 0.0;  // of the column-equilibrated design matrix
    double residual = 0.0;   // max |f - fit| / |z|^R over the samples
    /// Largest coefficient change when the outermost shell is dropped and the fit redone.
    double stability = 0.0;
};

/// Least-squares fit of the coefficients of (log z)^j z^beta. Throws
/// IllConditioned when the design matrix condition exceeds max_condition.
FitResult fit_expansion(const SurfaceFunction& f, const ExpansionModel& model, const SamplingPlan& plan = {},
                        double max_condition = 1e12);

struct ShellRecord {
    double rho = 0.0;
    double sup_ratio = 0.0;
    LPoint witness{1.0, 0.0};
    double phi_lo = 0.0, phi_hi = 0.0;
};

struct AsymptoticCertificate {
    LogSeries series;
    double R = 0.0;
    QuadraticDomain U_R;
    double tol = 0.0;
    double noise_floor = 0.0;
    std::vector<ShellRecord> shells;
    bool passed = false;
    std::string reason;
    int failing_shell = -1;  // the shell whose witness the reason names

    /// Throws FailedCertificate naming the offending shell and witness.
    void require() const;
    /// A failed certificate points at a sampled point with a nonzero ratio.
    bool witness_valid() const;
};

struct VerifyOptions {
    SamplingPlan plan;
    double tol = 1e-6;
    /// Differences below noise_floor * max(|f|, |g|) count as zero.
    double noise_floor = 1e-13;
    /// Shells that must show non-increasing ratios at the end.
    int monotone_tail = 4;
};

/// Samples |f - truncate(g, R)| / |z|^R on the plan's shells, restricted to
/// the arguments U admits at each radius. PASS iff the last ratio is below
/// tol and the ratios do not increase over the final shells.
AsymptoticCertificate verify_asymptotic(const SurfaceFunction& f, const LogSeries& g, double R, const QuadraticDomain& U,
                                        const VerifyOptions& opt = {});

struct DichotomyVerdict {
    AngleClass angle_class = AngleClass::RATIONAL_PI_MULTIPLE;
    double max_log_coefficient = 0.0;
    bool log_terms_present = false;
};

/// For an irrational angle every coefficient of a positive power of log z
/// must be below tol; throws DichotomyViolation listing the offending terms.
/// Rational angles impose no constraint.
DichotomyVerdict dichotomy_check(const LogSeries& g, AngleClass angle_class, double tol = 1e-8);

struct ErrorLevel {
    int k = 0;
    double log_D = 0.0;  // |eps_k(z)| <= D_k |z|^T on T_k cut to p_k
    double log_p = 0.0;
    double log_q = 0.0;  // q_k = M^{-k^2}
};

/// The constant schedule bounding eps_{R,k} = Phi_k - (expansion up to R).
/// Large constants are kept as natural logarithms.
struct ErrorSchedule {
    double R = 0.0;
    int m = 0;               // m alpha / 2 > R
    double S = 0.0;          // R < S < next exponent
    double T = 0.0;          // min(alpha (m + 1) / 2, S)
    double log_A = 0.0;      // 4 (m + 1) (16 / r0)^m
    double log_L_hat = 0.0;
    double log_L = 0.0;
    double log_M = 0.0;
    std::vector<ErrorLevel> levels;
    double T_bar = 0.0;      // R < T_bar < T, T - T_bar <= 1
    /// Quadratic domain {r < c exp(-C sqrt|phi|)} carrying |eps| <= |z|^{T_bar}.
    double log_c = 0.0;
    double C = 0.0;
};

/// The smallest i + j alpha > R, i >= 0, j >= 1.
double next_lattice_exponent(double alpha, double R);

ErrorSchedule error_tower_constants(const ReflectionTower& tower, double R, const SymbolicReal& alpha);

}  // namespace qcorner

#endif  // QCORNER_LEHMAN_HPP
