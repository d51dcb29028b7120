// qcorner: batch front end. Reads a JSON job input, runs one command and
// writes report.json, samples.csv and plot.svg into the output directory.
//
// Exit status: 0 pass, 2 certificate failure, 3 solver nonconvergence, 4 bad input.

#include <CLI11.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cli_input.hpp"
#include "qcorner/lehman.hpp"
#include "qcorner/reflekt.hpp"
#include "svg.hpp"

using namespace qcorner;
using namespace qcorner::cli;

namespace {

enum Exit { kPass = 0, kCertificate = 2, kNonConvergence = 3, kBadInput = 4 };

struct Config {
    std::string command;
    std::string input;
    std::string out = ".";
    int K = 6;
    std::optional<double> R;
    std::optional<int> shells;
    std::optional<double> tol;
    std::uint64_t seed = 1;
    int precision = 40;
    std::optional<std::string> alpha;
};

struct Artifacts {
    json report = json::object();
    std::string csv;
    std::string svg;
    int status = kPass;
};

std::string hex64(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Output paths are left out so that identical jobs hash identically wherever they write.
json config_json(const Config& c, const json& input) {
    json j = {{"command", c.command}, {"K", c.K}, {"seed", c.seed}, {"precision", c.precision}, {"input", input}};
    j["R"] = c.R ? json(*c.R) : json(nullptr);
    j["shells"] = c.shells ? json(*c.shells) : json(nullptr);
    j["tol"] = c.tol ? json(*c.tol) : json(nullptr);
    j["alpha"] = c.alpha ? json(*c.alpha) : json(nullptr);
    return j;
}

std::string csv_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double log10_clip(double v) { return std::log10(std::max(v, 1e-20)); }

json angle_json(const PiAngle& a) {
    json j = {{"pi_multiple", a.str()}, {"value", a.value}};
    try {
        j["class"] = to_string(rationality_class(a));
    } catch (const UnknownClass&) {
        j["class"] = "unknown";
    }
    return j;
}

json germ_json(const GermSource& s) {
    return {{"kind", s.kind}, {"alpha", s.germ.alpha.str()}, {"alpha_value", s.germ.alpha.value()}, {"tbar", s.germ.tbar},
            {"E", s.germ.E}, {"provenance", s.provenance}};
}

// ------------------------------------------------------------------ analyze

Artifacts run_analyze(const Config&, const json& input) {
    Artifacts a;
    DomainSpec d;
    SvgPlot plot("Boundary near the singular points", "Re", "Im");
    plot.equal_aspect();
    if (input.contains("polygon")) {
        const PolygonInput p = polygon_from_json(input["polygon"]);
        std::vector<SymbolicReal> angles(p.angles.begin(), p.angles.end());
        d = polygon_domain(p.vertices, angles);
        SvgPlot::Polyline outline;
        for (const auto& v : p.vertices) outline.emplace_back(v.real(), v.imag());
        outline.emplace_back(p.vertices.front().real(), p.vertices.front().imag());
        plot.line(outline, "#1f77b4");
    } else if (input.contains("domain")) {
        d = domain_from_json(input["domain"]);
        for (const auto& c : d.corners)
            for (const PuiseuxArc* arc : {&c.arc1, &c.arc2}) {
                SvgPlot::Polyline pts;
                const double tmax = std::min(arc->radius, 0.3);
                for (int i = 0; i <= 40; ++i) {
                    const cplx w = c.vertex + (*arc)(tmax * i / 40.0);
                    pts.emplace_back(w.real(), w.imag());
                }
                plot.line(pts, arc == &c.arc1 ? "#1f77b4" : "#2ca02c");
            }
    } else {
        throw BadInput("analyze needs a \"domain\" or \"polygon\" entry");
    }

    const auto sing = singular_points(d);
    json pts = json::array();
    a.csv = "x,y,at_infinity,angle_over_pi,exact\n";
    SvgPlot::Polyline marks;
    for (const auto& s : sing) {
        json angles = json::array();
        for (const auto& ang : s.angles) {
            angles.push_back(angle_json(ang));
            a.csv += csv_num(s.point.real()) + "," + csv_num(s.point.imag()) + "," + (s.at_infinity ? "1" : "0") + "," +
                     csv_num(ang.value) + "," + ang.str() + "\n";
        }
        pts.push_back({{"point", complex_to_json(s.point)}, {"at_infinity", s.at_infinity}, {"angles", angles}});
        if (!s.at_infinity) marks.emplace_back(s.point.real(), s.point.imag());
    }
    plot.markers(marks, "#d62728");
    a.report["singular_points"] = pts;
    a.report["count"] = sing.size();
    a.svg = plot.render();
    return a;
}

// ------------------------------------------------------------------ sc-solve

Artifacts run_sc_solve(const Config& cfg, const json& input) {
    Artifacts a;
    if (!input.contains("polygon")) throw BadInput("sc-solve needs a \"polygon\" entry");
    const SCPolygon sc = solve_polygon(polygon_from_json(input["polygon"]), cfg.tol.value_or(1e-10));
    json verts = json::array(), alpha = json::array(), germs = json::array();
    a.csv = "k,prevertex,vertex_x,vertex_y,alpha\n";
    for (std::size_t k = 0; k < sc.vertices.size(); ++k) {
        verts.push_back(complex_to_json(sc.vertices[k]));
        alpha.push_back(sc.alpha[k].str());
        const MapGerm g = sc_corner_germ(sc, k);
        germs.push_back({{"k", k}, {"alpha", sc.alpha[k].str()}, {"tbar", g.tbar}, {"E", g.E}});
        a.csv += std::to_string(k) + "," + csv_num(sc.prevertices[k]) + "," + csv_num(sc.vertices[k].real()) + "," +
                 csv_num(sc.vertices[k].imag()) + "," + sc.alpha[k].str() + "\n";
    }
    a.report["vertices"] = verts;
    a.report["alpha"] = alpha;
    a.report["prevertices"] = sc.prevertices;
    a.report["A"] = complex_to_json(sc.A);
    a.report["B"] = complex_to_json(sc.B);
    a.report["residual"] = sc.residual;
    a.report["iterations"] = sc.iterations;
    a.report["corner_germs"] = germs;

    SvgPlot plot("Images of horizontal lines", "Re", "Im");
    plot.equal_aspect();
    SvgPlot::Polyline outline;
    for (const auto& v : sc.vertices) outline.emplace_back(v.real(), v.imag());
    outline.emplace_back(sc.vertices.front().real(), sc.vertices.front().imag());
    plot.line(outline, "#000000", 2.0);
    for (double y : {0.05, 0.2, 0.5, 1.0, 2.0}) {
        SvgPlot::Polyline pts;
        for (int i = 0; i <= 200; ++i) {
            const cplx w = sc(cplx(-4.0 + 8.0 * i / 200.0, y));
            pts.emplace_back(w.real(), w.imag());
        }
        plot.line(pts, "#1f77b4", 1.0);
    }
    a.svg = plot.render();
    return a;
}

// ------------------------------------------------------------------ shared pipeline

struct Continued {
    GermSource src;
    ReflectionTower tower;
    CertifiedExtension cert;
    SurfaceFunction f;
};

Continued continue_germ(const Config& cfg, const json& input) {
    if (cfg.K < 2 || cfg.K > 24) throw BadInput("--K must lie in [2, 24]");
    Continued c{germ_from_input(input, cfg.alpha, cfg.precision), {}, {}, {}};
    c.tower = build_tower(c.src.germ, cfg.K, cfg.precision);
    c.cert = certify_quadratic_domain(c.tower);
    return c;
}

json levels_json(const ReflectionTower& tw) {
    json levels = json::array();
    for (const auto& L : tw.levels)
        levels.push_back({{"k", L.k}, {"r_k", L.r}, {"E_k", L.E}, {"t_k", L.t}, {"s_k", L.s}, {"koebe_ok", L.koebe_ok},
                          {"chi_tail_bound", L.chi_tail_bound}});
    return levels;
}

void put_tower(Artifacts& a, const Continued& c) {
    a.report["germ"] = germ_json(c.src);
    a.report["tower"] = {{"rbar", c.tower.rbar}, {"r0", c.tower.r0}, {"level_ratio", c.tower.level_ratio()}, {"K", c.tower.depth()}};
    a.report["levels"] = levels_json(c.tower);
    a.report["quad"] = {{"c", c.cert.quad.c}, {"C", c.cert.quad.C}, {"mirrored", c.cert.quad.mirrored}};
    a.report["K_growth"] = c.cert.K_growth;
    a.report["max_phi_over_pi"] = c.cert.max_phi / kPi;
}

// The continued map on the levels 0 and 1 of both towers: -pi <= arg <= 2 pi, below t_1.
SamplingPlan fit_plan(const Continued& c, int shells) {
    SamplingPlan plan;
    double t1 = c.tower.levels[1].t;
    if (c.tower.twin) t1 = std::min(t1, c.tower.twin->levels[1].t);
    plan.rho0 = 0.5 * t1;
    plan.phi_lo = -kPi;
    plan.phi_hi = 2.0 * kPi;
    plan.shells = shells;
    return plan;
}

struct Fitted {
    FitResult fit;
    LogSeries series;  // truncated to R
    double R = 0.0;
    SamplingPlan plan;
};

// Fits one lattice step beyond R so the first omitted power does not alias into the reported terms.
Fitted fit_continued(const Config& cfg, const Continued& c) {
    Fitted out;
    const double alpha = c.src.germ.alpha.value();
    out.R = cfg.R.value_or(2.0 * alpha);
    if (!(out.R > 0.0)) throw BadInput("--R must be positive");
    out.plan = fit_plan(c, cfg.shells.value_or(8));
    const auto model = ExpansionModel::lattice(c.src.germ.alpha, out.R + alpha, 1);
    const SurfaceFunction f = [&](const LPoint& z) { return evaluate_extension(c.tower, z); };
    out.fit = fit_expansion(f, model, out.plan);
    out.series = truncate(out.fit.series, out.R);
    return out;
}

json coefficients_json(const LogSeries& s) {
    json rows = json::array();
    for (const auto& [e, q] : s.terms())
        for (std::size_t j = 0; j < q.size(); ++j)
            rows.push_back({{"exponent", e.str()}, {"exponent_value", e.value()}, {"log_degree", j}, {"coefficient", complex_to_json(q[j])}});
    return rows;
}

// ------------------------------------------------------------------ continue

Artifacts run_continue(const Config& cfg, const json& input) {
    Artifacts a;
    const Continued c = continue_germ(cfg, input);
    put_tower(a, c);

    bool koebe = true;
    for (const auto& L : c.tower.levels) koebe = koebe && L.koebe_ok;

    // Agreement of the two pieces on the rays fixed by tau_k.
    double overlap = 0.0;
    for (int k = 0; k < c.tower.depth(); ++k) {
        const LPoint ray = LPoint::from_pi_multiple(0.3 * c.tower.levels[k + 1].t, Rational(std::int64_t(1) << k));
        const cplx direct = evaluate_level(c.tower, k, ray), refl = reflected_value(c.tower, k, ray);
        overlap = std::max(overlap, std::abs(direct - refl) / std::abs(direct));
    }

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double tol = cfg.tol.value_or(1e-10);
    double worst = 0.0;
    a.csv = c.src.oracle ? "r,phi,re,im,oracle_re,oracle_im,rel_err\n" : "r,phi,re,im\n";
    SvgPlot::Polyline profile, marks;
    for (int i = 0; i <= 200; ++i) {
        const double phi = -c.cert.max_phi + 2.0 * c.cert.max_phi * i / 200.0;
        profile.emplace_back(phi / kPi, std::log10(c.cert.quad.radius_at(phi)));
    }
    for (int i = 0; i < 200; ++i) {
        const double phi = (2.0 * u(rng) - 1.0) * c.cert.max_phi;
        const LPoint z(c.cert.quad.radius_at(phi) * (1e-3 + (1.0 - 1e-3) * u(rng)), phi);
        const cplx v = evaluate_extension(c.tower, z);
        a.csv += csv_num(z.r()) + "," + csv_num(z.phi()) + "," + csv_num(v.real()) + "," + csv_num(v.imag());
        if (c.src.oracle) {
            const cplx w = c.src.oracle(z);
            const double err = std::abs(v - w) / std::abs(w);
            worst = std::max(worst, err);
            a.csv += "," + csv_num(w.real()) + "," + csv_num(w.imag()) + "," + csv_num(err);
        }
        a.csv += "\n";
        marks.emplace_back(phi / kPi, std::log10(z.r()));
    }
    json checks = {{"koebe_all_levels", koebe}, {"overlap_rel_err", overlap}, {"samples", 200}};
    if (c.src.oracle) {
        checks["oracle_max_rel_err"] = worst;
        checks["oracle_tol"] = tol;
    }
    a.report["checks"] = checks;
    const bool ok = koebe && overlap <= 1e-8 && (!c.src.oracle || worst <= tol);
    a.status = ok ? kPass : kCertificate;

    SvgPlot plot("Certified quadratic domain", "arg z / pi", "log10 radius");
    plot.line(profile, "#1f77b4");
    plot.markers(marks, "#ff7f0e");
    a.svg = plot.render();
    return a;
}

// ------------------------------------------------------------------ expand

Artifacts run_expand(const Config& cfg, const json& input) {
    Artifacts a;
    const Continued c = continue_germ(cfg, input);
    a.report["germ"] = germ_json(c.src);
    a.report["quad"] = {{"c", c.cert.quad.c}, {"C", c.cert.quad.C}, {"mirrored", c.cert.quad.mirrored}};
    const Fitted ft = fit_continued(cfg, c);
    a.report["R"] = ft.R;
    a.report["series"] = to_json(ft.series);
    a.report["coefficients"] = coefficients_json(ft.series);
    a.report["fit"] = {{"condition", ft.fit.condition}, {"residual", ft.fit.residual}, {"stability", ft.fit.stability},
                       {"rho0", ft.plan.rho0}, {"shells", ft.plan.shells}, {"phi_lo", ft.plan.phi_lo}, {"phi_hi", ft.plan.phi_hi}};

    // Against the germ's own expansion when one is known, else against the refit without the outer
    // shell. A coefficient error counts by its contribution at the outer shell relative to the leading
    // term, which is what the shell range can resolve.
    const double tol = cfg.tol.value_or(1e-6);
    double err = ft.fit.stability;
    if (c.src.germ.series && c.src.germ.series->valuation()) {
        const LogSeries& ref = *c.src.germ.series;
        const Exponent nu = *ref.valuation();
        const double lead = std::abs(ref.coefficient(nu)[0]);
        err = 0.0;
        auto scaled = [&](const Exponent& e, cplx d) { return std::abs(d) * std::pow(ft.plan.rho0, e.value() - nu.value()) / lead; };
        for (const auto& [e, q] : ft.series.terms()) {
            const auto p = ref.coefficient(e);
            for (std::size_t j = 0; j < q.size(); ++j) err = std::max(err, scaled(e, q[j] - (j < p.size() ? p[j] : cplx(0.0))));
        }
        for (const auto& [e, q] : ref.terms()) {
            if (e.value() > ft.R) break;
            const auto p = ft.series.coefficient(e);
            err = std::max(err, scaled(e, q[0] - (p.empty() ? cplx(0.0) : p[0])));
        }
        a.report["reference_max_scaled_err"] = err;
    }
    a.report["tol"] = tol;
    a.status = err <= tol ? kPass : kCertificate;

    // Remainder ratios of the fit on each shell.
    a.csv = "shell,rho,phi,abs_remainder_ratio\n";
    SvgPlot::Polyline curve;
    for (int j = 0; j < ft.plan.shells; ++j) {
        double sup = 0.0;
        for (const LPoint& z : ft.plan.shell(j)) {
            const double ratio = std::abs(evaluate_extension(c.tower, z) - eval_finite(ft.series, z)) / std::pow(z.r(), ft.R);
            sup = std::max(sup, ratio);
            a.csv += std::to_string(j) + "," + csv_num(z.r()) + "," + csv_num(z.phi()) + "," + csv_num(ratio) + "\n";
        }
        curve.emplace_back(std::log10(ft.plan.rho0) - j * std::log10(2.0), log10_clip(sup));
    }
    SvgPlot plot("Remainder of the fitted expansion", "log10 rho", "log10 sup |f - g| / rho^R");
    plot.line(curve, "#1f77b4");
    plot.markers(curve, "#1f77b4");
    a.svg = plot.render();
    return a;
}

// ------------------------------------------------------------------ verify

Artifacts run_verify(const Config& cfg, const json& input) {
    Artifacts a;
    const Continued c = continue_germ(cfg, input);
    a.report["germ"] = germ_json(c.src);
    LogSeries g;
    if (input.contains("series")) {
        try {
            g = series_from_json(input["series"]);
        } catch (const std::exception& e) {
            throw BadInput(std::string("series: ") + e.what());
        }
    } else if (c.src.germ.series) {
        g = *c.src.germ.series;
    } else {
        throw BadInput("verify needs a \"series\" entry for this germ");
    }
    VerifyOptions opt;
    opt.plan.rho0 = 0.5 * c.cert.quad.c;
    opt.plan.phi_lo = -c.cert.max_phi;
    opt.plan.phi_hi = c.cert.max_phi;
    opt.plan.shells = cfg.shells.value_or(12);
    opt.tol = cfg.tol.value_or(1e-6);
    const double R = cfg.R.value_or(c.src.germ.alpha.value());
    const SurfaceFunction f = [&](const LPoint& z) { return evaluate_extension(c.tower, z); };
    const AsymptoticCertificate cert = verify_asymptotic(f, g, R, c.cert.quad, opt);

    json shells = json::array();
    a.csv = "shell,rho,sup_ratio,witness_r,witness_phi,phi_lo,phi_hi\n";
    SvgPlot::Polyline curve;
    for (std::size_t j = 0; j < cert.shells.size(); ++j) {
        const auto& s = cert.shells[j];
        shells.push_back({{"rho", s.rho}, {"sup_ratio", s.sup_ratio}, {"witness", to_json(s.witness)}, {"phi_lo", s.phi_lo}, {"phi_hi", s.phi_hi}});
        a.csv += std::to_string(j) + "," + csv_num(s.rho) + "," + csv_num(s.sup_ratio) + "," + csv_num(s.witness.r()) + "," +
                 csv_num(s.witness.phi()) + "," + csv_num(s.phi_lo) + "," + csv_num(s.phi_hi) + "\n";
        curve.emplace_back(std::log10(s.rho), log10_clip(s.sup_ratio));
    }
    json cj = {{"passed", cert.passed}, {"reason", cert.reason}, {"R", cert.R}, {"tol", cert.tol}, {"noise_floor", cert.noise_floor},
               {"U_R", to_json(cert.U_R)}, {"shells", shells}, {"series", to_json(cert.series)}};
    if (!cert.passed) {
        const auto& bad = cert.shells[static_cast<std::size_t>(cert.failing_shell)];
        cj["witness"] = to_json(bad.witness);
        cj["witness_shell"] = cert.failing_shell;
        cj["witness_ratio"] = bad.sup_ratio;
        cj["witness_valid"] = cert.witness_valid();
    }
    a.report["certificate"] = cj;
    a.status = cert.passed ? kPass : kCertificate;

    SvgPlot plot("Remainder ratios per shell", "log10 rho", "log10 sup ratio");
    plot.line(curve, cert.passed ? "#2ca02c" : "#d62728");
    plot.markers(curve, cert.passed ? "#2ca02c" : "#d62728");
    a.svg = plot.render();
    return a;
}

// ------------------------------------------------------------------ dichotomy

Artifacts run_dichotomy(const Config& cfg, const json& input) {
    Artifacts a;
    AngleClass cls;
    LogSeries g;
    if (input.contains("series") && input.contains("angle")) {
        // Series and angle given directly: no germ needed.
        g = series_from_json(input["series"]);
        cls = rationality_class(PiAngle::of(symbolic_from_json(input["angle"])));
        a.report["angle"] = symbolic_from_json(input["angle"]).str();
    } else {
        const Continued c = continue_germ(cfg, input);
        a.report["germ"] = germ_json(c.src);
        cls = rationality_class(PiAngle::of(c.src.germ.alpha));
        if (input.contains("series")) {
            g = series_from_json(input["series"]);
        } else {
            const Fitted ft = fit_continued(cfg, c);
            g = ft.series;
            a.report["fit"] = {{"condition", ft.fit.condition}, {"residual", ft.fit.residual}, {"stability", ft.fit.stability}, {"R", ft.R}};
        }
    }
    const double tol = cfg.tol.value_or(1e-8);
    a.report["series"] = to_json(g);
    a.report["angle_class"] = to_string(cls);
    a.report["tol"] = tol;

    json offending = json::array();
    double max_log = 0.0;
    a.csv = "exponent,exponent_value,log_degree,abs_coefficient\n";
    SvgPlot::Polyline pure, logs;
    for (const auto& [e, q] : g.terms())
        for (std::size_t j = 0; j < q.size(); ++j) {
            const double m = std::abs(q[j]);
            a.csv += e.str() + "," + csv_num(e.value()) + "," + std::to_string(j) + "," + csv_num(m) + "\n";
            (j == 0 ? pure : logs).emplace_back(e.value(), log10_clip(m));
            if (j > 0) {
                max_log = std::max(max_log, m);
                if (m >= tol) offending.push_back({{"exponent", e.str()}, {"log_degree", j}, {"abs_coefficient", m}});
            }
        }
    bool violated = false;
    try {
        dichotomy_check(g, cls, tol);
    } catch (const DichotomyViolation& e) {
        violated = true;
        a.report["violation"] = e.what();
    }
    a.report["max_log_coefficient"] = max_log;
    a.report["offending_terms"] = cls == AngleClass::IRRATIONAL_PI_MULTIPLE ? offending : json::array();
    a.report["verdict"] = violated ? "violation" : "consistent";
    a.status = violated ? kCertificate : kPass;

    SvgPlot plot("Coefficient magnitudes", "exponent", "log10 |coefficient|");
    plot.markers(pure, "#1f77b4");
    plot.markers(logs, "#d62728");
    a.svg = plot.render();
    return a;
}

// ------------------------------------------------------------------ driver

int classify(const std::exception& e) {
    if (dynamic_cast<const FailedCertificate*>(&e) || dynamic_cast<const DichotomyViolation*>(&e) ||
        dynamic_cast<const ImageEscapesChart*>(&e) || dynamic_cast<const OutsideExtensionDomain*>(&e))
        return kCertificate;
    if (dynamic_cast<const NonConvergence*>(&e) || dynamic_cast<const IllConditioned*>(&e) || dynamic_cast<const InversionFailure*>(&e))
        return kNonConvergence;
    return kBadInput;
}

const char* status_name(int s) {
    switch (s) {
        case kPass: return "pass";
        case kCertificate: return "certificate_failure";
        case kNonConvergence: return "nonconvergence";
        default: return "bad_input";
    }
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw BadInput("cannot write " + p.string());
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Riemann maps at corners: analysis, continuation and asymptotic certificates"};
    Config cfg;
    std::string positional;
    double R = 0.0, tol = 0.0;
    int shells = 0;
    std::string alpha;
    app.add_option("cmd", positional, "analyze | sc-solve | continue | expand | verify | dichotomy");
    app.add_option("--command", cfg.command, "same as the positional command");
    app.add_option("--input", cfg.input, "JSON job input");
    app.add_option("--out", cfg.out, "output directory")->capture_default_str();
    app.add_option("--K", cfg.K, "reflection tower depth")->capture_default_str();
    auto* optR = app.add_option("--R", R, "expansion horizon");
    auto* optShells = app.add_option("--shells", shells, "number of sampling shells")->check(CLI::Range(2, 40));
    auto* optTol = app.add_option("--tol", tol, "pass tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "seed for sampled points")->capture_default_str();
    app.add_option("--precision", cfg.precision, "working order of truncated power series")->check(CLI::Range(8, 120))->capture_default_str();
    auto* optAlpha = app.add_option("--alpha", alpha, "model corner angle over pi, e.g. sqrt2 or 1/3");
    app.add_flag_callback("--version", [] {
        std::cout << QCORNER_VERSION << "\n";
        std::exit(0);
    }, "print the version");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kBadInput;
    }
    if (cfg.command.empty()) cfg.command = positional;
    if (!positional.empty() && positional != cfg.command) {
        std::cerr << "conflicting commands '" << positional << "' and '" << cfg.command << "'\n";
        return kBadInput;
    }
    if (*optR) cfg.R = R;
    if (*optShells) cfg.shells = shells;
    if (*optTol) cfg.tol = tol;
    if (*optAlpha) cfg.alpha = alpha;

    using Runner = Artifacts (*)(const Config&, const json&);
    const std::map<std::string, Runner> commands = {{"analyze", run_analyze}, {"sc-solve", run_sc_solve}, {"continue", run_continue},
                                                    {"expand", run_expand},   {"verify", run_verify},     {"dichotomy", run_dichotomy}};
    const auto it = commands.find(cfg.command);
    if (it == commands.end()) {
        std::cerr << "unknown or missing command '" << cfg.command << "'\n" << app.help();
        return kBadInput;
    }

    json input = json::object();
    Artifacts art;
    try {
        const bool alpha_suffices = cfg.alpha && cfg.command != "analyze" && cfg.command != "sc-solve";
        if (!cfg.input.empty()) input = read_json_file(cfg.input);
        else if (!alpha_suffices) throw BadInput("--input is required for " + cfg.command);
        art = it->second(cfg, input);
    } catch (const std::exception& e) {
        art = Artifacts{};
        art.status = classify(e);
        art.report["error"] = e.what();
        std::cerr << e.what() << "\n";
    }

    const json conf = config_json(cfg, input);
    art.report["config"] = conf;
    art.report["config_hash"] = hex64(fnv1a(conf.dump()));
    art.report["version"] = QCORNER_VERSION;
    art.report["command"] = cfg.command;
    art.report["status"] = status_name(art.status);
    art.report["exit_code"] = art.status;
    try {
        std::filesystem::create_directories(cfg.out);
        const std::filesystem::path out(cfg.out);
        write_file(out / "report.json", art.report.dump(2) + "\n");
        write_file(out / "samples.csv", art.csv);
        if (!art.svg.empty()) write_file(out / "plot.svg", art.svg);
        else std::filesystem::remove(out / "plot.svg");
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kBadInput;
    }
    std::cout << cfg.command << ": " << status_name(art.status) << "\n";
    return art.status;
}
