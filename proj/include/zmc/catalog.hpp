#pragma once

// Reference zero-mean-curvature surfaces with known causal structure and
// known null lines. Explicit parametrisations come with analytic jets;
// implicitly defined surfaces are solved for t by Newton's method and
// differentiated through the implicit function theorem.

#include "zmc/lorentz.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zmc {

/// F and its first and second partials at (x, y, t).
struct ImplicitEval {
    double F{0};
    double Fx{0}, Fy{0}, Ft{0};
    double Fxx{0}, Fxy{0}, Fxt{0}, Fyy{0}, Fyt{0}, Ftt{0};
};

using ImplicitField = std::function<ImplicitEval(double, double, double)>;

class ImplicitSolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double implicit_tol = 1e-12;
inline constexpr int implicit_max_steps = 50;

/// Newton iteration in t for F(x, y, t) = 0 starting from t_seed.
inline double implicit_solve(const ImplicitField& field, double x, double y, double t_seed)
{
    double t = t_seed;
    for (int step = 0; step < implicit_max_steps; ++step) {
        const ImplicitEval e = field(x, y, t);
        if (!std::isfinite(e.F) || !std::isfinite(e.Ft)) {
            break;
        }
        if (std::abs(e.F) <= implicit_tol) {
            // One polishing step takes the root to working precision.
            if (std::abs(e.Ft) > 1e-14) {
                const double polished = t - e.F / e.Ft;
                if (std::abs(field(x, y, polished).F) <= std::abs(e.F)) {
                    t = polished;
                }
            }
            return t;
        }
        if (std::abs(e.Ft) <= 1e-14) {
            throw ImplicitSolveError("implicit_solve: vanishing t-derivative at t = " + std::to_string(t));
        }
        t -= e.F / e.Ft;
    }
    throw ImplicitSolveError("implicit_solve: no convergence from seed " + std::to_string(t_seed));
}

/// Graph jet of the solution t(x, y) at a root (x, y, t).
inline GraphJet<double> implicit_graph_jet(const ImplicitField& field, double x, double y, double t)
{
    const ImplicitEval e = field(x, y, t);
    GraphJet<double> g;
    g.psi = t;
    g.px = -e.Fx / e.Ft;
    g.py = -e.Fy / e.Ft;
    g.pxx = -(e.Fxx + 2 * e.Fxt * g.px + e.Ftt * g.px * g.px) / e.Ft;
    g.pxy = -(e.Fxy + e.Fxt * g.py + e.Fyt * g.px + e.Ftt * g.px * g.py) / e.Ft;
    g.pyy = -(e.Fyy + 2 * e.Fyt * g.py + e.Ftt * g.py * g.py) / e.Ft;
    return g;
}

// ---------------------------------------------------------------------------

enum class SurfaceKind { parametric, graph, implicit };
enum class ExpectedCausal { spacelike, timelike, lightlike, mixed };

inline const char* to_string(ExpectedCausal e)
{
    switch (e) {
    case ExpectedCausal::spacelike:
        return "spacelike";
    case ExpectedCausal::timelike:
        return "timelike";
    case ExpectedCausal::lightlike:
        return "lightlike";
    case ExpectedCausal::mixed:
        return "mixed";
    }
    return "?";
}

/// A known null line, sampled through the surface's own representation.
struct KnownNullLine {
    std::string label;
    std::function<Vec3M<double>(double)> point; ///< surface point at line parameter s
    std::function<std::optional<double>(double)> B_along; ///< B_f there, if defined
    double s0{-5};
    double s1{5};
};

struct ParamDomain {
    double u0{0}, u1{1}, v0{0}, v1{1};
};

struct SurfaceEntry {
    std::string name;
    SurfaceKind kind{SurfaceKind::parametric};
    /// Parametric jet at domain coordinates (u, v); graphs use (x, y).
    std::function<Jet2<double>(double, double)> jet;
    ParamDomain domain;
    /// Documented singular set, excluded from residual checks.
    std::function<bool(double, double)> singular;
    ExpectedCausal expected{ExpectedCausal::spacelike};
    std::vector<KnownNullLine> null_lines;
    /// Implicit residual |F(p)| for surfaces given by an equation; 0 otherwise.
    std::function<double(const Vec3M<double>&)> equation_residual;
};

namespace catalog_detail {

using std::cos;
using std::cosh;
using std::sin;
using std::sinh;

inline Jet2<double> elliptic_catenoid(double u, double v)
{
    const double cu = cos(u), su = sin(u), sh = sinh(v), ch = cosh(v);
    return {{sh * cu, sh * su, v},
            {-sh * su, sh * cu, 0},
            {ch * cu, ch * su, 1},
            {-sh * cu, -sh * su, 0},
            {-ch * su, ch * cu, 0},
            {sh * cu, sh * su, 0}};
}

inline Jet2<double> light_cone(double u, double v)
{
    const double cu = cos(u), su = sin(u);
    return {{v * cu, v * su, v}, {-v * su, v * cu, 0}, {cu, su, 1}, {-v * cu, -v * su, 0}, {-su, cu, 0}, {0, 0, 0}};
}

/// Sheet t = sqrt(sin^2 x + y^2) of sin^2 x + y^2 = t^2.
inline GraphJet<double> hyperbolic_catenoid_graph(double x, double y)
{
    const double s = sin(x) * sin(x) + y * y;
    const double r = std::sqrt(s);
    const double sx = sin(2 * x), sy = 2 * y, sxx = 2 * cos(2 * x), syy = 2.0;
    GraphJet<double> g;
    g.psi = r;
    g.px = sx / (2 * r);
    g.py = sy / (2 * r);
    const double r3 = 4 * r * r * r;
    g.pxx = sxx / (2 * r) - sx * sx / r3;
    g.pxy = -sx * sy / r3;
    g.pyy = syy / (2 * r) - sy * sy / r3;
    return g;
}

inline double hyperbolic_catenoid_F(const Vec3M<double>& p)
{
    return sin(p.x) * sin(p.x) + p.y * p.y - p.t * p.t;
}

/// 2(t - y) sin t - (x^2 + (y - t)^2) cos t, the cone-type maximal surface
/// through the null line x = 0, y = t. With the opposite sign on the left the
/// level set is neither zero-mean-curvature nor space-like.
inline ImplicitEval mixed_cone_field(double x, double y, double t)
{
    const double s = y - t;
    const double st = sin(t), ct = cos(t);
    const double q = x * x + s * s;
    ImplicitEval e;
    e.F = -2 * s * st - q * ct;
    e.Fx = -2 * x * ct;
    e.Fy = -2 * st - 2 * s * ct;
    e.Ft = (q + 2) * st;
    e.Fxx = -2 * ct;
    e.Fxy = 0;
    e.Fxt = 2 * x * st;
    e.Fyy = -2 * ct;
    e.Fyt = 2 * s * st;
    e.Ftt = (q + 2) * ct - 2 * s * st;
    return e;
}

/// (x, y, t) = (tanh t cos th, t - tanh t + tanh t sin th, t), parameters (t, th).
inline Jet2<double> timelike_tanh(double t, double th)
{
    const double T = std::tanh(t);
    const double T1 = 1 - T * T;
    const double T2 = -2 * T * T1;
    const double c = cos(th), s = sin(th);
    return {{T * c, t - T + T * s, t},
            {T1 * c, 1 - T1 + T1 * s, 1},
            {-T * s, T * c, 0},
            {T2 * c, -T2 + T2 * s, 0},
            {-T1 * s, T1 * c, 0},
            {-T * c, -T * s, 0}};
}

inline double dist_to_multiple_of_pi(double x)
{
    return std::abs(x - std::round(x / std::numbers::pi) * std::numbers::pi);
}

} // namespace catalog_detail

inline const std::vector<std::string>& entry_names()
{
    static const std::vector<std::string> names{"elliptic_catenoid", "light_cone",       "hyperbolic_catenoid",
                                                "mixed_cone_type",   "timelike_tanh",    "lightlike_plane"};
    return names;
}

/// Singular-set margins per entry.
inline constexpr double catenoid_neck_margin = 1e-3;     // |v| for the elliptic catenoid
inline constexpr double hyperbolic_cone_margin = 5e-2;   // radius around (k pi, 0)
inline constexpr double tanh_cone_margin = 1e-3;         // |t| for timelike_tanh

inline SurfaceEntry entry(std::string_view name)
{
    namespace cd = catalog_detail;
    constexpr double pi = std::numbers::pi;
    const auto no_equation = [](const Vec3M<double>&) { return 0.0; };
    SurfaceEntry e;
    e.name = std::string{name};
    e.equation_residual = no_equation;

    if (name == "elliptic_catenoid") {
        e.kind = SurfaceKind::parametric;
        e.jet = cd::elliptic_catenoid;
        e.domain = {-pi, pi, -2, 2};
        e.singular = [](double, double v) { return std::abs(v) < catenoid_neck_margin; };
        e.expected = ExpectedCausal::spacelike;
        return e;
    }
    if (name == "light_cone") {
        e.kind = SurfaceKind::parametric;
        e.jet = cd::light_cone;
        e.domain = {0, 2 * pi, -1, 1};
        e.singular = [](double, double) { return false; };
        e.expected = ExpectedCausal::lightlike;
        for (double u0 : {0.0, pi / 2, pi, 1.0}) {
            e.null_lines.push_back({"ray u=" + std::to_string(u0),
                                    [u0](double s) { return cd::light_cone(u0, s).f; },
                                    [u0](double s) -> std::optional<double> {
                                        return first_form(cd::light_cone(u0, s)).B;
                                    },
                                    -5, 5});
        }
        return e;
    }
    if (name == "hyperbolic_catenoid") {
        e.kind = SurfaceKind::graph;
        e.jet = [](double x, double y) { return graph_to_parametric(cd::hyperbolic_catenoid_graph(x, y), x, y); };
        e.domain = {-4, 4, -2, 2};
        e.singular = [](double x, double y) {
            return std::hypot(cd::dist_to_multiple_of_pi(x), y) < hyperbolic_cone_margin;
        };
        e.expected = ExpectedCausal::spacelike;
        e.equation_residual = [](const Vec3M<double>& p) { return std::abs(cd::hyperbolic_catenoid_F(p)); };
        for (int k : {-1, 0, 1}) {
            for (int sign : {1, -1}) {
                const double x0 = k * pi;
                e.null_lines.push_back({"x=" + std::to_string(k) + "pi, t=" + (sign > 0 ? "+y" : "-y"),
                                        [x0, sign](double s) { return Vec3M<double>{x0, s, sign * s}; },
                                        [x0](double s) -> std::optional<double> {
                                            if (std::abs(s) < hyperbolic_cone_margin) {
                                                return std::nullopt;
                                            }
                                            return graph_af_bf(cd::hyperbolic_catenoid_graph(x0, s)).B;
                                        },
                                        -10, 10});
            }
        }
        return e;
    }
    if (name == "mixed_cone_type") {
        e.kind = SurfaceKind::implicit;
        e.jet = [](double x, double y) {
            const double t = implicit_solve(cd::mixed_cone_field, x, y, y);
            return graph_to_parametric(implicit_graph_jet(cd::mixed_cone_field, x, y, t), x, y);
        };
        e.domain = {-0.3, 0.3, 0.4, 2.7};
        e.singular = [](double, double) { return false; };
        e.expected = ExpectedCausal::spacelike;
        e.equation_residual = [](const Vec3M<double>& p) { return std::abs(cd::mixed_cone_field(p.x, p.y, p.t).F); };
        e.null_lines.push_back({"x=0, y=t", [](double s) { return Vec3M<double>{0, s, s}; },
                                [](double s) -> std::optional<double> {
                                    // Cone points sit where sin t = 0.
                                    if (std::abs(std::sin(s)) < 1e-2) {
                                        return std::nullopt;
                                    }
                                    return graph_af_bf(implicit_graph_jet(cd::mixed_cone_field, 0, s, s)).B;
                                },
                                -5, 5});
        return e;
    }
    if (name == "timelike_tanh") {
        e.kind = SurfaceKind::parametric;
        e.jet = cd::timelike_tanh;
        e.domain = {-2, 2, 0, 2 * pi};
        e.singular = [](double t, double) { return std::abs(t) < tanh_cone_margin; };
        e.expected = ExpectedCausal::timelike;
        e.equation_residual = [](const Vec3M<double>& p) {
            const double T = std::tanh(p.t);
            const double a = p.y - p.t + T;
            return std::abs(a * a + p.x * p.x - T * T);
        };
        e.null_lines.push_back({"x=0, y=t", [](double s) { return cd::timelike_tanh(s, pi / 2).f; },
                                [](double s) -> std::optional<double> {
                                    return first_form(cd::timelike_tanh(s, pi / 2)).B;
                                },
                                -5, 5});
        return e;
    }
    if (name == "lightlike_plane") {
        e.kind = SurfaceKind::graph;
        e.jet = [](double x, double y) { return graph_to_parametric(GraphJet<double>{y, 0, 1, 0, 0, 0}, x, y); };
        e.domain = {-1, 1, -1, 1};
        e.singular = [](double, double) { return false; };
        e.expected = ExpectedCausal::lightlike;
        e.equation_residual = [](const Vec3M<double>& p) { return std::abs(p.t - p.y); };
        for (double x0 : {0.0, 0.5}) {
            e.null_lines.push_back({"x=" + std::to_string(x0) + ", t=y",
                                    [x0](double s) { return Vec3M<double>{x0, s, s}; },
                                    [](double) -> std::optional<double> { return 0.0; }, -5, 5});
        }
        return e;
    }
    throw std::invalid_argument("unknown catalog surface: " + std::string{name});
}

// ---------------------------------------------------------------------------
// Corpus verification

struct NullLineResult {
    std::string label;
    NullLineVerdict verdict;
    double max_abs_B{0};
    double max_equation_residual{0};
    bool pass{false};
};

struct CorpusRow {
    std::string name;
    ExpectedCausal expected{ExpectedCausal::spacelike};
    double max_scaled_residual{0};
    std::size_t residual_points{0};
    std::size_t spacelike{0};
    std::size_t timelike{0};
    std::size_t null_points{0};
    std::size_t degenerate_null{0};
    std::size_t failed_points{0};   ///< implicit solves that did not converge
    std::size_t singular_points{0}; ///< points where the jet is not finite
    std::vector<NullLineResult> null_lines;
    bool residual_pass{false};
    bool causal_pass{false};
    bool pass{false};
};

struct CorpusReport {
    std::vector<CorpusRow> rows;
    bool all_pass{true};
};

inline constexpr double corpus_residual_tol = 1e-6;
inline constexpr double corpus_null_line_tol = 1e-9;
inline constexpr int corpus_null_line_samples = 21;

inline CorpusRow verify_entry(const SurfaceEntry& e, int samples, double null_tol = default_null_tol)
{
    CorpusRow row;
    row.name = e.name;
    row.expected = e.expected;
    const auto& d = e.domain;
    for (int i = 0; i < samples; ++i) {
        const double u = d.u0 + (d.u1 - d.u0) * i / (samples - 1);
        for (int j = 0; j < samples; ++j) {
            const double v = d.v0 + (d.v1 - d.v0) * j / (samples - 1);
            Jet2<double> jet;
            try {
                jet = e.jet(u, v);
            } catch (const ImplicitSolveError&) {
                ++row.failed_points;
                continue;
            }
            const double B = first_form(jet).B;
            if (!std::isfinite(B) || !std::isfinite(zmc_residual(jet))) {
                ++row.singular_points;
                continue;
            }
            const CausalVerdict cv = classify(B, null_tol);
            switch (cv.kind) {
            case CausalKind::spacelike:
                ++row.spacelike;
                break;
            case CausalKind::timelike:
                ++row.timelike;
                break;
            case CausalKind::null: {
                ++row.null_points;
                const auto B_field = [&e](double a, double b) { return first_form(e.jet(a, b)).B; };
                if (degenerate_test(B_field, u, v, 1e-4, null_tol, 1e-6)) {
                    ++row.degenerate_null;
                }
                break;
            }
            }
            if (!e.singular(u, v)) {
                row.max_scaled_residual = std::max(row.max_scaled_residual, scaled_residual(jet));
                ++row.residual_points;
            }
        }
    }
    row.residual_pass = row.residual_points > 0 && row.max_scaled_residual <= corpus_residual_tol && row.failed_points == 0;

    switch (e.expected) {
    case ExpectedCausal::spacelike:
        row.causal_pass = row.spacelike > 0 && row.timelike == 0;
        break;
    case ExpectedCausal::timelike:
        row.causal_pass = row.timelike > 0 && row.spacelike == 0;
        break;
    case ExpectedCausal::lightlike:
        row.causal_pass = row.spacelike == 0 && row.timelike == 0 && row.degenerate_null == row.null_points;
        break;
    case ExpectedCausal::mixed:
        row.causal_pass = row.spacelike > 0 && row.timelike > 0;
        break;
    }

    bool lines_ok = true;
    for (const auto& nl : e.null_lines) {
        NullLineResult r;
        r.label = nl.label;
        std::vector<Vec3M<double>> pts;
        for (int i = 0; i < corpus_null_line_samples; ++i) {
            const double s = nl.s0 + (nl.s1 - nl.s0) * i / (corpus_null_line_samples - 1);
            const Vec3M<double> p = nl.point(s);
            pts.push_back(p);
            r.max_equation_residual = std::max(r.max_equation_residual, e.equation_residual(p));
            if (const auto B = nl.B_along(s)) {
                r.max_abs_B = std::max(r.max_abs_B, std::abs(*B));
            }
        }
        r.verdict = null_line_check(pts, corpus_null_line_tol);
        r.pass = r.verdict.is_null_line && r.max_abs_B <= null_tol && r.max_equation_residual <= corpus_null_line_tol;
        lines_ok = lines_ok && r.pass;
        row.null_lines.push_back(std::move(r));
    }
    row.pass = row.residual_pass && row.causal_pass && lines_ok;
    return row;
}

inline CorpusReport corpus_verify(int samples_per_axis = 41)
{
    CorpusReport rep;
    for (const auto& n : entry_names()) {
        rep.rows.push_back(verify_entry(entry(n), samples_per_axis));
        rep.all_pass = rep.all_pass && rep.rows.back().pass;
    }
    return rep;
}

} // namespace zmc
