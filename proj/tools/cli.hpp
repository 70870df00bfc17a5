#pragma once

// Command-line front end. Exit codes: 0 ok, 1 verification failure,
// 2 argument violation, 3 certificate violation, 4 I/O failure.

#include "zmc/zmc.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace zmc::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, bad_arguments = 2, outside_certificate = 3, io_failure = 4 };

class CliError : public std::runtime_error {
public:
    CliError(ExitCode code, const std::string& what)
        : std::runtime_error(what)
        , code_(code)
    {
    }
    ExitCode code() const { return code_; }

private:
    ExitCode code_;
};

// ---------------------------------------------------------------------------
// Surface sources: a coefficient file or a catalog entry

struct Source {
    std::optional<GraphSeries> series;
    std::optional<SurfaceEntry> surface;

    std::string label() const
    {
        if (series) {
            return std::string{"series case "} + case_label(series->seed().kind) + " c=" + to_string(series->seed().c);
        }
        return "catalog:" + surface->name;
    }
};

inline Source load_source(const std::string& coeffs, const std::string& surface)
{
    if (coeffs.empty() == surface.empty()) {
        throw CliError(bad_arguments, "exactly one of --coeffs or --surface is required");
    }
    Source src;
    if (!coeffs.empty()) {
        try {
            src.series = series_from_json(read_json_file(coeffs));
        } catch (const std::ios_base::failure& ex) {
            throw CliError(io_failure, ex.what());
        } catch (const FormatError& ex) {
            throw CliError(io_failure, ex.what());
        }
        return src;
    }
    const std::string prefix = "catalog:";
    if (surface.rfind(prefix, 0) != 0) {
        throw CliError(bad_arguments, "--surface must look like catalog:NAME");
    }
    try {
        src.surface = entry(surface.substr(prefix.size()));
    } catch (const std::invalid_argument& ex) {
        throw CliError(bad_arguments, ex.what());
    }
    return src;
}

/// Default grid: the delta = 1 certified rectangle (shrunk into the open set)
/// for series, the sampling domain for catalog surfaces.
inline Grid2 default_grid(const Source& src, int n)
{
    if (src.series) {
        const double w = certificate(src.series->seed().c, 1.0).half_width * 0.999;
        return {{-w, w, n}, {-0.999, 0.999, n}};
    }
    const auto& d = src.surface->domain;
    return {{d.u0, d.u1, n}, {d.v0, d.v1, n}};
}

inline double default_tol(const Source& src)
{
    // Series B_f is evaluated without cancellation, so it keeps relative
    // precision down to the x^4 scale inside the certified rectangle.
    return src.series ? 1e-30 : default_null_tol;
}

struct SampledGrid {
    Grid2 grid;
    std::vector<Vec3M<double>> position;
    std::vector<double> B;
    std::vector<CausalKind> kind;

    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.y.n) + static_cast<std::size_t>(j); }
};

inline SampledGrid sample(const Source& src, const Grid2& grid, double tol)
{
    SampledGrid s;
    s.grid = grid;
    const std::size_t n = static_cast<std::size_t>(grid.x.n) * static_cast<std::size_t>(grid.y.n);
    s.position.resize(n);
    s.B.resize(n);
    s.kind.resize(n);
    parallel_rows(grid.x.n, [&](int i) {
        const double u = grid.x.at(i);
        for (int j = 0; j < grid.y.n; ++j) {
            const double v = grid.y.at(j);
            const std::size_t k = s.index(i, j);
            if (src.series) {
                const GraphJet<double> phi = src.series->deviation_jet(u, v);
                s.position[k] = {u, v, v + phi.psi};
                s.B[k] = graph_af_bf_about_null_plane(phi).B;
            } else {
                Jet2<double> jet;
                try {
                    jet = src.surface->jet(u, v);
                } catch (const ImplicitSolveError& ex) {
                    throw CliError(verification_failed, std::string{"surface evaluation failed: "} + ex.what());
                }
                s.position[k] = jet.f;
                s.B[k] = first_form(jet).B;
            }
            s.kind[k] = std::isfinite(s.B[k]) ? classify(s.B[k], tol).kind : CausalKind::null;
        }
    });
    return s;
}

/// Type of a surface from its causal histogram. A kind counts as present only
/// with at least `min_points` samples, so isolated float noise cannot flip it.
inline std::string surface_type(std::size_t spacelike, std::size_t timelike, std::size_t null_points,
                                std::size_t min_points = 5)
{
    const bool sp = spacelike >= min_points;
    const bool tl = timelike >= min_points;
    if (sp && tl) {
        return "mixed type";
    }
    if (sp) {
        return "maximal type";
    }
    if (tl) {
        return "time-like";
    }
    if (spacelike == 0 && timelike == 0 && null_points > 0) {
        return "light-like";
    }
    return "indeterminate";
}

inline void print_bar(std::ostream& out, const char* label, std::size_t count, std::size_t total)
{
    const int width = total ? static_cast<int>(std::lround(40.0 * static_cast<double>(count) / static_cast<double>(total))) : 0;
    out << "  " << std::left << std::setw(10) << label << std::right << std::setw(8) << count << "  "
        << std::string(static_cast<std::size_t>(width), '#') << '\n';
}

// ---------------------------------------------------------------------------
// Subcommands

struct ConstructArgs {
    std::string kase;
    std::string c;
    int order{default_order};
    std::string out;
};

inline int cmd_construct(const ConstructArgs& a, std::ostream& out)
{
    GraphSeries s = [&] {
        try {
            const SeedCondition seed = SeedCondition::make(parse_case(a.kase), parse_rational(a.c));
            if (seed.has_beta3()) {
                return recurse_generic(seed, a.order);
            }
            return recurse_paper(seed, a.order);
        } catch (const std::invalid_argument& ex) {
            throw CliError(bad_arguments, ex.what());
        }
    }();
    out << "case " << case_label(s.seed().kind) << ", c = " << to_string(s.seed().c) << ", order " << s.order()
        << '\n';
    for (int k = 3; k <= s.order(); ++k) {
        out << "  beta_" << k << " = " << s.beta(k) << '\n';
    }
    if (!a.out.empty()) {
        try {
            write_json_file(a.out, series_to_json(s));
        } catch (const std::ios_base::failure& ex) {
            throw CliError(io_failure, ex.what());
        }
        out << "wrote " << a.out << '\n';
    }
    return ok;
}

struct ClassifyArgs {
    std::string coeffs;
    std::string surface;
    std::string grid;
    std::optional<double> tol;
    bool certified{false};
    std::string out;
};

inline json classify_report(const Source& src, const SampledGrid& s, double tol)
{
    std::size_t sp = 0, tl = 0, nl = 0;
    for (auto k : s.kind) {
        sp += k == CausalKind::spacelike;
        tl += k == CausalKind::timelike;
        nl += k == CausalKind::null;
    }
    json points = json::array();
    for (int i = 0; i < s.grid.x.n; ++i) {
        for (int j = 0; j < s.grid.y.n; ++j) {
            const auto k = s.index(i, j);
            points.push_back({s.grid.x.at(i), s.grid.y.at(j), s.B[k], to_string(s.kind[k])});
        }
    }
    return {{"source", src.label()},
            {"tol", tol},
            {"grid", {{"x", {s.grid.x.lo, s.grid.x.hi, s.grid.x.n}}, {"y", {s.grid.y.lo, s.grid.y.hi, s.grid.y.n}}}},
            {"histogram", {{"spacelike", sp}, {"timelike", tl}, {"null", nl}}},
            {"verdict", surface_type(sp, tl, nl)},
            {"points", std::move(points)}};
}

inline void check_certified(const Source& src, const Grid2& g)
{
    if (!src.series) {
        throw CliError(bad_arguments, "--certified applies to --coeffs input only");
    }
    if (src.series->seed().has_beta3()) {
        throw CliError(bad_arguments, "--certified: no convergence certificate is available for case i");
    }
    const Rational& c = src.series->seed().c;
    for (int i = 0; i < g.x.n; ++i) {
        for (int j = 0; j < g.y.n; ++j) {
            if (!u_membership(c, g.x.at(i), g.y.at(j))) {
                std::ostringstream msg;
                msg << "grid point (" << g.x.at(i) << ", " << g.y.at(j) << ") lies outside the certified domain";
                throw CliError(outside_certificate, msg.str());
            }
        }
    }
}

inline Grid2 resolve_grid(const Source& src, const std::string& text, int default_n)
{
    if (text.empty()) {
        return default_grid(src, default_n);
    }
    try {
        return parse_grid(text);
    } catch (const std::invalid_argument& ex) {
        throw CliError(bad_arguments, ex.what());
    }
}

inline int cmd_classify(const ClassifyArgs& a, std::ostream& out)
{
    const Source src = load_source(a.coeffs, a.surface);
    const Grid2 g = resolve_grid(src, a.grid, 41);
    if (a.certified) {
        check_certified(src, g);
    }
    const double tol = a.tol.value_or(default_tol(src));
    if (!(tol >= 0)) {
        throw CliError(bad_arguments, "--tol must be non-negative");
    }
    const SampledGrid s = sample(src, g, tol);
    const json rep = classify_report(src, s, tol);

    const auto& h = rep["histogram"];
    const std::size_t total = s.kind.size();
    out << src.label() << "  (" << g.x.n << " x " << g.y.n << " grid, tol " << tol << ")\n";
    print_bar(out, "spacelike", h["spacelike"].get<std::size_t>(), total);
    print_bar(out, "timelike", h["timelike"].get<std::size_t>(), total);
    print_bar(out, "null", h["null"].get<std::size_t>(), total);
    out << "verdict: " << rep["verdict"].get<std::string>() << '\n';
    if (!a.out.empty()) {
        try {
            write_json_file(a.out, rep);
        } catch (const std::ios_base::failure& ex) {
            throw CliError(io_failure, ex.what());
        }
    }
    return ok;
}

struct BoundsArgs {
    std::string c;
    double delta{1};
};

inline int cmd_bounds(const BoundsArgs& a, std::ostream& out)
{
    Rational c;
    try {
        c = parse_rational(a.c);
    } catch (const std::invalid_argument& ex) {
        throw CliError(bad_arguments, ex.what());
    }
    if (c == 0 || !(a.delta >= 1)) {
        throw CliError(bad_arguments, "bounds requires c != 0 and delta >= 1");
    }
    const ConvergenceCert cert = certificate(c, a.delta);
    const TauConstant tc = tau_constant();
    json j = cert_to_json(cert);
    j["tau_sharp"] = tc.tau_sharp;
    j["t_star"] = tc.t_star;
    json widths = json::object();
    for (double y : {0.0, 1.0, 2.0, 4.0}) {
        widths[std::to_string(static_cast<int>(y))] = u_width(c, y);
    }
    j["u_width"] = widths;
    const ConvexityWitness w = convexity_witness(c);
    j["non_convexity_witness"] = {{"p1", {w.p1[0], w.p1[1]}},
                                  {"p2", {w.p2[0], w.p2[1]}},
                                  {"midpoint", {w.midpoint[0], w.midpoint[1]}},
                                  {"width_at_midpoint", w.width_mid},
                                  {"midpoint_in_U", false}};
    out << j.dump(2) << '\n';
    return ok;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyRow {
    std::string suite;
    std::string name;
    std::string status; ///< PASS, FAIL or INFO
    std::string detail;
};

inline std::vector<VerifyRow> verify_recursion()
{
    std::vector<VerifyRow> rows;
    for (const Rational& c : {Rational{1}, Rational{-1}, Rational{3, 2}}) {
        const SeedCondition seed = SeedCondition::null_axis(c);
        const GraphSeries a = recurse_paper(seed, default_order);
        const GraphSeries b = recurse_generic(seed, default_order);
        const bool same = a.betas() == b.betas();
        rows.push_back({"recursion", "closed-form == generic (c=" + to_string(c) + ", N=16)", same ? "PASS" : "FAIL",
                        same ? "identical rational tables" : "tables differ"});
    }
    const GraphSeries s = recurse_paper(SeedCondition::null_axis(1), 8);
    const std::vector<std::pair<int, RationalPoly>> listed{
        {4, RationalPoly::monomial(4, 1)}, {5, {}}, {6, RationalPoly::monomial(-8, 3)}, {7, {}}};
    for (const auto& [k, expected] : listed) {
        const bool eq = s.beta(k) == expected;
        rows.push_back({"recursion", "beta_" + std::to_string(k) + " (c=1)", eq ? "PASS" : "FAIL", to_string(s.beta(k))});
    }
    const RationalPoly b8 = s.beta(8);
    const GraphSeries g = recurse_generic(SeedCondition::null_axis(1), 8);
    rows.push_back({"recursion", "beta_8 (c=1) both paths", b8 == g.beta(8) ? "PASS" : "FAIL", to_string(b8)});
    const RationalPoly listed8 = RationalPoly::monomial(-32, 5);
    rows.push_back({"recursion", "beta_8 vs listed -32c^3y^5", "INFO",
                    b8 == listed8 ? "agrees with listed value"
                                  : "computed " + to_string(b8) + "; listed -32y^5 has the opposite sign"});
    return rows;
}

inline std::vector<VerifyRow> verify_prop32(json* estimates)
{
    std::vector<VerifyRow> rows;
    for (const int c : {1, -1}) {
        const GraphSeries s = recurse_paper(SeedCondition::null_axis(c), default_order);
        for (const double delta : {1.0, 2.0}) {
            const EstimateReport r = zmc::verify_prop32(s, delta, 101);
            double worst = 0;
            for (const auto& e : r.rows) {
                if (e.rhs > 0) {
                    worst = std::max(worst, e.lhs / e.rhs);
                }
            }
            std::ostringstream d;
            d << r.rows.size() << " rows, worst lhs/rhs " << worst;
            rows.push_back({"prop32", "estimates c=" + std::to_string(c) + " delta=" + std::to_string(static_cast<int>(delta)),
                            r.all_pass ? "PASS" : "FAIL", d.str()});
            if (estimates) {
                estimates->push_back({{"c", c}, {"delta", delta}, {"rows", estimate_report_to_json(r)}});
            }
        }
    }
    return rows;
}

inline std::vector<VerifyRow> verify_corpus(json* corpus)
{
    std::vector<VerifyRow> rows;
    const CorpusReport rep = corpus_verify();
    for (const auto& r : rep.rows) {
        std::ostringstream d;
        d << "residual " << r.max_scaled_residual << ", sp/tl/null " << r.spacelike << '/' << r.timelike << '/'
          << r.null_points << ", null lines " << r.null_lines.size();
        rows.push_back({"corpus", r.name, r.pass ? "PASS" : "FAIL", d.str()});
    }
    if (corpus) {
        *corpus = corpus_report_to_json(rep);
    }
    return rows;
}

struct VerifyArgs {
    std::string suite{"all"};
    std::string out;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out)
{
    std::vector<VerifyRow> rows;
    json estimates = json::array();
    json corpus = json::array();
    const bool all = a.suite == "all";
    if (all || a.suite == "recursion") {
        auto r = verify_recursion();
        rows.insert(rows.end(), r.begin(), r.end());
    }
    if (all || a.suite == "prop32") {
        auto r = verify_prop32(&estimates);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    if (all || a.suite == "corpus") {
        auto r = verify_corpus(&corpus);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    bool pass = true;
    json jrows = json::array();
    for (const auto& r : rows) {
        out << std::left << std::setw(5) << r.status << ' ' << std::setw(10) << r.suite << ' ' << r.name << "  ["
            << r.detail << "]\n";
        pass = pass && r.status != "FAIL";
        jrows.push_back({{"suite", r.suite}, {"name", r.name}, {"status", r.status}, {"detail", r.detail}});
    }
    out << (pass ? "all checks passed" : "verification FAILED") << '\n';
    if (!a.out.empty()) {
        try {
            write_json_file(a.out, {{"rows", jrows}, {"estimates", estimates}, {"corpus", corpus}, {"pass", pass}});
        } catch (const std::ios_base::failure& ex) {
            throw CliError(io_failure, ex.what());
        }
    }
    return pass ? ok : verification_failed;
}

// ---------------------------------------------------------------------------
// mesh

struct MeshArgs {
    std::string coeffs;
    std::string surface;
    std::string grid;
    std::string format{"ply"};
    std::string encoding{"ascii"};
    std::optional<double> tol;
    std::string out;
};

inline Mesh build_mesh(const SampledGrid& s)
{
    Mesh m;
    m.vertices.reserve(s.position.size());
    for (std::size_t k = 0; k < s.position.size(); ++k) {
        const auto rgb = causal_color(s.kind[k]);
        m.vertices.push_back({s.position[k].x, s.position[k].y, s.position[k].t, rgb[0], rgb[1], rgb[2]});
    }
    m.faces = grid_faces(static_cast<std::size_t>(s.grid.x.n), static_cast<std::size_t>(s.grid.y.n));
    return m;
}

inline int cmd_mesh(const MeshArgs& a, std::ostream& out)
{
    const Source src = load_source(a.coeffs, a.surface);
    const Grid2 g = resolve_grid(src, a.grid, 64);
    if (g.x.n < 2 || g.y.n < 2) {
        throw CliError(bad_arguments, "mesh grid needs at least 2 points per axis");
    }
    const SampledGrid s = sample(src, g, a.tol.value_or(default_tol(src)));
    const Mesh m = build_mesh(s);

    std::ofstream file(a.out, std::ios::binary);
    if (!file) {
        throw CliError(io_failure, "cannot open " + a.out + " for writing");
    }
    if (a.format == "ply") {
        write_ply(file, m, a.encoding == "binary" ? PlyEncoding::binary_little_endian : PlyEncoding::ascii);
    } else {
        write_obj(file, m);
    }
    file.flush();
    if (!file) {
        throw CliError(io_failure, "write to " + a.out + " failed");
    }
    out << "wrote " << a.out << ": " << m.vertices.size() << " vertices, " << m.faces.size() << " faces\n";
    return ok;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Zero-mean-curvature graphs with an entire null line in R^3_1", "zmc"};
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "build the truncated series and write its coefficients");
    construct->add_option("--case", ca.kase, "i (mixed), ii (space-like, c<0) or iii (time-like, c>0)")
        ->required()
        ->check(CLI::IsMember({"i", "ii", "iii"}));
    construct->add_option("--c", ca.c, "seed parameter as a rational, e.g. -1 or 3/2")->required();
    construct->add_option("--order", ca.order, "truncation order N")->check(CLI::Range(4, default_generic_order_cap));
    construct->add_option("--out", ca.out, "coefficient JSON file");

    ClassifyArgs cl;
    auto* classify_cmd = app.add_subcommand("classify", "causal classification on a grid");
    classify_cmd->add_option("--coeffs", cl.coeffs, "coefficient JSON file");
    classify_cmd->add_option("--surface", cl.surface, "catalog:NAME");
    classify_cmd->add_option("--grid", cl.grid, "X0:X1:NX,Y0:Y1:NY");
    classify_cmd->add_option("--tol", cl.tol, "null tolerance on B_f");
    classify_cmd->add_flag("--certified", cl.certified, "require the grid to lie in the certified domain");
    classify_cmd->add_option("--out", cl.out, "JSON report file");

    BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "convergence certificate");
    bounds->add_option("--c", ba.c, "seed parameter")->required();
    bounds->add_option("--delta", ba.delta, "half-height delta >= 1");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", va.suite, "recursion, prop32, corpus or all")
        ->check(CLI::IsMember({"recursion", "prop32", "corpus", "all"}));
    verify->add_option("--out", va.out, "JSON report file");

    MeshArgs ma;
    auto* mesh = app.add_subcommand("mesh", "export a triangulated grid");
    mesh->add_option("--coeffs", ma.coeffs, "coefficient JSON file");
    mesh->add_option("--surface", ma.surface, "catalog:NAME");
    mesh->add_option("--grid", ma.grid, "X0:X1:NX,Y0:Y1:NY");
    mesh->add_option("--format", ma.format, "ply or obj")->check(CLI::IsMember({"ply", "obj"}));
    mesh->add_option("--ply-encoding", ma.encoding, "ascii or binary")->check(CLI::IsMember({"ascii", "binary"}));
    mesh->add_option("--tol", ma.tol, "null tolerance for vertex colours");
    mesh->add_option("--out", ma.out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : bad_arguments;
    }

    try {
        if (*construct) {
            return cmd_construct(ca, out);
        }
        if (*classify_cmd) {
            return cmd_classify(cl, out);
        }
        if (*bounds) {
            return cmd_bounds(ba, out);
        }
        if (*verify) {
            return cmd_verify(va, out);
        }
        if (*mesh) {
            return cmd_mesh(ma, out);
        }
    } catch (const CliError& e) {
        err << "error: " << e.what() << '\n';
        return e.code();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return bad_arguments;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return verification_failed;
    }
    return bad_arguments;
}

} // namespace zmc::cli
