#pragma once

// File formats: coefficient JSON (series interchange), estimate and corpus
// reports, and triangle meshes (PLY with causal vertex colours, OBJ).

#include "zmc/bounds.hpp"
#include "zmc/catalog.hpp"
#include "zmc/lorentz.hpp"
#include "zmc/poly.hpp"
#include "zmc/series.hpp"

#include <json.hpp>

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zmc {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Polynomials and coefficient files

inline json poly_to_json(const RationalPoly& p)
{
    json arr = json::array();
    for (const auto& c : p.coeffs()) {
        arr.push_back(to_string(c));
    }
    return arr;
}

inline RationalPoly poly_from_json(const json& j)
{
    if (!j.is_array()) {
        throw FormatError("polynomial must be a JSON array of rational strings");
    }
    std::vector<Rational> c;
    for (const auto& e : j) {
        if (!e.is_string()) {
            throw FormatError("polynomial coefficients must be strings");
        }
        try {
            c.push_back(parse_rational(e.get<std::string>()));
        } catch (const std::invalid_argument& ex) {
            throw FormatError(ex.what());
        }
    }
    return RationalPoly{std::move(c)};
}

/// { "case": "ii", "c": "-1/1", "order": 16, "betas": { "4": [...], ... } }.
/// Zero coefficients are omitted from "betas".
inline json series_to_json(const GraphSeries& s)
{
    json j;
    j["case"] = case_label(s.seed().kind);
    j["c"] = to_fraction_string(s.seed().c);
    j["order"] = s.order();
    json betas = json::object();
    for (int k = 3; k <= s.order(); ++k) {
        if (!s.beta(k).is_zero()) {
            betas[std::to_string(k)] = poly_to_json(s.beta(k));
        }
    }
    j["betas"] = std::move(betas);
    return j;
}

inline GraphSeries series_from_json(const json& j)
{
    try {
        const SeriesCase kind = parse_case(j.at("case").get<std::string>());
        const Rational c = parse_rational(j.at("c").get<std::string>());
        const int order = j.at("order").get<int>();
        std::map<int, RationalPoly> betas;
        for (const auto& [key, val] : j.at("betas").items()) {
            const int k = std::stoi(key);
            if (k < 3 || k > order) {
                throw FormatError("beta index " + key + " outside 3..order");
            }
            betas[k] = poly_from_json(val);
        }
        return GraphSeries{SeedCondition::make(kind, c), order, std::move(betas)};
    } catch (const json::exception& ex) {
        throw FormatError(std::string{"malformed coefficient file: "} + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw FormatError(std::string{"malformed coefficient file: "} + ex.what());
    }
}

inline void write_json_file(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out) {
        throw std::ios_base::failure("cannot open " + path + " for writing");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw std::ios_base::failure("write to " + path + " failed");
    }
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& ex) {
        throw FormatError(path + ": " + ex.what());
    }
}

// ---------------------------------------------------------------------------
// Reports

inline json cert_to_json(const ConvergenceCert& c)
{
    return {{"c", to_fraction_string(c.c)}, {"delta", c.delta},     {"tau", c.tau},
            {"M", c.M},                     {"C_delta", c.C_delta}, {"theta0", c.theta0},
            {"rect", {{"x", {-c.half_width, c.half_width}}, {"y", {-c.delta, c.delta}}}}};
}

inline json estimate_report_to_json(const EstimateReport& r)
{
    json rows = json::array();
    for (const auto& e : r.rows) {
        rows.push_back({{"l", e.l},
                        {"inequality", e.inequality},
                        {"delta", e.delta},
                        {"worst_y", e.worst_y},
                        {"lhs", e.lhs},
                        {"rhs", e.rhs},
                        {"pass", e.pass}});
    }
    return rows;
}

inline json corpus_report_to_json(const CorpusReport& r)
{
    json rows = json::array();
    for (const auto& row : r.rows) {
        json lines = json::array();
        for (const auto& nl : row.null_lines) {
            lines.push_back({{"label", nl.label},
                             {"is_null_line", nl.verdict.is_null_line},
                             {"direction", {nl.verdict.direction.x, nl.verdict.direction.y, nl.verdict.direction.t}},
                             {"max_distance", nl.verdict.max_distance},
                             {"lorentz_square", nl.verdict.lorentz_square},
                             {"max_abs_B", nl.max_abs_B},
                             {"max_equation_residual", nl.max_equation_residual},
                             {"pass", nl.pass}});
        }
        rows.push_back({{"surface", row.name},
                        {"expected", to_string(row.expected)},
                        {"max_scaled_residual", row.max_scaled_residual},
                        {"residual_points", row.residual_points},
                        {"histogram",
                         {{"spacelike", row.spacelike}, {"timelike", row.timelike}, {"null", row.null_points}}},
                        {"degenerate_null", row.degenerate_null},
                        {"singular_points", row.singular_points},
                        {"failed_points", row.failed_points},
                        {"null_lines", lines},
                        {"pass", row.pass}});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Meshes

struct MeshVertex {
    double x{0}, y{0}, t{0};
    std::uint8_t r{255}, g{255}, b{255};
};

struct Mesh {
    std::vector<MeshVertex> vertices;
    std::vector<std::array<std::uint32_t, 3>> faces;

    bool indices_valid() const
    {
        for (const auto& f : faces) {
            for (auto i : f) {
                if (i >= vertices.size()) {
                    return false;
                }
            }
        }
        return true;
    }
};

/// spacelike = blue, timelike = red, null = white.
inline std::array<std::uint8_t, 3> causal_color(CausalKind k)
{
    switch (k) {
    case CausalKind::spacelike:
        return {0, 0, 255};
    case CausalKind::timelike:
        return {255, 0, 0};
    case CausalKind::null:
        return {255, 255, 255};
    }
    return {0, 0, 0};
}

/// Two triangles per cell of an nu x nv vertex grid stored row-major (i * nv + j).
inline std::vector<std::array<std::uint32_t, 3>> grid_faces(std::size_t nu, std::size_t nv)
{
    std::vector<std::array<std::uint32_t, 3>> faces;
    if (nu < 2 || nv < 2) {
        return faces;
    }
    faces.reserve(2 * (nu - 1) * (nv - 1));
    for (std::size_t i = 0; i + 1 < nu; ++i) {
        for (std::size_t j = 0; j + 1 < nv; ++j) {
            const auto a = static_cast<std::uint32_t>(i * nv + j);
            const auto b = static_cast<std::uint32_t>((i + 1) * nv + j);
            const auto c = static_cast<std::uint32_t>((i + 1) * nv + j + 1);
            const auto d = static_cast<std::uint32_t>(i * nv + j + 1);
            faces.push_back({a, b, c});
            faces.push_back({a, c, d});
        }
    }
    return faces;
}

enum class PlyEncoding { ascii, binary_little_endian };

inline void write_ply(std::ostream& os, const Mesh& m, PlyEncoding enc = PlyEncoding::ascii)
{
    os << "ply\n"
       << "format " << (enc == PlyEncoding::ascii ? "ascii" : "binary_little_endian") << " 1.0\n"
       << "element vertex " << m.vertices.size() << "\n"
       << "property double x\nproperty double y\nproperty double z\n"
       << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
       << "element face " << m.faces.size() << "\n"
       << "property list uchar uint vertex_indices\n"
       << "end_header\n";
    if (enc == PlyEncoding::ascii) {
        os.precision(17);
        for (const auto& v : m.vertices) {
            os << v.x << ' ' << v.y << ' ' << v.t << ' ' << int{v.r} << ' ' << int{v.g} << ' ' << int{v.b} << '\n';
        }
        for (const auto& f : m.faces) {
            os << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
        }
        return;
    }
    static_assert(std::endian::native == std::endian::little, "binary PLY writer assumes a little-endian host");
    const auto put = [&os](const auto& value) { os.write(reinterpret_cast<const char*>(&value), sizeof(value)); };
    for (const auto& v : m.vertices) {
        put(v.x);
        put(v.y);
        put(v.t);
        put(v.r);
        put(v.g);
        put(v.b);
    }
    for (const auto& f : m.faces) {
        put(std::uint8_t{3});
        put(f[0]);
        put(f[1]);
        put(f[2]);
    }
}

inline void write_obj(std::ostream& os, const Mesh& m)
{
    os.precision(17);
    for (const auto& v : m.vertices) {
        os << "v " << v.x << ' ' << v.y << ' ' << v.t << '\n';
    }
    for (const auto& f : m.faces) {
        os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    }
}

} // namespace zmc
