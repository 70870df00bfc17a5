#pragma once

// Surface geometry in Minkowski 3-space R^3_1 with signature (++-).
//
// For a map f(u,v) with first fundamental matrix P and the unnormalised
// second fundamental matrix Q (taken against nu = diag(1,1,-1)(f_u x_E f_v)),
//
//   B_f = det P,     A_f = trace(cof(P) Q).
//
// A_f vanishes identically exactly on zero-mean-curvature maps, and the sign
// of B_f gives the causal type of a point. Neither quantity is normalised, so
// both scale under reparametrisation; only the sign of B_f and the zero set
// of A_f are geometric.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace zmc {

template <class T = double>
struct Vec3M {
    T x{0};
    T y{0};
    T t{0};

    friend Vec3M operator+(const Vec3M& a, const Vec3M& b) { return {a.x + b.x, a.y + b.y, a.t + b.t}; }
    friend Vec3M operator-(const Vec3M& a, const Vec3M& b) { return {a.x - b.x, a.y - b.y, a.t - b.t}; }
    friend Vec3M operator*(const T& s, const Vec3M& a) { return {s * a.x, s * a.y, s * a.t}; }
    friend bool operator==(const Vec3M&, const Vec3M&) = default;
};

/// Lorentzian product a.b = a_x b_x + a_y b_y - a_t b_t.
template <class T>
T dot(const Vec3M<T>& a, const Vec3M<T>& b)
{
    return a.x * b.x + a.y * b.y - a.t * b.t;
}

template <class T>
Vec3M<T> cross_euclidean(const Vec3M<T>& a, const Vec3M<T>& b)
{
    return {a.y * b.t - a.t * b.y, a.t * b.x - a.x * b.t, a.x * b.y - a.y * b.x};
}

template <class T>
double norm_euclidean(const Vec3M<T>& a)
{
    using std::sqrt;
    return sqrt(static_cast<double>(a.x * a.x + a.y * a.y + a.t * a.t));
}

/// Value, first and second partials of a map (u,v) -> R^3_1.
/// f_uv is stored once; inputs are assumed smooth enough that f_uv = f_vu.
template <class T = double>
struct Jet2 {
    Vec3M<T> f;
    Vec3M<T> fu;
    Vec3M<T> fv;
    Vec3M<T> fuu;
    Vec3M<T> fuv;
    Vec3M<T> fvv;
};

/// Value and partials of a scalar height function psi(x,y).
template <class T = double>
struct GraphJet {
    T psi{0};
    T px{0};
    T py{0};
    T pxx{0};
    T pxy{0};
    T pyy{0};
};

/// Symmetric 2x2 matrix [[a, b], [b, c]].
template <class T = double>
struct Sym2 {
    T a{0};
    T b{0};
    T c{0};

    T det() const { return a * c - b * b; }
    Sym2 cofactor() const { return {c, -b, a}; }
};

template <class T = double>
struct FirstForm {
    Sym2<T> P;
    T B{0};
};

template <class T>
FirstForm<T> first_form(const Jet2<T>& j)
{
    Sym2<T> P{dot(j.fu, j.fu), dot(j.fu, j.fv), dot(j.fv, j.fv)};
    return {P, P.det()};
}

/// The Lorentzian normal diag(1,1,-1)(f_u x_E f_v), deliberately not normalised.
template <class T>
Vec3M<T> lorentz_normal(const Jet2<T>& j)
{
    Vec3M<T> n = cross_euclidean(j.fu, j.fv);
    n.t = -n.t;
    return n;
}

template <class T>
Sym2<T> second_form(const Jet2<T>& j)
{
    const Vec3M<T> n = lorentz_normal(j);
    return {dot(j.fuu, n), dot(j.fuv, n), dot(j.fvv, n)};
}

/// A_f = trace(cof(P) Q).
template <class T>
T zmc_residual(const Jet2<T>& j)
{
    const Sym2<T> Pc = first_form(j).P.cofactor();
    const Sym2<T> Q = second_form(j);
    return Pc.a * Q.a + T{2} * Pc.b * Q.b + Pc.c * Q.c;
}

template <class T = double>
struct GraphForms {
    T A{0};
    T B{0};
};

/// A_f and B_f of the graph (x, y, psi(x,y)).
template <class T>
GraphForms<T> graph_af_bf(const GraphJet<T>& g)
{
    const T one{1};
    const T A = (one - g.py * g.py) * g.pxx + T{2} * g.px * g.py * g.pxy + (one - g.px * g.px) * g.pyy;
    const T B = one - g.px * g.px - g.py * g.py;
    return {A, B};
}

/// A_f and B_f of the graph psi = y + phi, given the jet of phi alone.
///
/// Expanding around the light-like plane psi = y removes the cancellation in
/// 1 - psi_y^2, so B_f keeps full relative precision when it is tiny (near a
/// null line it behaves like x^3 or x^4).
template <class T>
GraphForms<T> graph_af_bf_about_null_plane(const GraphJet<T>& phi)
{
    const T one{1};
    const T two{2};
    const T q = two * phi.py + phi.py * phi.py; // psi_y^2 - 1
    const T A = -q * phi.pxx + two * phi.px * (one + phi.py) * phi.pxy + (one - phi.px * phi.px) * phi.pyy;
    const T B = -q - phi.px * phi.px;
    return {A, B};
}

/// Parametric jet of f(x,y) = (x, y, psi(x,y)).
template <class T>
Jet2<T> graph_to_parametric(const GraphJet<T>& g, const T& x, const T& y)
{
    const T zero{0};
    const T one{1};
    return {{x, y, g.psi},
            {one, zero, g.px},
            {zero, one, g.py},
            {zero, zero, g.pxx},
            {zero, zero, g.pxy},
            {zero, zero, g.pyy}};
}

/// Largest Euclidean norm among the derivative vectors of a jet.
template <class T>
double jet_magnitude(const Jet2<T>& j)
{
    return std::max({norm_euclidean(j.fu), norm_euclidean(j.fv), norm_euclidean(j.fuu),
                     norm_euclidean(j.fuv), norm_euclidean(j.fvv)});
}

/// |A_f| relative to the cubed jet magnitude (the residual scale used by
/// every "A_f = 0" check).
inline double scaled_residual(const Jet2<double>& j)
{
    const double m = jet_magnitude(j);
    const double scale = std::max(m * m * m, std::numeric_limits<double>::min());
    return std::abs(zmc_residual(j)) / scale;
}

// ---------------------------------------------------------------------------
// Causal classification

enum class CausalKind { spacelike, timelike, null };

inline const char* to_string(CausalKind k)
{
    switch (k) {
    case CausalKind::spacelike:
        return "spacelike";
    case CausalKind::timelike:
        return "timelike";
    case CausalKind::null:
        return "null";
    }
    return "?";
}

struct CausalVerdict {
    CausalKind kind{CausalKind::null};
    double B_value{0};
    double tol{0};
};

inline constexpr double default_null_tol = 1e-10;

inline CausalVerdict classify(double B, double tol = default_null_tol)
{
    if (!(tol >= 0)) {
        throw std::invalid_argument("classification tolerance must be non-negative");
    }
    CausalKind kind = CausalKind::null;
    if (B > tol) {
        kind = CausalKind::spacelike;
    } else if (B < -tol) {
        kind = CausalKind::timelike;
    }
    return {kind, B, tol};
}

// ---------------------------------------------------------------------------
// Finite-difference jets

/// Steps balancing truncation against roundoff: cbrt(eps) for first
/// derivatives, eps^(1/4) for second, both multiplied by the caller's scale.
inline double fd_step_first(double scale = 1.0)
{
    return std::cbrt(std::numeric_limits<double>::epsilon()) * scale;
}

inline double fd_step_second(double scale = 1.0)
{
    return std::pow(std::numeric_limits<double>::epsilon(), 0.25) * scale;
}

using ParamMap = std::function<Vec3M<double>(double, double)>;
using HeightMap = std::function<double(double, double)>;

inline Jet2<double> fd_parametric_jet(const ParamMap& f, double u, double v, double scale = 1.0)
{
    const double h1 = fd_step_first(scale);
    const double h2 = fd_step_second(scale);
    Jet2<double> j;
    j.f = f(u, v);
    j.fu = (1.0 / (2 * h1)) * (f(u + h1, v) - f(u - h1, v));
    j.fv = (1.0 / (2 * h1)) * (f(u, v + h1) - f(u, v - h1));
    const double ih2 = 1.0 / (h2 * h2);
    j.fuu = ih2 * (f(u + h2, v) - 2.0 * j.f + f(u - h2, v));
    j.fvv = ih2 * (f(u, v + h2) - 2.0 * j.f + f(u, v - h2));
    j.fuv = (0.25 * ih2) * ((f(u + h2, v + h2) - f(u + h2, v - h2)) - (f(u - h2, v + h2) - f(u - h2, v - h2)));
    return j;
}

inline GraphJet<double> fd_graph_jet(const HeightMap& psi, double x, double y, double scale = 1.0)
{
    const double h1 = fd_step_first(scale);
    const double h2 = fd_step_second(scale);
    const double ih2 = 1.0 / (h2 * h2);
    GraphJet<double> g;
    g.psi = psi(x, y);
    g.px = (psi(x + h1, y) - psi(x - h1, y)) / (2 * h1);
    g.py = (psi(x, y + h1) - psi(x, y - h1)) / (2 * h1);
    g.pxx = (psi(x + h2, y) - 2 * g.psi + psi(x - h2, y)) * ih2;
    g.pyy = (psi(x, y + h2) - 2 * g.psi + psi(x, y - h2)) * ih2;
    g.pxy = 0.25 * ih2 * ((psi(x + h2, y + h2) - psi(x + h2, y - h2)) - (psi(x - h2, y + h2) - psi(x - h2, y - h2)));
    return g;
}

// ---------------------------------------------------------------------------
// Null points and null lines

using ScalarField = std::function<double(double, double)>;

/// A null point is degenerate when dB_f vanishes there. The gradient is
/// taken by central differences with step h.
inline bool degenerate_test(const ScalarField& B_field, double u, double v, double h,
                            double null_tol = default_null_tol, double grad_tol = 1e-8)
{
    if (std::abs(B_field(u, v)) > null_tol) {
        throw std::domain_error("not a null point");
    }
    const double gu = (B_field(u + h, v) - B_field(u - h, v)) / (2 * h);
    const double gv = (B_field(u, v + h) - B_field(u, v - h)) / (2 * h);
    return std::hypot(gu, gv) <= grad_tol;
}

struct NullLineVerdict {
    bool is_null_line{false};
    Vec3M<double> direction;   ///< unit (Euclidean) principal direction
    Vec3M<double> centroid;
    double max_distance{0};    ///< largest Euclidean distance to the fitted line
    double lorentz_square{0};  ///< direction . direction
};

/// Fits a line through the points (principal axis of the centred cloud) and
/// accepts it when every point is within tol and the direction is light-like.
inline NullLineVerdict null_line_check(std::span<const Vec3M<double>> points, double tol)
{
    if (points.size() < 3) {
        throw std::invalid_argument("null_line_check needs at least 3 points");
    }
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& p : points) {
        mean += Eigen::Vector3d{p.x, p.y, p.t};
    }
    mean /= static_cast<double>(points.size());

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    double spread = 0;
    for (const auto& p : points) {
        const Eigen::Vector3d d = Eigen::Vector3d{p.x, p.y, p.t} - mean;
        cov += d * d.transpose();
        spread = std::max(spread, d.norm());
    }
    if (spread == 0) {
        throw std::invalid_argument("null_line_check: all points coincide");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    Eigen::Vector3d dir = eig.eigenvectors().col(2).normalized();
    // Fix the orientation so the verdict is deterministic.
    if (dir(2) < 0 || (dir(2) == 0 && dir(1) < 0)) {
        dir = -dir;
    }

    double worst = 0;
    for (const auto& p : points) {
        const Eigen::Vector3d d = Eigen::Vector3d{p.x, p.y, p.t} - mean;
        worst = std::max(worst, (d - d.dot(dir) * dir).norm());
    }

    NullLineVerdict out;
    out.direction = {dir(0), dir(1), dir(2)};
    out.centroid = {mean(0), mean(1), mean(2)};
    out.max_distance = worst;
    out.lorentz_square = dot(out.direction, out.direction);
    out.is_null_line = worst <= tol && std::abs(out.lorentz_square) <= tol;
    return out;
}

} // namespace zmc
