#pragma once

// Convergence bookkeeping for the beta_3 = 0 series:
//
//   M_delta  = 3 max{ 144 tau |c| delta^(3/2), (192 c^2 tau)^(1/4) }
//   C_delta  = sqrt(delta) M_delta,   theta_0 = 3|c| / (sqrt(delta) M_delta^3)
//   V_delta  = (-1/C_delta, 1/C_delta) x (-delta, delta),   U = union_{delta >= 1} V_delta
//
// tau is any upper bound of g(t) = t * int_t^{1-t} du / (u^2 (1-u)^2) on (0, 1/2).

#include "zmc/poly.hpp"
#include "zmc/rational.hpp"
#include "zmc/series.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace zmc {

namespace detail {

inline double round_up(double x, int ulps = 2)
{
    for (int i = 0; i < ulps; ++i) {
        x = std::nextafter(x, std::numeric_limits<double>::infinity());
    }
    return x;
}

inline double round_down(double x, int ulps = 2)
{
    for (int i = 0; i < ulps && x > 0; ++i) {
        x = std::nextafter(x, 0.0);
    }
    return x;
}

/// Smallest double >= |r|.
inline double abs_upper(const Rational& r)
{
    const Rational a = abs(r);
    double d = to_double(a);
    if (Rational{d} < a) {
        d = std::nextafter(d, std::numeric_limits<double>::infinity());
    }
    return d;
}

} // namespace detail

/// g(t) = t * int_t^{1-t} du / (u^2 (1-u)^2) in closed form, using
/// 1/(u^2 (1-u)^2) = 1/u^2 + 2/u + 2/(1-u) + 1/(1-u)^2.
inline double tau_function(double t)
{
    return 2.0 - 2.0 * t / (1.0 - t) + 4.0 * t * std::log((1.0 - t) / t);
}

struct TauConstant {
    double tau{0};       ///< admissible constant: sharp supremum rounded up to 4 decimals
    double tau_sharp{0}; ///< sup of g on (0, 1/2)
    double t_star{0};    ///< maximiser
};

inline TauConstant tau_constant()
{
    const auto neg = [](double t) { return -tau_function(t); };
    const auto [t, fmin] = boost::math::tools::brent_find_minima(neg, 1e-6, 0.5 - 1e-9, std::numeric_limits<double>::digits);
    TauConstant out;
    out.t_star = t;
    out.tau_sharp = -fmin;
    out.tau = std::ceil(out.tau_sharp * 1e4) / 1e4;
    if (out.tau < out.tau_sharp) {
        out.tau = detail::round_up(out.tau_sharp);
    }
    return out;
}

struct ConvergenceCert {
    Rational c;
    double delta{1};
    double tau{0};
    double M{0};
    double C_delta{0};
    double theta0{0};
    double half_width{0}; ///< 1 / C_delta

    bool in_rect(double x, double y) const { return std::abs(x) < half_width && std::abs(y) < delta; }
};

/// M_delta for an arbitrary positive delta (no delta >= 1 check); rounded up.
inline double m_delta(double abs_c, double delta, double tau)
{
    const double a = 144.0 * tau * abs_c * std::pow(delta, 1.5);
    const double b = std::pow(192.0 * abs_c * abs_c * tau, 0.25);
    return detail::round_up(3.0 * std::max(a, b), 4);
}

inline ConvergenceCert certificate(const Rational& c, double delta)
{
    if (c == 0) {
        throw std::invalid_argument("certificate: c must be nonzero");
    }
    if (!(delta >= 1)) {
        throw std::invalid_argument("certificate: delta must be at least 1");
    }
    static const TauConstant tc = tau_constant();
    const double ac = std::abs(to_double(c));
    ConvergenceCert cert;
    cert.c = c;
    cert.delta = delta;
    cert.tau = tc.tau;
    cert.M = m_delta(ac, delta, tc.tau);
    cert.C_delta = std::sqrt(delta) * cert.M;
    cert.theta0 = 3.0 * ac / (std::sqrt(delta) * cert.M * cert.M * cert.M);
    cert.half_width = 1.0 / cert.C_delta;
    return cert;
}

inline constexpr double membership_margin = 1e-9;

/// Half-width of U at height y: 1/(sqrt(d) M_d) with d = max(1, |y| + eta).
/// sqrt(d) M_d increases with d, so this is the widest rectangle reaching y.
inline double u_width(const Rational& c, double y)
{
    const double d = std::max(1.0, std::abs(y) + membership_margin);
    return certificate(c, d).half_width;
}

inline bool u_membership(const Rational& c, double x, double y)
{
    return std::abs(x) < u_width(c, y);
}

struct ConvexityWitness {
    double p1[2]{0, 0};
    double p2[2]{0, 0};
    double midpoint[2]{0, 0};
    double width_mid{0};
    bool non_convex{false};
};

/// Two points of U whose midpoint is not in U. y_sign = -1 gives the mirror image.
inline ConvexityWitness convexity_witness(const Rational& c, double y_sign = 1.0)
{
    if (c == 0) {
        throw std::invalid_argument("convexity_witness: c must be nonzero");
    }
    const double s = y_sign < 0 ? -1.0 : 1.0;
    ConvexityWitness w;
    w.p1[0] = 0.999 * u_width(c, 2.0);
    w.p1[1] = 2.0 * s;
    w.p2[0] = 0.999 * u_width(c, 4.0);
    w.p2[1] = 4.0 * s;
    w.midpoint[0] = 0.5 * (w.p1[0] + w.p2[0]);
    w.midpoint[1] = 0.5 * (w.p1[1] + w.p2[1]);
    w.width_mid = u_width(c, w.midpoint[1]);
    w.non_convex = u_membership(c, w.p1[0], w.p1[1]) && u_membership(c, w.p2[0], w.p2[1]) &&
                   !u_membership(c, w.midpoint[0], w.midpoint[1]);
    if (!w.non_convex) {
        throw std::logic_error("convexity_witness: no witness found; U width is not convex in |y|");
    }
    return w;
}

// ---------------------------------------------------------------------------
// Coefficient estimates

struct EstimateRow {
    int l{0};
    std::string inequality; ///< "b-est-1", "b-est-2", "b-est-3" or "ojm"
    double delta{0};
    double worst_y{0};
    double lhs{0};
    double rhs{0};
    bool pass{true};
};

struct EstimateReport {
    std::vector<EstimateRow> rows;
    bool all_pass{true};
};

/// Checks, for every l in 5..N and `samples` equispaced y in [-delta, delta]:
///   |beta_l''| <= |c| |y|^l* M^(l-3)
///   |beta_l'|  <= 3|c| |y|^(l*+1) / (l*+2) M^(l-3)
///   |beta_l|   <= 3|c| |y|^(l*+2) / (l*+2)^2 M^(l-3)  <= theta_0 C_delta^l
/// with l* = (l-1)/2 - 2 and M = M_delta. Left sides are exact and rounded up,
/// right sides rounded down. Each row keeps the sample with the worst ratio.
inline EstimateReport verify_prop32(const GraphSeries& s, double delta, int samples)
{
    if (s.seed().has_beta3()) {
        throw SeriesError("verify_prop32: case i series are unsupported");
    }
    if (samples < 2) {
        throw std::invalid_argument("verify_prop32: need at least 2 samples");
    }
    const ConvergenceCert cert = certificate(s.seed().c, delta);
    const double ac = std::abs(to_double(s.seed().c));
    const long double M = cert.M;

    std::vector<double> ys(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        ys[static_cast<std::size_t>(i)] = i == samples - 1 ? delta : -delta + 2.0 * delta * i / (samples - 1);
    }
    // Midpoint sample of an odd grid should be exactly zero.
    if (samples % 2 == 1) {
        ys[static_cast<std::size_t>(samples / 2)] = 0.0;
    }

    EstimateReport rep;
    for (int l = 5; l <= s.order(); ++l) {
        const RationalPoly& b0 = s.beta(l);
        const RationalPoly b1 = b0.derivative();
        const RationalPoly b2 = b1.derivative();
        const long double ls = 0.5L * (l - 1) - 2.0L;
        const long double Mp = std::pow(M, static_cast<long double>(l - 3));
        const long double chain = static_cast<long double>(cert.theta0) * std::pow(static_cast<long double>(cert.C_delta), l);

        EstimateRow rows[4];
        const char* names[4] = {"b-est-1", "b-est-2", "b-est-3", "ojm"};
        double worst_ratio[4] = {-1, -1, -1, -1};
        for (int i = 0; i < 4; ++i) {
            rows[i].l = l;
            rows[i].inequality = names[i];
            rows[i].delta = delta;
        }
        for (double y : ys) {
            const Rational yq = exact(y);
            const long double ay = std::abs(static_cast<long double>(y));
            const double lhs[3] = {detail::abs_upper(b2.eval(yq)), detail::abs_upper(b1.eval(yq)),
                                   detail::abs_upper(b0.eval(yq))};
            const long double r3 = 3.0L * ac * std::pow(ay, ls + 2) / ((ls + 2) * (ls + 2)) * Mp;
            const double rhs[4] = {
                detail::round_down(static_cast<double>(ac * std::pow(ay, ls) * Mp), 8),
                detail::round_down(static_cast<double>(3.0L * ac * std::pow(ay, ls + 1) / (ls + 2) * Mp), 8),
                detail::round_down(static_cast<double>(r3), 8),
                detail::round_down(static_cast<double>(chain), 8),
            };
            const double lhs_chain = detail::round_up(static_cast<double>(r3), 8);
            for (int i = 0; i < 4; ++i) {
                const double a = i < 3 ? lhs[i] : lhs_chain;
                const double b = rhs[i];
                const bool ok = a <= b;
                const double ratio = b > 0 ? a / b : (a > 0 ? std::numeric_limits<double>::infinity() : 0.0);
                if (ratio > worst_ratio[i] || (!ok && rows[i].pass)) {
                    worst_ratio[i] = ratio;
                    rows[i].worst_y = y;
                    rows[i].lhs = a;
                    rows[i].rhs = b;
                }
                rows[i].pass = rows[i].pass && ok;
            }
        }
        for (auto& r : rows) {
            rep.all_pass = rep.all_pass && r.pass;
            rep.rows.push_back(std::move(r));
        }
    }
    return rep;
}

} // namespace zmc
