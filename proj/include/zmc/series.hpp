#pragma once

// Truncated power-series solutions of the zero-mean-curvature graph equation
// that contain the null line L = {(0, y, y)}:
//
//   psi(x, y) = y + sum_{k=3}^{N} beta_k(y) x^k / k        (alpha = 0)
//
// Two independent constructions are provided. recurse_paper() uses the
// closed P_k / Q_k / R_k sums (only valid when beta_3 = 0); recurse_generic()
// expands A_f of the truncated series as a power series in x and solves the
// x^k coefficient for beta_k. For beta_3 = 0 seeds both must agree exactly.

#include "zmc/lorentz.hpp"
#include "zmc/poly.hpp"
#include "zmc/rational.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zmc {

/// Raised for seed, order and prerequisite violations. Carries the name of the
/// constraint that failed so front ends can report it verbatim.
class SeriesError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// alpha families: solutions of alpha' + alpha^2 + mu = 0

enum class AlphaTag { plus, zeroI, zeroII, minusI, minusII, minusIII_plus, minusIII_minus };

struct AlphaFamily {
    AlphaTag tag{AlphaTag::zeroI};
    double shift{0};

    int mu() const
    {
        switch (tag) {
        case AlphaTag::plus:
            return 1;
        case AlphaTag::zeroI:
        case AlphaTag::zeroII:
            return 0;
        default:
            return -1;
        }
    }

    static constexpr double pole_tol = 1e-9;

    bool is_pole(double y) const
    {
        const double s = y + shift;
        switch (tag) {
        case AlphaTag::plus: {
            const double k = std::round((s - std::numbers::pi / 2) / std::numbers::pi);
            return std::abs(s - (std::numbers::pi / 2 + k * std::numbers::pi)) < pole_tol;
        }
        case AlphaTag::zeroII:
        case AlphaTag::minusII:
            return std::abs(s) < pole_tol;
        default:
            return false;
        }
    }

    double alpha(double y) const
    {
        const double s = y + shift;
        switch (tag) {
        case AlphaTag::plus:
            return -std::tan(s);
        case AlphaTag::zeroI:
            return 0;
        case AlphaTag::zeroII:
            return 1 / s;
        case AlphaTag::minusI:
            return std::tanh(s);
        case AlphaTag::minusII:
            return 1 / std::tanh(s);
        case AlphaTag::minusIII_plus:
            return 1;
        case AlphaTag::minusIII_minus:
            return -1;
        }
        return 0;
    }

    double dalpha(double y) const
    {
        const double s = y + shift;
        switch (tag) {
        case AlphaTag::plus: {
            const double c = std::cos(s);
            return -1 / (c * c);
        }
        case AlphaTag::zeroII:
            return -1 / (s * s);
        case AlphaTag::minusI: {
            const double c = std::cosh(s);
            return 1 / (c * c);
        }
        case AlphaTag::minusII: {
            const double sh = std::sinh(s);
            return -1 / (sh * sh);
        }
        default:
            return 0;
        }
    }
};

struct AlphaSample {
    double y{0};
    double residual{0};
    std::string error; ///< non-empty when the sample sits on a pole
};

struct AlphaReport {
    double max_residual{0};
    std::size_t errors{0};
    std::vector<AlphaSample> samples;
};

inline AlphaReport alpha_check(const AlphaFamily& a, std::span<const double> ys)
{
    AlphaReport rep;
    for (double y : ys) {
        AlphaSample s{y, 0, {}};
        if (a.is_pole(y)) {
            s.error = "sample lies on a pole of the family";
            ++rep.errors;
        } else {
            const double al = a.alpha(y);
            s.residual = std::abs(a.dalpha(y) + al * al + a.mu());
            rep.max_residual = std::max(rep.max_residual, s.residual);
        }
        rep.samples.push_back(std::move(s));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Seeds

enum class SeriesCase { mixed_i, spacelike_ii, timelike_iii };

inline const char* case_label(SeriesCase k)
{
    switch (k) {
    case SeriesCase::mixed_i:
        return "i";
    case SeriesCase::spacelike_ii:
        return "ii";
    case SeriesCase::timelike_iii:
        return "iii";
    }
    return "?";
}

inline SeriesCase parse_case(const std::string& s)
{
    if (s == "i") {
        return SeriesCase::mixed_i;
    }
    if (s == "ii") {
        return SeriesCase::spacelike_ii;
    }
    if (s == "iii") {
        return SeriesCase::timelike_iii;
    }
    throw SeriesError("unknown case '" + s + "' (expected i, ii or iii)");
}

/// Initial data along the null line.
///   mixed_i:        beta_3 = 3cy,              beta_k(0) = beta_k'(0) = 0 for k >= 4, c > 0
///   spacelike_ii:   beta_3 = 0, beta_4 = 4cy,  beta_k(0) = beta_k'(0) = 0 for k >= 5, c < 0
///   timelike_iii:   as spacelike_ii with c > 0
struct SeedCondition {
    SeriesCase kind{SeriesCase::timelike_iii};
    Rational c{1};

    static SeedCondition make(SeriesCase kind, const Rational& c)
    {
        if (c == 0) {
            throw SeriesError("constraint c != 0 violated");
        }
        if (kind == SeriesCase::spacelike_ii && c > 0) {
            throw SeriesError("constraint c < 0 violated (case ii is space-like only for c < 0)");
        }
        if (kind == SeriesCase::timelike_iii && c < 0) {
            throw SeriesError("constraint c > 0 violated (case iii is time-like only for c > 0)");
        }
        if (kind == SeriesCase::mixed_i && c < 0) {
            throw SeriesError("constraint c > 0 violated (case i)");
        }
        return {kind, c};
    }

    /// beta_3 = 0 seed whose case follows the sign of c.
    static SeedCondition null_axis(const Rational& c)
    {
        return make(c < 0 ? SeriesCase::spacelike_ii : SeriesCase::timelike_iii, c);
    }

    bool has_beta3() const { return kind == SeriesCase::mixed_i; }
    int seed_index() const { return has_beta3() ? 3 : 4; }
    RationalPoly seed_beta() const
    {
        return RationalPoly::monomial(Rational{c * seed_index()}, 1);
    }
};

// ---------------------------------------------------------------------------
// GraphSeries

/// psi(x,y) = y + sum_k beta_k(y) x^k / k, truncated at order N.
/// Immutable once built; evaluation is thread-safe.
class GraphSeries {
public:
    GraphSeries(SeedCondition seed, int order, std::map<int, RationalPoly> betas)
        : seed_(std::move(seed))
        , order_(order)
    {
        if (order_ < 3) {
            throw SeriesError("series order must be at least 3");
        }
        for (int k = 3; k <= order_; ++k) {
            auto it = betas.find(k);
            Term t;
            t.k = k;
            if (it != betas.end()) {
                t.b0 = std::move(it->second);
            }
            t.b1 = t.b0.derivative();
            t.b2 = t.b1.derivative();
            t.d0 = to_doubles(t.b0);
            t.d1 = to_doubles(t.b1);
            t.d2 = to_doubles(t.b2);
            terms_.push_back(std::move(t));
        }
    }

    const SeedCondition& seed() const { return seed_; }
    int order() const { return order_; }
    AlphaFamily alpha() const { return {AlphaTag::zeroI, 0}; }

    /// beta_k for 3 <= k <= order; the zero polynomial outside that range.
    const RationalPoly& beta(int k) const
    {
        static const RationalPoly zero;
        return (k >= 3 && k <= order_) ? terms_[k - 3].b0 : zero;
    }

    std::map<int, RationalPoly> betas() const
    {
        std::map<int, RationalPoly> out;
        for (const auto& t : terms_) {
            out.emplace(t.k, t.b0);
        }
        return out;
    }

    /// Jet of phi = psi - y. Term-wise formal derivatives, Horner in x.
    template <class T>
    GraphJet<T> deviation_jet(const T& x, const T& y) const
    {
        const std::size_t n = static_cast<std::size_t>(order_) + 1;
        std::vector<T> phi(n, T{0}), px(n, T{0}), py(n, T{0}), pxx(n, T{0}), pxy(n, T{0}), pyy(n, T{0});
        for (const auto& t : terms_) {
            if (t.b0.is_zero()) {
                continue;
            }
            const auto k = static_cast<std::size_t>(t.k);
            const T kk = static_cast<T>(t.k);
            const T b = eval_term<T>(t.b0, t.d0, y);
            const T b1 = eval_term<T>(t.b1, t.d1, y);
            const T b2 = eval_term<T>(t.b2, t.d2, y);
            phi[k] = b / kk;
            px[k - 1] = b;
            py[k] = b1 / kk;
            pxx[k - 2] = static_cast<T>(t.k - 1) * b;
            pxy[k - 1] = b1;
            pyy[k] = b2 / kk;
        }
        return {horner(phi, x), horner(px, x), horner(py, x), horner(pxx, x), horner(pxy, x), horner(pyy, x)};
    }

    template <class T>
    GraphJet<T> jet(const T& x, const T& y) const
    {
        GraphJet<T> g = deviation_jet(x, y);
        g.psi = y + g.psi;
        g.py = T{1} + g.py;
        return g;
    }

    template <class T>
    T value(const T& x, const T& y) const
    {
        const std::size_t n = static_cast<std::size_t>(order_) + 1;
        std::vector<T> phi(n, T{0});
        for (const auto& t : terms_) {
            if (!t.b0.is_zero()) {
                phi[static_cast<std::size_t>(t.k)] = eval_term<T>(t.b0, t.d0, y) / static_cast<T>(t.k);
            }
        }
        return y + horner(phi, x);
    }

private:
    struct Term {
        int k{0};
        RationalPoly b0, b1, b2;
        std::vector<double> d0, d1, d2; // double-rounded coefficients
    };

    static std::vector<double> to_doubles(const RationalPoly& p)
    {
        std::vector<double> out;
        out.reserve(p.coeffs().size());
        for (const auto& c : p.coeffs()) {
            out.push_back(to_double(c));
        }
        return out;
    }

    template <class T>
    static T horner(const std::vector<T>& c, const T& x)
    {
        T acc{0};
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            acc = acc * x + *it;
        }
        return acc;
    }

    template <class T>
    static T eval_term(const RationalPoly& exact_poly, const std::vector<double>& rounded, const T& y)
    {
        if constexpr (std::is_same_v<T, double>) {
            return horner(rounded, y);
        } else {
            return exact_poly.eval(y);
        }
    }

    SeedCondition seed_;
    int order_;
    std::vector<Term> terms_;
};

template <class T>
GraphJet<T> psi_jet(const GraphSeries& s, const T& x, const T& y)
{
    return s.jet(x, y);
}

// ---------------------------------------------------------------------------
// Closed-form recursion (beta_3 = 0 seeds)

struct PqrTerms {
    RationalPoly P;
    RationalPoly Q;
    RationalPoly R;
};

/// The P_k, Q_k, R_k sums. Requires beta_m for 4 <= m <= k-2 and beta_3 = 0.
inline PqrTerms pqr_terms(int k, const std::map<int, RationalPoly>& betas)
{
    if (k < 3) {
        throw SeriesError("pqr_terms: k must be at least 3");
    }
    if (auto it = betas.find(3); it != betas.end() && !it->second.is_zero()) {
        throw SeriesError("pqr_terms: beta_3 != 0 (case i seeds need recurse_generic)");
    }
    for (int m = 4; m <= k - 2; ++m) {
        if (!betas.contains(m)) {
            throw SeriesError("pqr_terms: missing prerequisite beta_" + std::to_string(m));
        }
    }
    const auto b = [&](int m) -> const RationalPoly& { return betas.at(m); };

    PqrTerms out;
    if (k >= 6) {
        for (int m = 4; m <= k - 2; ++m) {
            const Rational coef{Rational{2 * (k - 2 * m + 3)} / (k - m + 2)};
            out.P += coef * (b(m) * b(k - m + 2).derivative());
        }
    }
    if (k >= 10) {
        for (int m = 4; m <= k - 6; ++m) {
            for (int n = 4; n <= k - m - 2; ++n) {
                const Rational coef{Rational{3 * n - k + m - 1} / (m * n)};
                out.Q += coef * (b(m).derivative() * b(n).derivative() * b(k - m - n + 2));
            }
        }
    }
    if (k >= 11) {
        for (int m = 4; m <= k - 7; ++m) {
            for (int n = 4; n <= k - m - 3; ++n) {
                const int j = k - m - n + 2;
                out.R += Rational{1, static_cast<unsigned long>(j)} * (b(m) * b(n) * b(j).derivative().derivative());
            }
        }
    }
    return out;
}

/// beta_k'' = -k (P_k + Q_k - R_k), beta_k(0) = beta_k'(0) = 0, for k = 5..N.
inline GraphSeries recurse_paper(const SeedCondition& seed, int N)
{
    if (seed.has_beta3()) {
        throw SeriesError("recurse_paper: case i seed (beta_3 != 0) is not covered by the P/Q/R recursion");
    }
    if (seed.c == 0) {
        throw SeriesError("constraint c != 0 violated");
    }
    if (N < 5) {
        throw SeriesError("recurse_paper: order must be at least 5");
    }
    std::map<int, RationalPoly> betas;
    betas[3] = {};
    betas[4] = seed.seed_beta();
    for (int k = 5; k <= N; ++k) {
        const PqrTerms t = pqr_terms(k, betas);
        const RationalPoly rhs = Rational{-k} * (t.P + t.Q - t.R);
        betas[k] = rhs.antiderivative_zero().antiderivative_zero();
    }
    return GraphSeries{seed, N, std::move(betas)};
}

// ---------------------------------------------------------------------------
// Generic expansion of A_f in powers of x

namespace detail {

/// Truncated power series in x with polynomial-in-y coefficients.
using XSeries = std::vector<RationalPoly>;

inline XSeries mul_trunc(const XSeries& a, const XSeries& b, std::size_t K)
{
    XSeries c(K + 1);
    for (std::size_t i = 0; i < a.size() && i <= K; ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.size() && i + j <= K; ++j) {
            if (!b[j].is_zero()) {
                c[i + j] += a[i] * b[j];
            }
        }
    }
    return c;
}

inline XSeries add(XSeries a, const XSeries& b, const Rational& sb = 1)
{
    if (b.size() > a.size()) {
        a.resize(b.size());
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!b[i].is_zero()) {
            a[i] += sb * b[i];
        }
    }
    return a;
}

inline XSeries scaled(XSeries a, const Rational& s)
{
    for (auto& p : a) {
        p *= s;
    }
    return a;
}

} // namespace detail

/// x-expansion of A_f for psi = y + sum_k beta_k x^k / k, up to x^K.
/// A_f = -(2 phi_y + phi_y^2) phi_xx + 2 phi_x (1 + phi_y) phi_xy + (1 - phi_x^2) phi_yy.
inline std::vector<RationalPoly> af_expansion(const std::map<int, RationalPoly>& betas, int K)
{
    using detail::XSeries;
    const auto n = static_cast<std::size_t>(K) + 1;
    XSeries fx(n), fy(n), fxx(n), fxy(n), fyy(n);
    for (const auto& [k, b] : betas) {
        if (b.is_zero() || k < 1) {
            continue;
        }
        const auto uk = static_cast<std::size_t>(k);
        const RationalPoly b1 = b.derivative();
        const RationalPoly b2 = b1.derivative();
        const Rational inv_k{1, static_cast<unsigned long>(k)};
        if (uk - 1 < n) {
            fx[uk - 1] += b;
            fxy[uk - 1] += b1;
        }
        if (uk < n) {
            fy[uk] += inv_k * b1;
            fyy[uk] += inv_k * b2;
        }
        if (k >= 2 && uk - 2 < n) {
            fxx[uk - 2] += Rational{k - 1} * b;
        }
    }
    const std::size_t Kz = static_cast<std::size_t>(K);
    XSeries one(n);
    one[0] = RationalPoly::constant(1);

    const XSeries q = detail::add(detail::scaled(fy, 2), detail::mul_trunc(fy, fy, Kz));
    XSeries A = detail::scaled(detail::mul_trunc(q, fxx, Kz), -1);
    const XSeries t2 = detail::mul_trunc(detail::mul_trunc(fx, detail::add(one, fy), Kz), fxy, Kz);
    A = detail::add(A, t2, 2);
    const XSeries t3 = detail::mul_trunc(detail::add(one, detail::mul_trunc(fx, fx, Kz), -1), fyy, Kz);
    A = detail::add(A, t3);
    A.resize(n);
    return A;
}

inline constexpr int default_order = 16;
inline constexpr int default_generic_order_cap = 48;

/// Solves the x^k coefficient of A_f = 0 for beta_k, k = seed_index+1 .. N.
/// beta_k enters that coefficient only through beta_k''/k, so each step is a
/// double integration of already known data.
inline GraphSeries recurse_generic(const SeedCondition& seed, int N, int order_cap = default_generic_order_cap)
{
    if (seed.c == 0) {
        throw SeriesError("constraint c != 0 violated");
    }
    if (N < 4) {
        throw SeriesError("recurse_generic: order must be at least 4");
    }
    if (N > order_cap) {
        throw SeriesError("recurse_generic: order " + std::to_string(N) + " exceeds cost cap " +
                          std::to_string(order_cap));
    }
    std::map<int, RationalPoly> betas;
    betas[3] = seed.has_beta3() ? seed.seed_beta() : RationalPoly{};
    if (!seed.has_beta3()) {
        betas[4] = seed.seed_beta();
    }
    // Seeded orders must already satisfy their own coefficient equations.
    for (int k = 0; k <= seed.seed_index(); ++k) {
        if (!af_expansion(betas, k)[static_cast<std::size_t>(k)].is_zero()) {
            throw SeriesError("recurse_generic: seed is inconsistent at order " + std::to_string(k));
        }
    }
    for (int k = seed.seed_index() + 1; k <= N; ++k) {
        const RationalPoly known = af_expansion(betas, k)[static_cast<std::size_t>(k)];
        const RationalPoly second = Rational{-k} * known;
        betas[k] = second.antiderivative_zero().antiderivative_zero();
    }
    return GraphSeries{seed, N, std::move(betas)};
}

// ---------------------------------------------------------------------------
// Homothety psi -> psi(m x, m y) / m

/// p(m y) as a polynomial in y.
inline RationalPoly compose_scale(const RationalPoly& p, const Rational& m)
{
    std::vector<Rational> c = p.coeffs();
    Rational mk{1};
    for (auto& a : c) {
        a *= mk;
        mk *= m;
    }
    return RationalPoly{std::move(c)};
}

/// beta~_k(y) = m^(k-1) beta_k(m y). The result is again a seeded series:
/// c~ = c m^4 for beta_3 = 0 seeds and c~ = c m^3 for case i.
inline GraphSeries homothety(const GraphSeries& s, const Rational& m)
{
    if (m <= 0) {
        throw SeriesError("homothety factor must be positive");
    }
    std::map<int, RationalPoly> betas;
    Rational mk{1}; // m^(k-1)
    for (int k = 1; k <= s.order(); ++k) {
        if (k >= 3) {
            betas[k] = mk * compose_scale(s.beta(k), m);
        }
        mk *= m;
    }
    SeedCondition seed = s.seed();
    Rational f{1};
    for (int i = 0; i < seed.seed_index(); ++i) {
        f *= m;
    }
    seed.c *= f;
    return GraphSeries{seed, s.order(), std::move(betas)};
}

/// Homothety of an arbitrary height function.
template <class F>
auto homothety(F psi, double m)
{
    if (!(m > 0)) {
        throw SeriesError("homothety factor must be positive");
    }
    return [psi = std::move(psi), m](double x, double y) { return psi(m * x, m * y) / m; };
}

} // namespace zmc
