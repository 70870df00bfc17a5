#pragma once

// Exact rational scalars backed by GMP, plus the conversions the rest of the
// library needs (parsing, canonical strings, correctly rounded doubles, and
// lifting into arbitrary floating types such as boost::multiprecision).

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace zmc {

using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in lowest terms with a positive denominator. gmpxx's two-argument
/// constructor does not normalise, and its arithmetic assumes normalised input.
inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    Rational r{num, den};
    r.canonicalize();
    return r;
}

/// Parses "p", "p/q" or a plain decimal such as "-1.25" into an exact rational.
inline Rational parse_rational(std::string_view text)
{
    static const std::regex fraction{R"(^\s*([+-]?\d+)(?:/([+-]?\d+))?\s*$)"};
    static const std::regex decimal{R"(^\s*([+-]?)(\d*)\.(\d+)\s*$)"};
    const std::string s{text};
    std::smatch m;
    if (std::regex_match(s, m, fraction)) {
        Integer num{m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str()};
        Integer den{1};
        if (m[2].matched) {
            const std::string d = m[2].str();
            den = Integer{d[0] == '+' ? d.substr(1) : d};
            if (den == 0) {
                throw std::invalid_argument("rational with zero denominator: " + s);
            }
        }
        Rational r{num, den};
        r.canonicalize();
        return r;
    }
    if (std::regex_match(s, m, decimal)) {
        const std::string digits = (m[2].str().empty() ? "0" : m[2].str()) + m[3].str();
        Integer num{digits};
        Integer den{1};
        mpz_ui_pow_ui(den.get_mpz_t(), 10, m[3].str().size());
        Rational r{num, den};
        r.canonicalize();
        return m[1].str() == "-" ? Rational{-r} : r;
    }
    throw std::invalid_argument("not a rational number: " + s);
}

/// Canonical short form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Always "p/q", including "-1/1" and "0/1".
inline std::string to_fraction_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Exact lift of a finite double.
inline Rational exact(double x)
{
    if (!std::isfinite(x)) {
        throw std::invalid_argument("cannot represent a non-finite double as a rational");
    }
    return Rational{x};
}

/// Round-to-nearest conversion (GMP's own get_d truncates toward zero).
inline double to_double(const Rational& r)
{
    const double lo = r.get_d();
    if (!std::isfinite(lo)) {
        return lo;
    }
    const double away = std::nextafter(lo, sgn(r) >= 0 ? std::numeric_limits<double>::infinity()
                                                       : -std::numeric_limits<double>::infinity());
    if (!std::isfinite(away)) {
        return lo;
    }
    const Rational d_lo = abs(r - Rational{lo});
    const Rational d_away = abs(Rational{away} - r);
    return d_away < d_lo ? away : lo;
}

/// Converts an exact rational to scalar type T. For doubles this is correctly
/// rounded; for other floating types it is num/den evaluated in T.
template <class T>
T rational_cast(const Rational& r)
{
    if constexpr (std::is_same_v<T, Rational>) {
        return r;
    } else if constexpr (std::is_same_v<T, double>) {
        return to_double(r);
    } else if constexpr (std::is_floating_point_v<T>) {
        return static_cast<T>(to_double(r));
    } else {
        return T{r.get_num().get_str()} / T{r.get_den().get_str()};
    }
}

} // namespace zmc
