#pragma once

#include "zmc/rational.hpp"

#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace zmc {

/// Univariate polynomial in y with exact rational coefficients.
///
/// Coefficients are stored lowest power first and kept canonical: trailing
/// zeros are always trimmed, so the zero polynomial has no coefficients and
/// two polynomials are equal iff their coefficient vectors are equal.
class RationalPoly {
public:
    RationalPoly() = default;

    explicit RationalPoly(std::vector<Rational> coeffs)
        : coeffs_(std::move(coeffs))
    {
        trim();
    }

    static RationalPoly constant(const Rational& a) { return monomial(a, 0); }

    static RationalPoly monomial(const Rational& a, std::size_t power)
    {
        if (a == 0) {
            return {};
        }
        std::vector<Rational> c(power + 1);
        c[power] = a;
        return RationalPoly{std::move(c)};
    }

    /// Degree of the polynomial; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    /// Coefficient of y^k (zero past the degree).
    Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational{0}; }

    bool is_canonical() const { return coeffs_.empty() || coeffs_.back() != 0; }

    RationalPoly& operator+=(const RationalPoly& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size());
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] += o.coeffs_[i];
        }
        trim();
        return *this;
    }

    RationalPoly& operator-=(const RationalPoly& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size());
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] -= o.coeffs_[i];
        }
        trim();
        return *this;
    }

    RationalPoly& operator*=(const Rational& r)
    {
        if (r == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto& a : coeffs_) {
            a *= r;
        }
        return *this;
    }

    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(RationalPoly a, const Rational& r) { return a *= r; }
    friend RationalPoly operator*(const Rational& r, RationalPoly a) { return a *= r; }
    friend RationalPoly operator-(RationalPoly a)
    {
        for (auto& c : a.coeffs_) {
            c = -c;
        }
        return a;
    }

    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return RationalPoly{std::move(c)};
    }

    RationalPoly& operator*=(const RationalPoly& o) { return *this = *this * o; }

    friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.coeffs_ == b.coeffs_; }

    RationalPoly derivative() const
    {
        if (coeffs_.size() <= 1) {
            return {};
        }
        std::vector<Rational> c(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) {
            c[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
        }
        return RationalPoly{std::move(c)};
    }

    /// The antiderivative vanishing at y = 0.
    RationalPoly antiderivative_zero() const
    {
        if (is_zero()) {
            return {};
        }
        std::vector<Rational> c(coeffs_.size() + 1);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            c[k + 1] = coeffs_[k] / Rational{static_cast<unsigned long>(k + 1)};
        }
        return RationalPoly{std::move(c)};
    }

    /// Horner evaluation in the scalar type T. Exact for T = Rational; for
    /// floating T the coefficients are first rounded to T.
    template <class T>
    T eval(const T& y) const
    {
        T acc{0};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * y + rational_cast<T>(*it);
        }
        return acc;
    }

    template <class T>
    T operator()(const T& y) const
    {
        return eval(y);
    }

    friend std::ostream& operator<<(std::ostream& os, const RationalPoly& p)
    {
        if (p.is_zero()) {
            return os << "0";
        }
        bool first = true;
        for (std::size_t k = p.coeffs_.size(); k-- > 0;) {
            const Rational& a = p.coeffs_[k];
            if (a == 0) {
                continue;
            }
            if (!first) {
                os << (a > 0 ? " + " : " - ");
            } else if (a < 0) {
                os << "-";
            }
            const Rational mag = abs(a);
            if (mag != 1 || k == 0) {
                os << mag.get_str();
            }
            if (k >= 1) {
                os << "y";
            }
            if (k >= 2) {
                os << "^" << k;
            }
            first = false;
        }
        return os;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0) {
            coeffs_.pop_back();
        }
    }

    std::vector<Rational> coeffs_;
};

enum class PolyOp { add, sub, mul };

/// Binary arithmetic dispatched on an operation tag; the operators above are
/// the usual entry point.
inline RationalPoly arith(const RationalPoly& p, const RationalPoly& q, PolyOp op)
{
    switch (op) {
    case PolyOp::add:
        return p + q;
    case PolyOp::sub:
        return p - q;
    case PolyOp::mul:
        return p * q;
    }
    return {};
}

inline RationalPoly scale(const RationalPoly& p, const Rational& r) { return p * r; }

inline std::string to_string(const RationalPoly& p)
{
    std::ostringstream os;
    os << p;
    return os.str();
}

} // namespace zmc
