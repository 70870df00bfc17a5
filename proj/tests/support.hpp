#pragma once

// Independent oracles shared by the unit and acceptance suites.

#include "zmc/zmc.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <vector>

namespace zmc::testing {

using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<250>>;

/// A_f of the graph of a series from central differences of psi values only,
/// carried out in 250-digit arithmetic so that x^14-sized residuals resolve.
inline Wide fd_af_wide(const GraphSeries& s, double x, double y)
{
    const Wide h{"1e-40"};
    const Wide X{x};
    const Wide Y{y};
    const auto psi = [&](const Wide& a, const Wide& b) { return s.value(a, b); };
    const Wide c = psi(X, Y);
    const Wide px = (psi(X + h, Y) - psi(X - h, Y)) / (2 * h);
    const Wide py = (psi(X, Y + h) - psi(X, Y - h)) / (2 * h);
    const Wide pxx = (psi(X + h, Y) - 2 * c + psi(X - h, Y)) / (h * h);
    const Wide pyy = (psi(X, Y + h) - 2 * c + psi(X, Y - h)) / (h * h);
    const Wide pxy = (psi(X + h, Y + h) - psi(X + h, Y - h) - psi(X - h, Y + h) + psi(X - h, Y - h)) / (4 * h * h);
    return (1 - py * py) * pxx + 2 * px * py * pxy + (1 - px * px) * pyy;
}

/// A_f of the graph from the exact rational jet of the series, evaluated at a
/// rational point.
inline Rational exact_af(const GraphSeries& s, const Rational& x, const Rational& y)
{
    return graph_af_bf(s.jet(x, y)).A;
}

/// Least-squares slope of log|a| against log|x|.
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& as)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(std::abs(xs[i]));
        const double ly = std::log(std::abs(as[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Log-spaced magnitudes on [lo, hi].
inline std::vector<double> log_space(double lo, double hi, int n)
{
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    }
    return out;
}

} // namespace zmc::testing
