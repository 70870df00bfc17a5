// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include "support.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

using namespace zmc;
using zmc::testing::fd_af_wide;
using zmc::testing::log_space;
using zmc::testing::loglog_slope;

namespace {

struct Outcome {
    bool pass{false};
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

RationalPoly mono(const Rational& a, std::size_t k) { return RationalPoly::monomial(a, k); }

// 1. Exact low-order coefficients.
Outcome ac1()
{
    const auto t0 = Clock::now();
    const GraphSeries s = recurse_paper(SeedCondition::null_axis(1), 8);
    const GraphSeries g = recurse_generic(SeedCondition::null_axis(1), 8);
    const double dt = seconds_since(t0);
    const bool listed = s.beta(4) == mono(4, 1) && s.beta(5).is_zero() && s.beta(6) == mono(-8, 3) && s.beta(7).is_zero();
    const bool b8 = s.beta(8) == g.beta(8);
    const bool tabulated = s.beta(8) == mono(-32, 5);
    std::ostringstream d;
    d << "beta_4..7 " << (listed ? "exact" : "MISMATCH") << "; beta_8 = " << s.beta(8) << " (generic oracle "
      << (b8 ? "agrees" : "DISAGREES") << "; tabulated -32c^3y^5 " << (tabulated ? "agrees" : "has the opposite sign")
      << "); " << dt << " s";
    return {listed && b8 && dt < 1.0, d.str()};
}

// 2. Oracle equivalence.
Outcome ac2()
{
    const auto t0 = Clock::now();
    bool all = true;
    for (const Rational& c : {Rational{1}, Rational{-1}, Rational{3, 2}}) {
        const SeedCondition seed = SeedCondition::null_axis(c);
        all = all && recurse_paper(seed, 16).betas() == recurse_generic(seed, 16).betas();
    }
    const double dt = seconds_since(t0);
    std::ostringstream d;
    d << "c in {1, -1, 3/2}, N = 16: " << (all ? "identical" : "DIFFERENT") << " tables; " << dt << " s";
    return {all && dt < 30.0, d.str()};
}

// 3. Truncation residual order.
Outcome ac3()
{
    const GraphSeries s = recurse_paper(SeedCondition::null_axis(-1), 12);
    const auto mags = log_space(1e-3, 5e-2, 10);
    double worst = std::numeric_limits<double>::infinity();
    bool zero_on_x_axis = true;
    for (int j = -4; j <= 4; ++j) {
        const double y = 0.25 * j;
        for (double sign : {1.0, -1.0}) {
            std::vector<double> xs, as;
            for (double m : mags) {
                const double a = fd_af_wide(s, sign * m, y).convert_to<double>();
                xs.push_back(sign * m);
                as.push_back(a);
            }
            if (j == 0) {
                // A_f is odd in y, so it vanishes on y = 0 to every order.
                for (double a : as) {
                    zero_on_x_axis = zero_on_x_axis && std::abs(a) < 1e-150;
                }
                continue;
            }
            worst = std::min(worst, loglog_slope(xs, as));
        }
    }
    std::ostringstream d;
    d << "N = 12, c = -1, 250-digit central differences: min log-log slope " << worst << " over y in [-1, 1]"
      << (zero_on_x_axis ? ", A_f = 0 on y = 0" : ", A_f NONZERO on y = 0");
    return {worst >= 10.0 && zero_on_x_axis, d.str()};
}

// 4. Causal signatures.
Outcome ac4()
{
    bool ratio_ok = true;
    double worst_rel = 0;
    for (const Rational& c : {Rational{-1}, Rational{-2}, Rational{1}, Rational{2}}) {
        const GraphSeries s = recurse_paper(SeedCondition::null_axis(c), 16);
        for (double x : {1e-2, -1e-2}) {
            const double B = graph_af_bf_about_null_plane(s.deviation_jet(x, 0.0)).B;
            const double target = -2 * to_double(c);
            const double rel = std::abs(B / std::pow(x, 4) - target) / std::abs(target);
            worst_rel = std::max(worst_rel, rel);
            ratio_ok = ratio_ok && rel <= 0.05;
        }
    }

    const auto scan = [](const GraphSeries& s, std::size_t& sp, std::size_t& tl, std::size_t& off_axis_null) {
        const double w = certificate(s.seed().c, 1).half_width * 0.999;
        const Grid2 g{{-w, w, 41}, {-0.999, 0.999, 41}};
        for (int i = 0; i < g.x.n; ++i) {
            for (int j = 0; j < g.y.n; ++j) {
                const double x = g.x.at(i);
                const double B = graph_af_bf_about_null_plane(s.deviation_jet(x, g.y.at(j))).B;
                const CausalKind k = classify(B, 1e-30).kind;
                sp += k == CausalKind::spacelike;
                tl += k == CausalKind::timelike;
                // The middle column is the null axis, up to rounding in the grid.
                off_axis_null += k == CausalKind::null && 2 * i != g.x.n - 1;
            }
        }
    };
    std::size_t sp = 0, tl = 0, nn = 0;
    scan(recurse_generic(SeedCondition::make(SeriesCase::mixed_i, 1), 16), sp, tl, nn);
    const bool mixed_ok = sp >= 5 && tl >= 5;
    std::ostringstream d;
    d << "B(x,0)/x^4 within " << 100 * worst_rel << "% of -2c; case i: " << sp << " space-like, " << tl << " time-like";

    bool exclusive = true;
    for (const Rational& c : {Rational{-1}, Rational{1}}) {
        sp = tl = nn = 0;
        scan(recurse_paper(SeedCondition::null_axis(c), 16), sp, tl, nn);
        const bool ok = c < 0 ? (tl == 0 && sp == 41 * 40) : (sp == 0 && tl == 41 * 40);
        exclusive = exclusive && ok && nn == 0;
        d << "; case " << (c < 0 ? "ii" : "iii") << ": " << sp << "/" << tl << " off-axis";
    }
    return {ratio_ok && mixed_ok && exclusive, d.str()};
}

// 5. Null-line containment.
Outcome ac5()
{
    bool exact_ok = true;
    std::size_t checked = 0;
    std::vector<Vec3M<double>> image;
    for (const auto& seed : {SeedCondition::make(SeriesCase::mixed_i, 1), SeedCondition::make(SeriesCase::mixed_i, Rational(7, 3)),
                             SeedCondition::null_axis(-1), SeedCondition::null_axis(Rational(-1, 2)),
                             SeedCondition::null_axis(1), SeedCondition::null_axis(Rational(3, 2))}) {
        const GraphSeries s = seed.has_beta3() ? recurse_generic(seed, 16) : recurse_paper(seed, 16);
        for (int i = -100; i <= 100; ++i) {
            const Rational y = Rational{10000 * i} + make_rational(i, 7);
            const Rational psi = s.value(Rational{0}, y);
            exact_ok = exact_ok && psi == y;
            ++checked;
            if (image.size() < 201) {
                image.push_back({0.0, to_double(y), to_double(psi)});
            }
        }
    }
    const NullLineVerdict v = null_line_check(image, 1e-9 * 1e6);
    const double align = std::abs(v.direction.y - std::sqrt(0.5)) + std::abs(v.direction.t - std::sqrt(0.5)) +
                         std::abs(v.direction.x);
    std::ostringstream d;
    d << checked << " exact evaluations psi(0,y) == y for |y| <= 1e6 " << (exact_ok ? "hold" : "FAIL")
      << "; null line fit " << (v.is_null_line ? "accepted" : "REJECTED") << ", direction error " << align;
    return {exact_ok && v.is_null_line && align <= 1e-12, d.str()};
}

// 6. tau and certificates.
Outcome ac6()
{
    const TauConstant tc = tau_constant();
    double worst = 0;
    for (double t : {0.05, 0.1, 0.2, 0.3, 0.45}) {
        const auto f = [](double u) { return 1.0 / (u * u * (1 - u) * (1 - u)); };
        const double q = t * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, t, 1 - t, 15, 1e-14);
        worst = std::max(worst, std::abs(q - tau_function(t)));
    }
    const ConvergenceCert cert = certificate(1, 1);
    bool witness = false;
    try {
        witness = convexity_witness(1).non_convex;
    } catch (const std::logic_error&) {
        witness = false;
    }
    std::ostringstream d;
    d.precision(10);
    d << "tau = " << tc.tau << " (sup " << tc.tau_sharp << " at t = " << tc.t_star << "); quadrature gap " << worst
      << "; M(1,1) = " << cert.M << "; witness " << (witness ? "found" : "MISSING");
    return {std::abs(tc.tau - 2.6911) <= 1e-3 && worst <= 1e-8 && std::abs(cert.M - 1162.6) <= 0.5 && witness, d.str()};
}

// 7. Coefficient estimate sweep.
Outcome ac7()
{
    const auto t0 = Clock::now();
    bool all = true;
    std::size_t rows = 0;
    for (int c : {1, -1}) {
        const GraphSeries s = recurse_paper(SeedCondition::null_axis(c), 16);
        for (double delta : {1.0, 2.0}) {
            const EstimateReport r = verify_prop32(s, delta, 101);
            all = all && r.all_pass;
            rows += r.rows.size();
        }
    }
    const double dt = seconds_since(t0);
    std::ostringstream d;
    d << rows << " (l, inequality, delta, c) rows for l in [5, 16] " << (all ? "all pass" : "FAIL") << "; " << dt << " s";
    return {all && dt < 60.0, d.str()};
}

// 8. Corpus.
Outcome ac8()
{
    const CorpusReport rep = corpus_verify();
    std::ostringstream d;
    bool ok = rep.all_pass;
    for (const auto& r : rep.rows) {
        if (r.name == "light_cone") {
            ok = ok && r.spacelike == 0 && r.timelike == 0 && r.degenerate_null == r.null_points && r.null_points > 0;
        }
        if (r.name == "elliptic_catenoid") {
            ok = ok && r.timelike == 0 && r.null_points == 41;
        }
        if (r.name == "hyperbolic_catenoid") {
            std::size_t lines = 0;
            for (const auto& nl : r.null_lines) {
                lines += nl.pass;
            }
            ok = ok && lines == 6;
        }
        d << r.name << (r.pass ? " ok" : " FAIL") << " (" << r.max_scaled_residual << "); ";
    }
    return {ok, d.str()};
}

// 9. Bridge identity.
Outcome ac9()
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> d1(-2, 2);
    std::uniform_real_distribution<double> d2(-5, 5);
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
        const GraphJet<double> g{d1(rng), d1(rng), d1(rng), d2(rng), d2(rng), d2(rng)};
        const Jet2<double> j = graph_to_parametric(g, 0.0, 0.0);
        const GraphForms<double> gf = graph_af_bf(g);
        const double bscale = 1 + g.px * g.px + g.py * g.py + 2 * g.px * g.px * g.py * g.py;
        const double ascale = (1 + g.py * g.py) * std::abs(g.pxx) + 2 * std::abs(g.px * g.py * g.pxy) +
                              (1 + g.px * g.px) * std::abs(g.pyy);
        worst = std::max(worst, std::abs(first_form(j).B - gf.B) / (eps * bscale));
        worst = std::max(worst, std::abs(zmc_residual(j) - gf.A) / (eps * ascale));
    }
    std::ostringstream d;
    d << "10^4 random jets: worst gap " << worst << " ulps of the term scale";
    return {worst <= 4.0, d.str()};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 exact coefficients", ac1}, {"AC2 oracle equivalence", ac2}, {"AC3 truncation order", ac3},
        {"AC4 causal signatures", ac4},  {"AC5 null line", ac5},          {"AC6 tau and certificate", ac6},
        {"AC7 estimate sweep", ac7},     {"AC8 corpus", ac8},             {"AC9 bridge identity", ac9},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& ex) {
            o = {false, std::string{"exception: "} + ex.what()};
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    std::cout << (failures == 0 ? "acceptance: all criteria pass" : "acceptance: " + std::to_string(failures) + " failing")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
