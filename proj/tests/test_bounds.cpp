#include "zmc/zmc.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

using namespace zmc;

namespace {

/// g(t) = t * integral_t^{1-t} du / (u^2 (1-u)^2), by adaptive quadrature.
double tau_by_quadrature(double t)
{
    const auto f = [](double u) { return 1.0 / (u * u * (1 - u) * (1 - u)); };
    double err = 0;
    const double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, t, 1 - t, 15, 1e-14, &err);
    return t * I;
}

} // namespace

TEST(Tau, ClosedFormMatchesQuadrature)
{
    for (double t : {0.05, 0.1, 0.2, 0.3, 0.45}) {
        EXPECT_NEAR(tau_function(t), tau_by_quadrature(t), 1e-8) << t;
    }
}

TEST(Tau, EndpointBehaviour)
{
    EXPECT_NEAR(tau_function(0.5), 0.0, 1e-15);
    EXPECT_NEAR(tau_function(1e-6), 2.0, 1e-4);
}

TEST(Tau, SupremumAndRounding)
{
    const TauConstant tc = tau_constant();
    EXPECT_NEAR(tc.tau_sharp, 2.6911, 1e-3);
    EXPECT_NEAR(tc.t_star, 0.1378, 1e-3);
    EXPECT_GE(tc.tau, tc.tau_sharp);
    EXPECT_EQ(tc.tau, 2.6911);
    for (int i = 1; i < 5000; ++i) {
        const double t = 0.5 * i / 5000;
        EXPECT_LE(tau_function(t), tc.tau);
    }
}

TEST(Certificate, PlugInValues)
{
    const ConvergenceCert a = certificate(1, 1);
    EXPECT_NEAR(a.M, 3 * 144 * 2.6911, 1e-9);
    EXPECT_NEAR(a.M, 1162.6, 0.5);
    EXPECT_EQ(a.C_delta, a.M);
    EXPECT_NEAR(a.half_width, 8.60e-4, 1e-6);
    EXPECT_NEAR(a.theta0, 3 / (a.M * a.M * a.M), 1e-20);
    EXPECT_TRUE(a.in_rect(8e-4, 0.99));
    EXPECT_FALSE(a.in_rect(9e-4, 0));
    EXPECT_FALSE(a.in_rect(0, 1));

    const ConvergenceCert b = certificate(1, 4);
    EXPECT_NEAR(b.M, 3 * 144 * 2.6911 * 8, 1e-8);
    EXPECT_NEAR(b.M, 9300.44, 0.01);
    EXPECT_DOUBLE_EQ(b.C_delta, 2 * b.M);
}

TEST(Certificate, FourthRootBranchForTinyC)
{
    const Rational c{1, 1000000};
    const double first = 144 * 2.6911 * 1e-6;
    const double second = std::pow(192 * 1e-12 * 2.6911, 0.25);
    EXPECT_LT(first, second);
    EXPECT_NEAR(second, 0.004768, 1e-6);
    EXPECT_NEAR(certificate(c, 1).M, 3 * second, 1e-12);
}

TEST(Certificate, Errors)
{
    EXPECT_THROW(certificate(0, 1), std::invalid_argument);
    EXPECT_THROW(certificate(1, 0.5), std::invalid_argument);
    EXPECT_NO_THROW(certificate(-1, 1));
}

TEST(Certificate, MonotoneInDeltaAndC)
{
    double prev_M = 0, prev_C = 0;
    for (double d = 1; d <= 50; d += 0.25) {
        const ConvergenceCert k = certificate(Rational(3, 2), d);
        EXPECT_GE(k.M, prev_M);
        EXPECT_GT(k.C_delta, prev_C);
        prev_M = k.M;
        prev_C = k.C_delta;
    }
    double prev = 0;
    for (const Rational& c : {Rational(1, 1000000), Rational(1, 1000), Rational(1, 2), Rational(-1), Rational(7)}) {
        const double M = certificate(c, 2).M;
        EXPECT_GE(M, prev);
        prev = M;
    }
}

TEST(Membership, Examples)
{
    EXPECT_TRUE(u_membership(1, 0, 1e6));
    EXPECT_FALSE(u_membership(1, 2 * certificate(1, 1).half_width, 0));
    EXPECT_NEAR(u_width(1, 4) / u_width(1, 2), 0.25, 0.0025);
    EXPECT_LT(u_width(1, 4), u_width(1, 2));
    EXPECT_LT(u_width(1, 2), u_width(1, 1));
    EXPECT_EQ(u_width(1, 0.5), certificate(1, 1).half_width);
}

TEST(Membership, StarShapedAndSymmetric)
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> dy(-20, 20);
    std::uniform_real_distribution<double> dx(-1e-3, 1e-3);
    std::uniform_real_distribution<double> shrink(0, 1);
    for (int i = 0; i < 2000; ++i) {
        const double x = dx(rng) * std::exp(-std::abs(dy(rng)) / 4);
        const double y = dy(rng);
        if (u_membership(1, x, y)) {
            EXPECT_TRUE(u_membership(1, x * shrink(rng), y));
            EXPECT_TRUE(u_membership(1, -x, y));
            EXPECT_TRUE(u_membership(1, x, -y));
        }
    }
}

TEST(Convexity, WitnessForPositiveAndNegativeY)
{
    for (double sign : {1.0, -1.0}) {
        const ConvexityWitness w = convexity_witness(1, sign);
        EXPECT_TRUE(w.non_convex);
        EXPECT_TRUE(u_membership(1, w.p1[0], w.p1[1]));
        EXPECT_TRUE(u_membership(1, w.p2[0], w.p2[1]));
        EXPECT_FALSE(u_membership(1, w.midpoint[0], w.midpoint[1]));
        EXPECT_EQ(w.midpoint[1], 3 * sign);
        EXPECT_GT(w.midpoint[0], w.width_mid);
    }
}

TEST(Convexity, VerdictSurvivesScalingC)
{
    const ConvexityWitness a = convexity_witness(1);
    const ConvexityWitness b = convexity_witness(4);
    EXPECT_TRUE(b.non_convex);
    EXPECT_NEAR(b.p1[0] / a.p1[0], 0.25, 1e-12);
    EXPECT_NEAR(b.p2[0] / a.p2[0], 0.25, 1e-12);
    EXPECT_THROW(convexity_witness(0), std::invalid_argument);
}

TEST(Estimates, TrivialAndPlugInRows)
{
    const GraphSeries s = recurse_paper(SeedCondition::null_axis(1), 16);
    const EstimateReport r = verify_prop32(s, 1, 101);
    ASSERT_TRUE(r.all_pass);
    for (const auto& row : r.rows) {
        // beta_5 vanishes, so its own estimates hold trivially.
        if (row.l == 5 && row.inequality != "ojm") {
            EXPECT_EQ(row.lhs, 0);
        }
    }
    // l = 6 at y = 1: |beta_6(1)| = 8 against 3 |c| / (l*+2)^2 M^3, l* = 1/2.
    const double M = certificate(1, 1).M;
    EXPECT_NEAR(3.0 / 6.25 * M * M * M, 7.54e8, 0.01e8);
    EXPECT_LT(8.0, 3.0 / 6.25 * M * M * M);
}

TEST(Estimates, FullSweep)
{
    for (int c : {1, -1, 2}) {
        for (int N : {12, 16, 20}) {
            const GraphSeries s = recurse_paper(SeedCondition::null_axis(c), N);
            for (double delta : {1.0, 2.0, 4.0}) {
                const EstimateReport r = verify_prop32(s, delta, 101);
                EXPECT_TRUE(r.all_pass) << "c=" << c << " N=" << N << " delta=" << delta;
                EXPECT_EQ(r.rows.size(), static_cast<std::size_t>(4 * (N - 4)));
            }
        }
    }
}

TEST(Estimates, RowsCoverEveryInequality)
{
    const EstimateReport r = verify_prop32(recurse_paper(SeedCondition::null_axis(-1), 8), 2, 11);
    std::set<std::string> names;
    for (const auto& row : r.rows) {
        names.insert(row.inequality);
        EXPECT_EQ(row.delta, 2);
        EXPECT_LE(std::abs(row.worst_y), 2);
    }
    EXPECT_EQ(names, (std::set<std::string>{"b-est-1", "b-est-2", "b-est-3", "ojm"}));
}

TEST(Estimates, SecondDerivativeBoundIsTightNearZeroForHighOrders)
{
    // beta_10'' carries a term linear in y while the bound scales as |y|^(5/2),
    // so the pointwise estimate cannot hold for |y| tiny. The equispaced sweep
    // never samples that region; this documents where it starts.
    const GraphSeries s = recurse_paper(SeedCondition::null_axis(1), 10);
    const double M = certificate(1, 1).M;
    const auto b2 = s.beta(10).derivative().derivative();
    const auto holds = [&](double y) {
        return std::abs(to_double(b2.eval(exact(y)))) <= std::pow(std::abs(y), 2.5) * std::pow(M, 7);
    };
    EXPECT_TRUE(holds(1e-2));
    EXPECT_TRUE(holds(1e-10));
    EXPECT_FALSE(holds(1e-16));
}

TEST(Estimates, RejectsMixedCase)
{
    EXPECT_THROW(verify_prop32(recurse_generic(SeedCondition::make(SeriesCase::mixed_i, 1), 8), 1, 11), SeriesError);
}
