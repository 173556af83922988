#include "schauder/builtin.hpp"
#include "schauder/heatball.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace schauder;

namespace {

/// Kernel mass in one dimension: exact y-integral 2R^3/3, then a midpoint rule in s with sigma = c s^2,
/// which removes the sigma^(-1/2) endpoint singularity.
double mass_oracle_1d(double r, int n)
{
    const double c = r * r / (4.0 * std::numbers::pi);
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = (i + 0.5) / n;
        const double sigma = c * s * s;
        const double R = radius(r, sigma, 1);
        m += 2.0 * R * R * R / 3.0 / (sigma * sigma) * 2.0 * c * s;
    }
    return m / n;
}

}  // namespace

TEST(Radius, VanishesAtBothEnds)
{
    const double c = 1.0 / (4.0 * std::numbers::pi);
    EXPECT_LT(radius(1.0, c * (1 - 1e-9), 1), 1e-4);
    EXPECT_LT(radius(1.0, 1e-14, 1), 1e-5);
    EXPECT_GT(radius(1.0, c / std::numbers::e, 1), 0.0);
    EXPECT_THROW(radius(1.0, c, 1), InvalidArgument);
    EXPECT_THROW(radius(1.0, 0.0, 1), InvalidArgument);
}

TEST(Contains, Examples)
{
    const HeatBall b{SpaceTimePoint({0.0}, 0.0), 1.0};
    EXPECT_FALSE(contains(b, b.center));
    EXPECT_FALSE(contains(b, SpaceTimePoint({0.0}, -b.depth())));
    EXPECT_TRUE(contains(b, SpaceTimePoint({0.0}, -1.0 / (8.0 * std::numbers::pi))));
    EXPECT_FALSE(contains(b, SpaceTimePoint({1.0}, -1.0 / (8.0 * std::numbers::pi))));
}

TEST(KernelMass, MatchesDenseOracleAndFourRToTheD)
{
    for (double r : {0.5, 1.0, 2.0}) {
        const double oracle = mass_oracle_1d(r, 200000);
        const auto m = kernel_mass(HeatBall{SpaceTimePoint({0.0}, 0.0), r});
        EXPECT_NEAR(m.value, oracle, 1e-4 * oracle);
        EXPECT_NEAR(m.value, 4.0 * r, 4e-3);
    }
    const auto m2 = kernel_mass(HeatBall{SpaceTimePoint({0.0, 0.0}, 0.0), 1.0});
    EXPECT_NEAR(m2.value, 4.0, 4e-3);
    const auto m3 = kernel_mass(HeatBall{SpaceTimePoint({0.0, 0.0, 0.0}, 0.0), 1.0});
    EXPECT_NEAR(m3.value, 4.0, 4e-3);
}

TEST(MeanValue, ConstantAndCaloric)
{
    const HeatBall b{SpaceTimePoint({0.0}, 0.0), 0.5};
    EXPECT_NEAR(mean_value(constant_fn(1, 1.0), b).value, 1.0, 1e-9);
    EXPECT_NEAR(mean_value(caloric_poly(1), b).value, 0.0, 1e-9);
    const HeatBall b2{SpaceTimePoint({0.3, -0.1}, 0.2), 1.0};
    EXPECT_NEAR(mean_value(caloric_poly(2), b2).value, caloric_poly(2)(b2.center), 1e-8);
    const AnalyticFn k = heat_kernel_shift(SpaceTimePoint({0.1}, -1.0));
    const HeatBall b3{SpaceTimePoint({0.2}, 0.0), 1.0};
    EXPECT_NEAR(mean_value(k, b3).value, k(b3.center), 1e-8);
}

TEST(MeanValue, SubsolutionIsStrictlyAboveCenter)
{
    const HeatBall b{SpaceTimePoint({0.0}, 0.0), 1.0};
    auto sq = [](const SpaceTimePoint& X) { return X.x[0] * X.x[0]; };
    const auto mv = mean_value(sq, b);
    EXPECT_GT(mv.value, 0.0);
    EXPECT_LT(mv.est_error, 1e-6);
}

TEST(MeanValue, NonFiniteIntegrandIsReported)
{
    const HeatBall b{SpaceTimePoint({0.0}, 0.0), 1.0};
    auto bad = [](const SpaceTimePoint& X) { return 1.0 / (X.x[0] * 0.0); };
    EXPECT_THROW(mean_value(bad, b), NonFinite);
}

TEST(MeanValue, UnconvergedQuadratureIsReported)
{
    const HeatBall b{SpaceTimePoint({0.0}, 0.0), 1.0};
    QuadSpec q;
    q.n_slices = 4;
    q.n_radial = 4;
    q.n_angular = 4;
    q.tolerance = 1e-14;
    auto wiggly = [](const SpaceTimePoint& X) { return std::cos(40.0 * X.x[0]) * std::exp(X.t); };
    EXPECT_THROW(mean_value(wiggly, b, q), NonConvergent);
    q.n_slices = 2;
    EXPECT_THROW(mean_value(wiggly, b, q), InvalidArgument);
}

TEST(ScalingIntegral, ClosedFormAndExponent)
{
    // (1/r^d) (2d)^(a/2) c^g Gamma(a/2+1) / g^(a/2+1) with c = r^2/(4 pi), g = a/2 - b + 1.
    auto exact = [](int a, int b, double r, int d) {
        const double g = 0.5 * a - b + 1.0;
        const double c = r * r / (4.0 * std::numbers::pi);
        return std::pow(2.0 * d, 0.5 * a) * std::pow(c, g) * std::tgamma(0.5 * a + 1.0) / std::pow(g, 0.5 * a + 1.0) /
               std::pow(r, d);
    };
    for (auto [a, b, d] : {std::tuple{4, 2, 1}, std::tuple{3, 2, 1}, std::tuple{0, 0, 1}, std::tuple{3, 2, 2}}) {
        for (double r : {0.5, 1.0}) {
            EXPECT_NEAR(scaling_integral(a, b, r, d).value, exact(a, b, r, d), 1e-8 * exact(a, b, r, d));
        }
    }
    const double s1 = scaling_integral(4, 2, 1.0, 1).value;
    const double s2 = scaling_integral(4, 2, 2.0, 1).value;
    EXPECT_NEAR(std::log2(s2 / s1), 1.0, 1e-9);
}

TEST(ScalingIntegral, DivergentParameters)
{
    EXPECT_THROW(scaling_integral(2, 2, 1.0, 1), Divergent);
    EXPECT_THROW(scaling_integral(0, 3, 1.0, 1), Divergent);
    EXPECT_THROW(scaling_integral(-1, 0, 1.0, 1), InvalidArgument);
}
