#include "schauder/builtin.hpp"
#include "schauder/holder.hpp"
#include "schauder/mollify.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace schauder;

namespace {

const Box kDomain = Box::make(1, -1.0, 1.0, -0.5, 0.5);

GridSpec inner(double tau, int n = 17) { return GridSpec(kDomain.shrink(tau), n, n); }

}  // namespace

TEST(RhoTau, VanishesOutsideScaledSupport)
{
    const auto& p = default_profile();
    EXPECT_EQ(rho_tau(p, 0.1, SpaceTimePoint({0.11}, 0.0)), 0.0);
    EXPECT_EQ(rho_tau(p, 0.1, SpaceTimePoint({0.0}, 0.011)), 0.0);
    EXPECT_GT(rho_tau(p, 0.1, SpaceTimePoint({0.05}, 0.005)), 0.0);
}

TEST(RhoTau, UnitScaleIsTheProfile)
{
    const auto& p = default_profile();
    for (double x : {-0.7, 0.0, 0.3}) {
        for (double t : {-0.5, 0.2}) {
            const SpaceTimePoint X({x}, t);
            EXPECT_DOUBLE_EQ(rho_tau(p, 1.0, X), p(X));
        }
    }
}

TEST(RhoTau, MassIsOneByDenseQuadrature)
{
    const auto& p = default_profile();
    const double tau = 0.1;
    const int n = 400;
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m += rho_tau(p, tau, SpaceTimePoint({-tau + (i + 0.5) * 2 * tau / n}, -tau * tau + (j + 0.5) * 2 * tau * tau / n));
        }
    }
    m *= (2 * tau / n) * (2 * tau * tau / n);
    EXPECT_NEAR(m, 1.0, 1e-8);
}

TEST(Mollify, ConstantIsFixed)
{
    const Field u = mollify(constant_fn(1, 3.0), kDomain, default_profile(), 0.1, inner(0.1));
    for (double v : u.values()) EXPECT_NEAR(v, 3.0, 1e-14);
}

TEST(Mollify, AffineInSpaceIsFixed)
{
    const AnalyticFn a = affine_fn(1, 0.5, {2.0}, -1.0);
    const GridSpec g = inner(0.2);
    const Field u = mollify(a, kDomain, default_profile(), 0.2, g);
    for (std::size_t i = 0; i < g.node_count(); ++i) EXPECT_NEAR(u.value(i), a(g.node(i)), 1e-14);
}

TEST(Mollify, CuspErrorBelowTauToAlpha)
{
    const double tau = 0.1;
    const GridSpec g = inner(tau, 81);
    const AnalyticFn c = spatial_cusp(1, 0.5);
    const Field u = mollify(c, kDomain, default_profile(), tau, g);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.node_count(); ++i) worst = std::max(worst, std::abs(u.value(i) - c(g.node(i))));
    EXPECT_LE(worst, std::sqrt(tau));
    EXPECT_GT(worst, 0.5 * std::sqrt(tau));
}

TEST(Mollify, SampledFieldInput)
{
    const GridSpec g(kDomain, 65, 65);
    const Field f = sample(caloric_poly(1), g);
    const Field u = mollify(f, default_profile(), 0.1);
    EXPECT_LE(u.sup_abs(), f.sup_abs() + 1e-12);
    EXPECT_TRUE(kDomain.shrink(0.1).contains_box(u.spec().bounds));
}

TEST(Mollify, OutputOutsideShrunkDomainIsAnError)
{
    EXPECT_THROW(mollify(constant_fn(1, 1.0), kDomain, default_profile(), 0.1, GridSpec(kDomain, 5, 5)), InvalidArgument);
    EXPECT_THROW(mollify(constant_fn(1, 1.0), kDomain, default_profile(), 1.5, inner(0.1)), Error);
    EXPECT_THROW(mollify(constant_fn(1, 1.0), kDomain, default_profile(), -0.1, inner(0.1)), InvalidArgument);
}

TEST(MollifyDerivative, ConstantHasZeroDerivatives)
{
    for (int i = 0; i <= 3; ++i) {
        for (int j = 0; j <= 2; ++j) {
            if (i == 0 && j == 0) continue;
            const Field d = mollify_derivative(constant_fn(1, 2.0), kDomain, default_profile(), 0.1, i, j, inner(0.1, 5));
            EXPECT_LE(d.sup_abs(), 1e-9) << i << "," << j;
        }
    }
}

TEST(MollifyDerivative, IdentityHasUnitSlope)
{
    const Field d = mollify_derivative(affine_fn(1, 0.0, {1.0}), kDomain, default_profile(), 0.05, 1, 0, inner(0.05, 9));
    for (double v : d.values()) EXPECT_NEAR(v, 1.0, 1e-10);
}

TEST(MollifyDerivative, PolynomialDerivativesAreExact)
{
    // u = x^3 + x t + t^2: d_x^3 = 6, d_x d_t = 1, d_t^2 = 2, d_x^2 = 6x.
    auto f = [](const SpaceTimePoint& X) { return X.x[0] * X.x[0] * X.x[0] + X.x[0] * X.t + X.t * X.t; };
    const auto& p = default_profile();
    const SpaceTimePoint X({0.2}, -0.1);
    EXPECT_NEAR(mollify_at(f, p, 0.1, X, Deriv::along(3, 0)), 6.0, 1e-8);
    EXPECT_NEAR(mollify_at(f, p, 0.1, X, Deriv::along(1, 1)), 1.0, 1e-8);
    EXPECT_NEAR(mollify_at(f, p, 0.1, X, Deriv::along(0, 2)), 2.0, 1e-8);
    EXPECT_NEAR(mollify_at(f, p, 0.1, X, Deriv::along(2, 0)), 1.2, 1e-8);
}

TEST(MollifyDerivative, CuspSlopeScalesLikeTauToAlphaMinusOne)
{
    const AnalyticFn c = spatial_cusp(1, 0.5);
    const auto& p = default_profile();
    // At the scaled point x = tau/2 the derivative equals tau^(alpha-1) times a fixed constant.
    const double a = mollify_at(c, p, 0.1, SpaceTimePoint({0.05}, 0.0), Deriv::along(1, 0));
    const double b = mollify_at(c, p, 0.025, SpaceTimePoint({0.0125}, 0.0), Deriv::along(1, 0));
    EXPECT_NEAR(std::log(b / a) / std::log(0.25), -0.5, 1e-10);
}

TEST(MollifyDerivative, OrdersAboveLimitsAreRejected)
{
    EXPECT_THROW(mollify_derivative(constant_fn(1, 1.0), kDomain, default_profile(), 0.1, 4, 0, inner(0.1, 3)),
                 InvalidArgument);
    EXPECT_THROW(mollify_derivative(constant_fn(1, 1.0), kDomain, default_profile(), 0.1, 0, 3, inner(0.1, 3)),
                 InvalidArgument);
}

TEST(Mollify, TwoDimensionalSmoke)
{
    const Box D = Box::make(2, -1.0, 1.0, -0.5, 0.5);
    const AnalyticFn a = affine_fn(2, 0.0, {1.0, -2.0});
    const GridSpec g(D.shrink(0.2), 3, 3);
    const Field u = mollify(a, D, default_profile(), 0.2, g);
    for (std::size_t i = 0; i < g.node_count(); ++i) EXPECT_NEAR(u.value(i), a(g.node(i)), 1e-13);
}
