#include "schauder/builtin.hpp"
#include "schauder/holder.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace schauder;

TEST(Pdist, Examples)
{
    EXPECT_DOUBLE_EQ(pdist(SpaceTimePoint({0.0}, 0.0), SpaceTimePoint({0.3}, -0.04)), 0.3);
    EXPECT_EQ(pdist(SpaceTimePoint({0.5}, 0.1), SpaceTimePoint({0.5}, 0.1)), 0.0);
    EXPECT_DOUBLE_EQ(pdist(SpaceTimePoint({0.0}, 0.0), SpaceTimePoint({0.0}, -4.0)), 2.0);
    EXPECT_DOUBLE_EQ(pdist(SpaceTimePoint({0.0, 0.0}, 0.0), SpaceTimePoint({0.3, 0.4}, 0.0)), 0.5);
    EXPECT_THROW(pdist(SpaceTimePoint({0.0}, 0.0), SpaceTimePoint({0.0, 0.0}, 0.0)), InvalidArgument);
}

TEST(Seminorm, ConstantIsZero)
{
    const Cylinder Q{SpaceTimePoint({0.0}, 0.0), 1.0};
    EXPECT_EQ(holder_seminorm(constant_fn(1, 4.0), 0.5, Q, 33, 33).seminorm, 0.0);
}

TEST(Seminorm, CuspsApproachOne)
{
    const Cylinder Q{SpaceTimePoint({0.0}, 0.5), 1.0};
    for (double a : {0.3, 0.5, 0.7}) {
        const auto s = holder_seminorm(spatial_cusp(1, a), a, Q, 65, 9);
        EXPECT_GE(s.seminorm, 0.98);
        EXPECT_LE(s.seminorm, 1.0 + 1e-12);
        const auto t = holder_seminorm(temporal_cusp(1, a), a, Q, 9, 65);
        EXPECT_GE(t.seminorm, 0.98);
        EXPECT_LE(t.seminorm, 1.0 + 1e-12);
    }
}

TEST(Seminorm, WitnessReproducesTheValue)
{
    const Cylinder Q{SpaceTimePoint({0.0}, 0.0), 1.0};
    const AnalyticFn u = caloric_poly(1);
    const auto s = holder_seminorm(u, 0.5, Q, 17, 17);
    EXPECT_GT(s.pairs_scanned, 0u);
    const double d = pdist(s.witness_x, s.witness_y);
    EXPECT_NEAR(std::abs(u(s.witness_x) - u(s.witness_y)) / std::pow(d, 0.5), s.seminorm, 1e-12);
}

TEST(Seminorm, BudgetedScanIsDeterministicAndBelowFull)
{
    const Cylinder Q{SpaceTimePoint({0.0}, 0.0), 1.0};
    const GridSpec g(Box::bounding(Q), 41, 41);
    const Field f = sample(heat_kernel_shift(SpaceTimePoint({0.2}, -1.5)), g);
    const auto full = holder_seminorm(f, 0.5, Q);
    const auto a = holder_seminorm(f, 0.5, Q, 20000);
    const auto b = holder_seminorm(f, 0.5, Q, 20000);
    EXPECT_EQ(a.seminorm, b.seminorm);
    EXPECT_LE(a.seminorm, full.seminorm);
    EXPECT_LT(a.pairs_scanned, full.pairs_scanned);
}

TEST(Seminorm, RejectsBadAlphaAndForeignRegion)
{
    const Cylinder Q{SpaceTimePoint({0.0}, 0.0), 1.0};
    const Field f = sample(constant_fn(1, 1.0), GridSpec(Box::bounding(Q), 5, 5));
    EXPECT_THROW(holder_seminorm(f, 0.0, Q), InvalidArgument);
    EXPECT_THROW(holder_seminorm(f, 1.0, Q), InvalidArgument);
    EXPECT_THROW(holder_seminorm(f, 0.5, Cylinder{SpaceTimePoint({5.0}, 0.0), 1.0}), OutOfDomain);
}

TEST(Osc, Examples)
{
    const Cylinder Q{SpaceTimePoint({0.0}, 0.5), 1.0};
    EXPECT_EQ(osc(constant_fn(1, 2.0), Q, 9, 9), 0.0);
    EXPECT_DOUBLE_EQ(osc(affine_fn(1, 0.0, {1.0}), Q, 9, 9), 2.0);
    EXPECT_DOUBLE_EQ(osc(spatial_cusp(1, 0.5), Q, 9, 9), 1.0);
}

TEST(ParabolicNorm, ZeroAndCaloric)
{
    const Cylinder Q{SpaceTimePoint({0.0}, 0.0), 1.0};
    const auto z = parabolic_norm(constant_fn(1, 0.0), 0.5, Q, 9, 9);
    EXPECT_EQ(z.total(), 0.0);
    // x^2 + 2t on x in [-1,1], t in [-1,0]: sup|u| = 2, sup|u_x| = 2, u_xx = 2, u_t = 2, constant second derivatives.
    const auto c = parabolic_norm(caloric_poly(1), 0.5, Q, 17, 17);
    EXPECT_DOUBLE_EQ(c.sup_u, 2.0);
    EXPECT_DOUBLE_EQ(c.sup_dx, 2.0);
    EXPECT_DOUBLE_EQ(c.sup_dxx, 2.0);
    EXPECT_DOUBLE_EQ(c.sup_dt, 2.0);
    EXPECT_EQ(c.semi_dxx, 0.0);
    EXPECT_EQ(c.semi_dt, 0.0);
}

TEST(Seminorm, TwoDimensionalCusp)
{
    const Cylinder Q{SpaceTimePoint({0.0, 0.0}, 0.5), 1.0};
    const auto s = holder_seminorm(spatial_cusp(2, 0.5), 0.5, Q, 17, 3);
    EXPECT_GE(s.seminorm, 0.9);
    EXPECT_LE(s.seminorm, 1.0 + 1e-12);
}
