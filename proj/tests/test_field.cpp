#include "schauder/builtin.hpp"
#include "schauder/field.hpp"
#include "schauder/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

using namespace schauder;

namespace {

GridSpec line_grid(int nx, int nt = 2) { return GridSpec(Box::make(1, -1.0, 1.0, -1.0, 0.0), nx, nt); }

}  // namespace

TEST(Sample, ConstantIsConstantEverywhere)
{
    const Field f = sample(constant_fn(1, 1.0), line_grid(7, 4));
    for (double v : f.values()) EXPECT_EQ(v, 1.0);
}

TEST(Sample, IdentityOnThreeNodes)
{
    const Field f = sample(affine_fn(1, 0.0, {1.0}), line_grid(3));
    const auto& g = f.spec();
    for (int it = 0; it < g.nt; ++it) {
        for (int ix = 0; ix < 3; ++ix) {
            GridSpec::Index idx;
            idx.ix[0] = ix;
            idx.it = it;
            EXPECT_DOUBLE_EQ(f.value(g.flatten(idx)), -1.0 + ix);
        }
    }
}

TEST(Sample, SquareRootCuspOnFiveNodes)
{
    const Field f = sample(spatial_cusp(1, 0.5), line_grid(5, 2));
    const double expect[5] = {1.0, std::sqrt(0.5), 0.0, std::sqrt(0.5), 1.0};
    for (int ix = 0; ix < 5; ++ix) EXPECT_NEAR(f.value(static_cast<std::size_t>(ix)), expect[ix], 1e-15);
}

TEST(Evaluate, NodesAreExactAndMidpointsAverage)
{
    const Field f = sample(affine_fn(1, 0.0, {1.0}), line_grid(5, 3));
    for (std::size_t i = 0; i < f.spec().node_count(); ++i) {
        EXPECT_EQ(f.evaluate(f.spec().node(i)), f.value(i));
    }
    EXPECT_NEAR(f.evaluate(SpaceTimePoint({0.25}, -0.3)), 0.25, 1e-15);
    const Field c = sample(constant_fn(1, 2.5), line_grid(4, 4));
    EXPECT_NEAR(c.evaluate(SpaceTimePoint({0.123}, -0.77)), 2.5, 1e-15);
}

TEST(Evaluate, OutsideBoundsThrows)
{
    const Field f = sample(constant_fn(1, 1.0), line_grid(3));
    EXPECT_THROW(f.evaluate(SpaceTimePoint({1.5}, -0.5)), OutOfDomain);
    EXPECT_THROW(f.evaluate(SpaceTimePoint({0.0, 0.0}, -0.5)), InvalidArgument);
}

TEST(Grid, RejectsDegenerateSpecs)
{
    EXPECT_THROW(GridSpec(Box::make(1, -1.0, 1.0, 0.0, 1.0), 1, 3), InvalidArgument);
    EXPECT_THROW(Box::make(1, 1.0, -1.0, 0.0, 1.0), InvalidArgument);
}

TEST(Builtins, Examples)
{
    const AnalyticFn cal = caloric_poly(1);
    EXPECT_EQ(cal(SpaceTimePoint({0.0}, 0.0)), 0.0);
    const SpaceTimePoint X({0.3}, -0.2);
    EXPECT_NEAR(cal.derivative(X, Deriv::along(0, 1)) - cal.derivative(X, Deriv::along(2, 0)), 0.0, 1e-14);
    EXPECT_NEAR(spatial_cusp(1, 0.5)(SpaceTimePoint({0.25}, 0.0)), 0.5, 1e-15);
    EXPECT_NEAR(temporal_cusp(1, 0.5)(SpaceTimePoint({7.0}, -0.0625)), 0.5, 1e-15);
}

TEST(Builtins, EveryNameBuildsInOneAndTwoDimensions)
{
    for (int d : {1, 2}) {
        BuiltinParams bp;
        bp.dim = d;
        bp.pole = SpaceTimePoint::origin(d);
        bp.pole.t = -2.0;
        bp.support = Cylinder{SpaceTimePoint::origin(d), 1.0};
        for (const auto& name : builtin_names()) {
            const AnalyticFn f = builtin_family(name, bp);
            SpaceTimePoint X = SpaceTimePoint::origin(d);
            X.x[0] = 0.1;
            X.t = -0.3;
            EXPECT_TRUE(std::isfinite(f(X))) << name;
        }
    }
    EXPECT_THROW(builtin_family("nope"), InvalidArgument);
}

TEST(Builtins, HeatKernelIsCaloric)
{
    const AnalyticFn k = heat_kernel_shift(SpaceTimePoint({0.1}, -1.0));
    const SpaceTimePoint X({0.4}, -0.3);
    EXPECT_NEAR(k.derivative(X, Deriv::along(0, 1)), k.derivative(X, Deriv::along(2, 0)), 1e-12);
}

TEST(FieldIo, CsvRoundTripIsBitExact)
{
    const Field f = sample(heat_kernel_shift(SpaceTimePoint({0.1}, -2.0)), line_grid(9, 5));
    const auto dir = std::filesystem::temp_directory_path() / "schauder_field_io";
    std::filesystem::remove_all(dir);
    write_field(f, dir / "f.csv");
    const Field g = read_field(dir / "f.csv");
    ASSERT_EQ(g.spec().node_count(), f.spec().node_count());
    for (std::size_t i = 0; i < f.spec().node_count(); ++i) EXPECT_EQ(g.value(i), f.value(i));
    EXPECT_EQ(field_csv(g), field_csv(f));
    std::filesystem::remove_all(dir);
}

TEST(FieldIo, TwoDimensionalRoundTrip)
{
    const GridSpec g(Box::make(2, -1.0, 1.0, -1.0, 0.0), 4, 3);
    const Field f = sample(caloric_poly(2), g);
    const auto dir = std::filesystem::temp_directory_path() / "schauder_field_io2";
    write_field(f, dir / "g.csv");
    const Field h = read_field(dir / "g.csv");
    for (std::size_t i = 0; i < g.node_count(); ++i) EXPECT_EQ(h.value(i), f.value(i));
    std::filesystem::remove_all(dir);
}
