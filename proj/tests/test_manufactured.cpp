#include "schauder/builtin.hpp"
#include "schauder/io.hpp"
#include "schauder/manufactured.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace schauder;

namespace {

const GridSpec kGrid(Box::make(1, -0.8, 0.8, -0.9, -0.1), 9, 9);

AnalyticFn poly1(std::vector<SeparableTerm> terms) { return separable_sum(1, std::move(terms), Support::global, "poly"); }

}  // namespace

TEST(HeatOperator, Examples)
{
    const Field h0 = heat_operator(caloric_poly(1), kGrid);
    for (double v : h0.values()) EXPECT_NEAR(v, 0.0, 1e-13);
    auto one = constant_factor();
    auto sq = make_factor([](auto s) { return s * s; });
    auto lin = make_factor([](auto s) { return s; });
    const Field h1 = heat_operator(poly1({{1.0, {sq}, one}}), kGrid);
    for (double v : h1.values()) EXPECT_NEAR(v, -2.0, 1e-13);
    const Field h2 = heat_operator(poly1({{-1.0, {one}, lin}}), kGrid);
    for (double v : h2.values()) EXPECT_NEAR(v, -1.0, 1e-13);
}

TEST(HeatOperator, MollifiedAgreesOnSmoothInput)
{
    const Box D = Box::make(1, -1.0, 1.0, -1.0, 0.0);
    const GridSpec out(D.shrink(0.1), 5, 5);
    const Field h = heat_operator(caloric_poly(1), D, default_profile(), 0.1, out);
    for (double v : h.values()) EXPECT_NEAR(v, 0.0, 1e-8);
}

TEST(CoordinateNormalize, Examples)
{
    Mat I = Mat::Identity(2, 2);
    EXPECT_LE((coordinate_normalize(I) - I).cwiseAbs().maxCoeff(), 1e-15);
    Mat A(2, 2);
    A << 4.0, 0.0, 0.0, 1.0;
    Mat T = coordinate_normalize(A);
    EXPECT_NEAR(T(0, 0), 0.5, 1e-15);
    EXPECT_NEAR(T(1, 1), 1.0, 1e-15);
    EXPECT_NEAR(T(0, 1), 0.0, 1e-15);
    Mat B(2, 2);
    B << 2.0, 0.5, 0.5, 1.0;
    Mat TB = coordinate_normalize(B);
    EXPECT_LE((TB * B * TB.transpose() - I).cwiseAbs().maxCoeff(), 1e-14);
    Mat N(2, 2);
    N << 1.0, 0.0, 0.0, -1.0;
    EXPECT_THROW(coordinate_normalize(N), PreconditionViolated);
    Mat S(2, 2);
    S << 1.0, 0.2, 0.0, 1.0;
    EXPECT_THROW(coordinate_normalize(S), PreconditionViolated);
}

TEST(SubsolutionLift, CaloricWithZeroBoundIsUnchanged)
{
    const AnalyticFn w = caloric_poly(1);
    const AnalyticFn l = subsolution_lift(w, 0.0, kGrid);
    for (std::size_t i = 0; i < kGrid.node_count(); ++i) EXPECT_EQ(l(kGrid.node(i)), w(kGrid.node(i)));
}

TEST(SubsolutionLift, ExactCancellation)
{
    auto one = constant_factor();
    auto lin = make_factor([](auto s) { return s; });
    const AnalyticFn w = poly1({{3.0, {one}, lin}});  // heat operator 3
    const AnalyticFn l = subsolution_lift(w, 3.0, kGrid);
    const Field h = heat_operator(l, kGrid);
    for (double v : h.values()) EXPECT_NEAR(v, 0.0, 1e-13);
    EXPECT_THROW(subsolution_lift(w, 2.0, kGrid), PreconditionViolated);
}

TEST(Freeze, ConstantCoefficientsGiveFMinusF0)
{
    FamilyConfig cfg;
    cfg.amplitude_scale = 0.0;
    cfg.count = 3;
    const SpaceTimePoint X0({0.25}, -0.45);
    for (const auto& p : default_problem_family(cfg)) {
        const FrozenForm ff = freeze(p, X0);
        EXPECT_EQ(ff.g(X0), 0.0);
        for (std::size_t i = 0; i < kGrid.node_count(); ++i) {
            const auto X = kGrid.node(i);
            EXPECT_NEAR(ff.g(X), p.f(X) - p.f(X0), 1e-12);
            EXPECT_NEAR(p.a(X)(0, 0), 1.0, 0.0);
        }
    }
}

TEST(Freeze, RejectsPointsOutsideTheDomain)
{
    const auto fam = default_problem_family(0.5, 0.5, 2.0, 1, 7);
    EXPECT_THROW(freeze(fam.front(), SpaceTimePoint({0.0}, 0.5)), OutOfDomain);
}

TEST(Family, DeterministicEllipticAndConsistent)
{
    const auto a = default_problem_family(0.5, 0.5, 2.0, 6, 7);
    const auto b = default_problem_family(0.5, 0.5, 2.0, 3, 7);
    for (std::size_t k = 0; k < kGrid.node_count(); ++k) {
        const auto X = kGrid.node(k);
        for (std::size_t i = 0; i < b.size(); ++i) {
            EXPECT_EQ(a[i].u(X), b[i].u(X));
            EXPECT_EQ(a[i].f(X), b[i].f(X));
        }
        for (const auto& p : a) {
            const double v = p.a(X)(0, 0);
            EXPECT_GE(v, 0.5);
            EXPECT_LE(v, 2.0);
            // f is the heat operator of u with these coefficients.
            EXPECT_NEAR(p.f(X), p.u.derivative(X, Deriv::along(0, 1)) - v * p.u.derivative(X, Deriv::along(2, 0)), 1e-12);
        }
    }
    EXPECT_THROW(default_problem_family(0.5, 1.5, 2.0, 1, 7), InvalidArgument);
}

TEST(Family, TwoDimensionalEllipticity)
{
    const auto fam = default_problem_family(0.5, 0.5, 2.0, 4, 11, 2);
    const GridSpec g(Box::make(2, -0.9, 0.9, -0.9, -0.1), 5, 5);
    for (const auto& p : fam) {
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            Eigen::SelfAdjointEigenSolver<Mat> es(p.a(g.node(i)));
            EXPECT_GE(es.eigenvalues().minCoeff(), 0.5);
            EXPECT_LE(es.eigenvalues().maxCoeff(), 2.0);
        }
    }
}

TEST(Family, ManifestRebuildsBitIdenticalProblems)
{
    FamilyConfig cfg;
    cfg.count = 4;
    cfg.seed = 99;
    const auto a = default_problem_family(cfg);
    const auto b = problems_from_manifest(nlohmann::json::parse(family_manifest(cfg).dump()));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < kGrid.node_count(); ++k) {
            const auto X = kGrid.node(k);
            EXPECT_EQ(a[i].u(X), b[i].u(X));
            EXPECT_EQ(a[i].f(X), b[i].f(X));
            EXPECT_EQ(a[i].a(X)(0, 0), b[i].a(X)(0, 0));
        }
    }
}

TEST(Family, ScaledProblemScalesBothSides)
{
    const auto p = default_problem_family(0.5, 0.5, 2.0, 1, 7).front();
    const auto q = scaled(p, 3.0);
    const SpaceTimePoint X({0.1}, -0.4);
    EXPECT_DOUBLE_EQ(q.u(X), 3.0 * p.u(X));
    EXPECT_DOUBLE_EQ(q.f(X), 3.0 * p.f(X));
}

TEST(NormalizedCoords, RoundTrip)
{
    Mat A(1, 1);
    A << 4.0;
    const Mat T = coordinate_normalize(A);
    const Mat Ti = T.inverse();
    const AnalyticFn u = caloric_poly(1);
    const auto ut = in_normalized_coords(u, Ti);
    const SpaceTimePoint X({0.3}, -0.2);
    EXPECT_DOUBLE_EQ(ut(to_normalized(X, T)), u(X));
}
