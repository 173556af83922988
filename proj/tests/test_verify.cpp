#include "schauder/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

using namespace schauder;

TEST(Report, ItemsAndFinalize)
{
    VerifyReport r;
    r.check = "x";
    r.items.push_back(make_item("a", 1.0, Relation::le, 1.0));
    r.items.push_back(make_item("b", 0.5, Relation::in_band, 2.0, 0.5));
    r.finalize();
    EXPECT_TRUE(r.pass);
    r.items.push_back(make_item("c", 1.0, Relation::ge, 1.0 + 1e-12));
    r.finalize();
    EXPECT_FALSE(r.pass);
    ASSERT_EQ(r.failures().size(), 1u);
    EXPECT_EQ(r.failures().front(), "c");
    VerifyReport empty;
    empty.finalize();
    EXPECT_FALSE(empty.pass);
}

TEST(Report, LogLogFitRecoversPowerLaw)
{
    const std::vector<double> x{0.2, 0.1, 0.05, 0.025};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * std::pow(v, -0.7));
    const auto f = fit_loglog("p", x, y, -0.7, 1e-12);
    EXPECT_TRUE(f.pass);
    EXPECT_NEAR(f.slope, -0.7, 1e-12);
    EXPECT_LT(f.half_width, 1e-10);
    EXPECT_THROW(fit_loglog("q", {1.0, 2.0}, {1.0, 2.0}, 1.0, 0.1), InvalidArgument);
}

TEST(Report, CsvSchemaAndNumberFormat)
{
    VerifyReport r;
    r.check = "demo";
    r.rows.push_back(Row{"lab", {{"tau", 0.1}, {"n", 3.0}}, 1.0 / 3.0, 2.0, 1.0 / 6.0});
    const std::string csv = to_csv(r);
    EXPECT_EQ(csv, "check,label,params,lhs,rhs,ratio\ndemo,lab,tau=0.1;n=3,0.3333333333333333,2,0.16666666666666666\n");
    EXPECT_EQ(csv_double(std::numeric_limits<double>::infinity()), "inf");
    r.rows.front().label = "(4,2) \"q\"";
    EXPECT_EQ(to_csv(r).substr(to_csv(r).find('\n') + 1, 22), "demo,\"(4,2) \"\"q\"\"\",tau");
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23}) EXPECT_EQ(parse_double(csv_double(v)), v);
}

TEST(Report, JsonCarriesEverything)
{
    VerifyReport r;
    r.check = "demo";
    r.items.push_back(failed_item("missing", "could not measure"));
    r.finalize();
    const auto j = to_json(r);
    EXPECT_EQ(j["check"], "demo");
    EXPECT_EQ(j["pass"], false);
    EXPECT_EQ(j["items"][0]["value"], "nan");
    EXPECT_EQ(j["items"][0]["note"], "could not measure");
}

TEST(SweepConfig, DefaultsValidateAndBadValuesThrow)
{
    SweepConfig c;
    EXPECT_NO_THROW(c.validate());
    EXPECT_NEAR(c.epsilon_for(0.5), 1.0 / 16.0, 1e-15);
    auto bad = c;
    bad.tau_grid = {0.1, 0.2};
    EXPECT_THROW(bad.validate(), InvalidArgument);
    bad = c;
    bad.alpha = 1.0;
    EXPECT_THROW(bad.validate(), InvalidArgument);
    bad = c;
    bad.epsilon = 0.6;
    EXPECT_THROW(bad.validate(), InvalidArgument);
    bad = c;
    bad.x0 = {0.1, 0.2};
    EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(NormEquivalence, ConstantHasZeroOnBothSides)
{
    const AnalyticFn u = constant_fn(1, 2.0);
    const Box D = Box::make(1, -1.0, 1.0, -0.5, 0.5);
    for (double tau : {0.1, 0.05}) {
        const auto s = detail::cusp_sups(u, detail::CuspKind::spatial, tau, D, 17);
        EXPECT_LE(s.err, 1e-14);
        EXPECT_LE(s.dx, 1e-9);
        EXPECT_LE(s.dt, 1e-9);
    }
    const Cylinder Q{SpaceTimePoint({0.0}, 0.5), 1.0};
    EXPECT_EQ(holder_seminorm(u, 0.5, Q, 33, 33).seminorm, 0.0);
    const auto chain = triangle_chain(u, detail::CuspKind::spatial, 0.5, 0.0, 1.0 / 16.0, 50, 1);
    EXPECT_EQ(chain.violations, 0);
    EXPECT_EQ(chain.worst_ratio, 0.0);
}

TEST(NormEquivalence, ChainHoldsOnACusp)
{
    const auto chain = triangle_chain(spatial_cusp(1, 0.5), detail::CuspKind::spatial, 0.5, 1.0, 1.0 / 16.0, 300, 3);
    EXPECT_EQ(chain.pairs, 300);
    EXPECT_EQ(chain.violations, 0);
    EXPECT_GT(chain.worst_ratio, 0.0);
}

TEST(DerivativeEstimates, ConstantCoefficientsAndConstantSource)
{
    // a = I and f = u_t - u_xx: the residual is f - f(X0); with zero amplitude it still depends on u.
    // Check only that both sides are finite and the g term enters with the right sign.
    FamilyConfig fc;
    fc.amplitude_scale = 0.0;
    fc.count = 1;
    const auto p = default_problem_family(fc).front();
    const SpaceTimePoint X0({0.25}, -0.45);
    const FrozenForm ff = freeze(p, X0);
    const auto s = derivative_estimates_at(p, ff, 0.02, 4.0);
    for (int e = 0; e < 4; ++e) {
        EXPECT_TRUE(std::isfinite(s.lhs[static_cast<std::size_t>(e)]));
        EXPECT_TRUE(std::isfinite(s.rhs[static_cast<std::size_t>(e)]));
        EXPECT_GT(s.rhs[static_cast<std::size_t>(e)], 0.0);
    }
}

TEST(Schauder, ZeroSolutionIsDegenerate)
{
    auto p = default_problem_family(0.5, 0.5, 2.0, 1, 7).front();
    const auto z = scaled(p, 0.0);
    EXPECT_THROW(schauder_terms(z, 0.5, 9), PreconditionViolated);
    const auto t = schauder_terms(p, 0.5, 17);
    EXPECT_TRUE(std::isfinite(t.ratio()));
    EXPECT_GT(t.ratio(), 0.0);
}

TEST(Checks, CheapChecksPass)
{
    SweepConfig c;
    for (const char* name : {"mollifier_mass", "kernel_mass", "frozen_residual"}) {
        const auto r = run_check(name, c);
        EXPECT_TRUE(r.pass) << name;
        EXPECT_FALSE(r.items.empty()) << name;
    }
    EXPECT_THROW(run_check("nope", c), InvalidArgument);
}

TEST(Checks, TwoDimensionalSmoke)
{
    SweepConfig c;
    c.dim = 2;
    c.x0 = {0.25, 0.0};
    EXPECT_TRUE(check_mollifier_mass(c).pass);
    c.family_count = 2;
    c.rho_grid = {0.4, 0.2};
    const auto r = check_frozen_residual(c);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.rows.size(), 4u);
}

TEST(Suite, WritesReportsAndHashedManifest)
{
    SweepConfig c;
    const auto dir = std::filesystem::temp_directory_path() / "schauder_suite_test";
    std::filesystem::remove_all(dir);
    const auto reps = run_suite(c, dir, {"mollifier_mass", "kernel_mass"});
    ASSERT_EQ(reps.size(), 2u);
    for (const char* f : {"report_mollifier_mass.json", "sweep_mollifier_mass.csv", "report_kernel_mass.json",
                          "sweep_kernel_mass.csv", "family.json", "manifest.json"}) {
        EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
    }
    const auto m = nlohmann::json::parse(read_text(dir / "manifest.json"));
    ASSERT_EQ(m["files"].size(), 5u);
    for (const auto& e : m["files"]) {
        EXPECT_EQ(e["sha256"], sha256_hex(read_text(dir / e["file"].get<std::string>())));
    }
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    std::filesystem::remove_all(dir);
}
