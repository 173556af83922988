#include "schauder/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace schauder;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string tmp(const char* name)
{
    const auto p = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(p);
    return p.string();
}

}  // namespace

TEST(Cli, HeatballMassIsFour)
{
    const auto dir = tmp("schauder_cli_mass");
    const auto r = call({"heatball", "mass", "--dim", "1", "--r", "1", "--out", dir});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["value"].get<double>(), 4.0, 4e-3);
    EXPECT_TRUE(j.contains("est_error"));
    EXPECT_EQ(j["spec"]["quad"]["n_slices"], 64);
    EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(dir) / "manifest.json"));
}

TEST(Cli, HeatballScalingDivergenceIsAFailedCheck)
{
    const auto r = call({"heatball", "scaling", "--alpha", "2", "--beta", "2", "--out", tmp("schauder_cli_div")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("heatball scaling"), std::string::npos);
}

TEST(Cli, UnknownFlagIsUsageError)
{
    const auto r = call({"heatball", "mass", "--bogus", "1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("--bogus"), std::string::npos);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
    EXPECT_EQ(call({}).code, 2);
    EXPECT_EQ(call({"frobnicate"}).code, 2);
    EXPECT_EQ(call({"mollify", "--function", "nope"}).code, 2);
}

TEST(Cli, HelpExitsZero)
{
    const auto r = call({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("suite"), std::string::npos);
}

TEST(Cli, MollifyWritesFieldAndMetrics)
{
    const auto dir = tmp("schauder_cli_moll");
    const auto r = call({"mollify", "--function", "spatial_cusp", "--tau", "0.1", "--i", "1", "--out", dir});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["tau"], 0.1);
    EXPECT_GT(j["sup_norm"].get<double>(), 0.0);
    EXPECT_GE(j["slack"].get<double>(), 0.0);
    const Field f = read_field(std::filesystem::path(dir) / "mollified.csv");
    EXPECT_NEAR(f.sup_abs(), j["sup_norm"].get<double>(), 0.0);

    // Round trip through a Field CSV input.
    const auto r2 = call({"mollify", "--input", (std::filesystem::path(dir) / "mollified.csv").string(), "--tau", "0.05",
                          "--out", tmp("schauder_cli_moll2")});
    EXPECT_EQ(r2.code, 0) << r2.err;
    EXPECT_EQ(call({"mollify", "--tau", "-1", "--out", tmp("schauder_cli_moll3")}).code, 2);
}

TEST(Cli, SeminormOfCuspNearOne)
{
    const auto r = call({"seminorm", "--function", "temporal_cusp", "--alpha", "0.5", "--out", tmp("schauder_cli_semi")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_GE(j["seminorm"].get<double>(), 0.98);
    EXPECT_EQ(j["witness"].size(), 2u);
}

TEST(Cli, SuiteSubsetPassesAndFailureIsNamed)
{
    const auto dir = tmp("schauder_cli_suite");
    const auto ok = call({"suite", "--only", "mollifier_mass", "--only", "kernel_mass", "--out", dir});
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_NE(ok.out.find("PASS kernel_mass"), std::string::npos);
    const auto m = nlohmann::json::parse(read_text(std::filesystem::path(dir) / "manifest.json"));
    EXPECT_EQ(m["config"]["command"], "suite");
    EXPECT_EQ(m["files"].size(), 5u);

    const auto bad = call({"suite", "--only", "scaling_integral", "--out", tmp("schauder_cli_suite2")});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("check failed: scaling_integral"), std::string::npos);
}

TEST(Cli, FormatSelector)
{
    const auto dir = tmp("schauder_cli_fmt");
    const auto r = call({"suite", "--only", "kernel_mass", "--format", "csv", "--out", dir});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(dir) / "sweep_kernel_mass.csv"));
    EXPECT_FALSE(std::filesystem::exists(std::filesystem::path(dir) / "report_kernel_mass.json"));
    EXPECT_EQ(call({"suite", "--format", "xml"}).code, 2);
    EXPECT_EQ(call({"suite", "--dim", "2", "--out", tmp("schauder_cli_d2")}).code, 2);
}
