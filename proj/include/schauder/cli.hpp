#pragma once

// Command-line front end. run() parses flags, runs one operation or check, writes artifacts
// and returns the process exit code: 0 on success, 1 on a failed check, 2 on a usage error.

#include "schauder/builtin.hpp"
#include "schauder/error.hpp"
#include "schauder/heatball.hpp"
#include "schauder/holder.hpp"
#include "schauder/io.hpp"
#include "schauder/mollify.hpp"
#include "schauder/report.hpp"
#include "schauder/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace schauder::cli {

using J = nlohmann::ordered_json;

/// Everything a run depends on. Serialized into manifest.json.
struct RunConfig {
    std::string command;
    std::string sub;  // heatball mode
    SweepConfig sweep;
    std::string out_dir = "schauder_out";
    std::string format = "both";

    // single-operation flags
    std::string function = "spatial_cusp";
    std::string input;
    double tau = 0.1;
    int nodes = 33;
    int i = 0;
    int j = 0;
    int grid = 65;
    long long budget = static_cast<long long>(kDefaultPairBudget);
    double r = 1.0;
    int alpha_int = 4;
    int beta = 2;
    std::vector<std::string> only;
};

inline J to_json(const RunConfig& c)
{
    J j;
    j["command"] = c.command;
    if (!c.sub.empty()) j["mode"] = c.sub;
    j["format"] = c.format;
    if (c.command == "mollify" || c.command == "seminorm") {
        j["function"] = c.function;
        j["input"] = c.input;
        j["dim"] = c.sweep.dim;
        j["alpha"] = c.sweep.alpha;
        j["grid"] = c.grid;
        if (c.command == "mollify") {
            j["tau"] = c.tau;
            j["nodes"] = c.nodes;
            j["i"] = c.i;
            j["j"] = c.j;
        } else {
            j["budget"] = c.budget;
        }
        return j;
    }
    if (c.command == "heatball") {
        j["function"] = c.function;
        j["dim"] = c.sweep.dim;
        j["r"] = c.r;
        j["alpha"] = c.alpha_int;
        j["beta"] = c.beta;
        j["quad"] = to_json(c.sweep)["quad"];
        return j;
    }
    j["only"] = c.only;
    j["sweep"] = to_json(c.sweep);
    return j;
}

namespace detail {

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

inline J point_json(const SpaceTimePoint& X)
{
    std::vector<double> xs(X.x.begin(), X.x.begin() + X.dim);
    return J{{"x", xs}, {"t", X.t}};
}

inline J quad_json(const QuadSpec& q)
{
    return J{{"n_slices", q.n_slices},
             {"n_radial", q.n_radial},
             {"n_angular", q.n_angular},
             {"clustering", q.clustering},
             {"tolerance", q.tolerance}};
}

/// The input Field: either a CSV (with sidecar) or a builtin sampled on the cusp domain.
inline Field input_field(const RunConfig& c)
{
    if (!c.input.empty()) return read_field(c.input);
    BuiltinParams bp = suite_builtin_params(c.sweep);
    const Box D = schauder::detail::cusp_domain(c.sweep.dim);
    return sample(builtin_family(c.function, bp), GridSpec(D, c.grid, c.grid));
}

inline void finish(const RunConfig& c, const std::vector<std::string>& files)
{
    write_manifest(c.out_dir, files, to_json(c));
}

inline int cmd_mollify(const RunConfig& c, Streams s)
{
    const MollifierProfile prof(c.nodes);
    const Field u = input_field(c);
    const Deriv d = Deriv::along(c.i, c.j);
    const Field ut = mollify_derivative(u, prof, c.tau, c.i, c.j);
    const double sup = ut.sup_abs();
    const double bound = prof.l1_norm(u.spec().dim(), d) * std::pow(c.tau, -(c.i + 2 * c.j)) * u.sup_abs();
    const double slack = bound - sup;
    J m{{"tau", c.tau}, {"sup_norm", json_number(sup)}, {"slack", json_number(slack)}, {"i", c.i}, {"j", c.j}};
    fs::create_directories(c.out_dir);
    write_field(ut, fs::path(c.out_dir) / "mollified.csv");
    write_text(fs::path(c.out_dir) / "metrics.json", m.dump(2) + '\n');
    finish(c, {"mollified.csv", "mollified.json", "metrics.json"});
    s.out << m.dump() << '\n';
    if (!(slack >= -1e-9 * std::max(1.0, bound))) {
        s.err << "check failed: mollify sup bound\n";
        return 1;
    }
    return 0;
}

inline int cmd_seminorm(const RunConfig& c, Streams s)
{
    const Field u = input_field(c);
    std::optional<Cylinder> region;
    if (c.input.empty()) region = schauder::detail::cusp_region(c.sweep.dim);
    const auto h = holder_seminorm(u, c.sweep.alpha, region, static_cast<std::size_t>(c.budget));
    J j{{"alpha", h.alpha},
        {"seminorm", json_number(h.seminorm)},
        {"witness", J::array({point_json(h.witness_x), point_json(h.witness_y)})},
        {"pairs_scanned", h.pairs_scanned}};
    write_text(fs::path(c.out_dir) / "seminorm.json", j.dump(2) + '\n');
    finish(c, {"seminorm.json"});
    s.out << j.dump() << '\n';
    return 0;
}

inline int cmd_heatball(const RunConfig& c, Streams s)
{
    const QuadSpec& q = c.sweep.quad;
    QuadResult res;
    J spec{{"mode", c.sub}, {"dim", c.sweep.dim}, {"r", c.r}, {"quad", quad_json(q)}};
    const HeatBall ball{SpaceTimePoint::origin(c.sweep.dim), c.r};
    if (c.sub == "mass") {
        res = kernel_mass(ball, q);
    } else if (c.sub == "mv") {
        BuiltinParams bp = suite_builtin_params(c.sweep);
        bp.pole.t = -1.0 - ball.depth();
        res = mean_value(builtin_family(c.function, bp), ball, q);
        spec["function"] = c.function;
    } else {
        res = scaling_integral(c.alpha_int, c.beta, c.r, c.sweep.dim, q);
        spec["alpha"] = c.alpha_int;
        spec["beta"] = c.beta;
    }
    J j{{"value", json_number(res.value)}, {"est_error", json_number(res.est_error)}, {"spec", spec}};
    write_text(fs::path(c.out_dir) / ("heatball_" + c.sub + ".json"), j.dump(2) + '\n');
    finish(c, {"heatball_" + c.sub + ".json"});
    s.out << j.dump() << '\n';
    return 0;
}

inline int cmd_checks(const RunConfig& c, const std::vector<std::string>& names, Streams s)
{
    c.sweep.validate();
    fs::create_directories(c.out_dir);
    std::vector<std::string> files;
    std::vector<std::string> failed;
    for (const auto& name : names) {
        const VerifyReport r = run_check(name, c.sweep);
        for (auto& f : write_report(r, c.out_dir, c.format)) files.push_back(std::move(f));
        s.out << (r.pass ? "PASS " : "FAIL ") << r.check << '\n';
        if (!r.pass) {
            failed.push_back(r.check);
            for (const auto& f : r.failures()) s.out << "  " << f << '\n';
        }
    }
    files.emplace_back("family.json");
    write_text(fs::path(c.out_dir) / files.back(), family_manifest(c.sweep.family(c.sweep.family_count)).dump(2) + '\n');
    finish(c, files);
    for (const auto& f : failed) s.err << "check failed: " << f << '\n';
    return failed.empty() ? 0 : 1;
}

inline void sweep_flags(CLI::App* a, RunConfig& c)
{
    auto& w = c.sweep;
    a->add_option("--dim", w.dim, "spatial dimension")->capture_default_str();
    a->add_option("--alpha", w.alpha, "Hoelder exponent of the problem family")->capture_default_str();
    a->add_option("--seed", w.seed, "family seed")->capture_default_str();
    a->add_option("--taus", w.tau_grid, "mollification scales, decreasing")->capture_default_str();
    a->add_option("--cusp-alphas", w.cusp_alphas, "exponents of the cusp test functions")->capture_default_str();
    a->add_option("--r-grid", w.r_grid, "heat-ball radii")->capture_default_str();
    a->add_option("--estimate-taus", w.estimate_taus, "scales for the derivative estimates")->capture_default_str();
    a->add_option("--rho-grid", w.rho_grid, "cylinder radii for the frozen residual")->capture_default_str();
    a->add_option("--N", w.N, "estimate radius R = N tau")->capture_default_str();
    a->add_option("--count", w.family_count, "problems in the family")->capture_default_str();
    a->add_option("--lambda", w.lambda, "ellipticity lower bound")->capture_default_str();
    a->add_option("--Lambda", w.Lambda, "ellipticity upper bound")->capture_default_str();
    a->add_option("--chain-pairs", w.chain_pairs, "sampled pairs for the triangle chain")->capture_default_str();
    a->add_option("--epsilon", w.epsilon, "chain ratio tau/d; 0 means 4^(-1/alpha)")->capture_default_str();
    a->add_option("--norm-C", w.norm_C, "norm-equivalence band")->capture_default_str();
    a->add_option("--grid", w.schauder_grid, "grid for the Schauder ratio")->capture_default_str();
    a->add_option("--refined-grid", w.schauder_refined, "refined grid for the Schauder ratio")->capture_default_str();
    a->add_option("--tolerance", w.quad.tolerance, "heat-ball quadrature tolerance")->capture_default_str();
    a->add_option("--out", c.out_dir, "output directory")->capture_default_str();
    a->add_option("--format", c.format, "json | csv | both")
        ->check(CLI::IsMember({"json", "csv", "both"}))
        ->capture_default_str();
}

inline void quad_flags(CLI::App* a, RunConfig& c)
{
    a->add_option("--slices", c.sweep.quad.n_slices, "time panels")->capture_default_str();
    a->add_option("--radial", c.sweep.quad.n_radial, "radial nodes")->capture_default_str();
    a->add_option("--angular", c.sweep.quad.n_angular, "angular nodes")->capture_default_str();
    a->add_option("--tolerance", c.sweep.quad.tolerance, "refinement tolerance")->capture_default_str();
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    RunConfig c;
    CLI::App app{"Numerical checks for mollification-based parabolic Schauder estimates", "schauder"};
    app.require_subcommand(1);

    auto* moll = app.add_subcommand("mollify", "mollify a builtin or a Field CSV");
    auto* semi = app.add_subcommand("seminorm", "parabolic Hoelder seminorm of a builtin or a Field CSV");
    for (auto* a : {moll, semi}) {
        a->add_option("--function", c.function, "builtin function name")
            ->check(CLI::IsMember(builtin_names()))
            ->capture_default_str();
        a->add_option("--input", c.input, "Field CSV (with JSON sidecar)");
        a->add_option("--dim", c.sweep.dim, "spatial dimension")->capture_default_str();
        a->add_option("--alpha", c.sweep.alpha, "Hoelder exponent")->capture_default_str();
        a->add_option("--grid", c.grid, "samples per axis for builtins")->capture_default_str();
        a->add_option("--out", c.out_dir, "output directory")->capture_default_str();
    }
    moll->add_option("--tau", c.tau, "mollification scale")->capture_default_str();
    moll->add_option("--nodes", c.nodes, "kernel nodes per axis")->capture_default_str();
    moll->add_option("--i", c.i, "spatial derivative order")->capture_default_str();
    moll->add_option("--j", c.j, "time derivative order")->capture_default_str();
    semi->add_option("--budget", c.budget, "pair budget")->capture_default_str();

    auto* hb = app.add_subcommand("heatball", "heat-ball quadrature");
    hb->require_subcommand(1);
    auto* hb_mv = hb->add_subcommand("mv", "mean value of a builtin over a heat ball at the origin");
    auto* hb_mass = hb->add_subcommand("mass", "kernel mass, exactly 4 r^d");
    auto* hb_scale = hb->add_subcommand("scaling", "the integral of R^alpha / sigma^beta");
    for (auto* a : {hb_mv, hb_mass, hb_scale}) {
        a->add_option("--r", c.r, "heat-ball radius")->capture_default_str();
        a->add_option("--dim", c.sweep.dim, "spatial dimension")->capture_default_str();
        a->add_option("--out", c.out_dir, "output directory")->capture_default_str();
        detail::quad_flags(a, c);
    }
    hb_mv->add_option("--function", c.function, "builtin function name")
        ->check(CLI::IsMember(builtin_names()))
        ->capture_default_str();
    hb_scale->add_option("--alpha", c.alpha_int, "radius exponent")->capture_default_str();
    hb_scale->add_option("--beta", c.beta, "sigma exponent")->capture_default_str();

    auto* ne = app.add_subcommand("norm-equiv", "norm equivalence on the cusp functions");
    auto* est = app.add_subcommand("estimates", "frozen residual and derivative estimates on the problem family");
    auto* sch = app.add_subcommand("schauder", "end-to-end Schauder ratio on the problem family");
    auto* suite = app.add_subcommand("suite", "all acceptance checks");
    for (auto* a : {ne, est, sch, suite}) detail::sweep_flags(a, c);
    suite->add_option("--only", c.only, "restrict to these checks")->check(CLI::IsMember(check_names()));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(std::move(rev));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        err << '\n' << app.help();
        return 2;
    }

    for (auto* h : {moll, semi, hb_mv, hb_mass, hb_scale, ne, est, sch, suite}) {
        if (!h->parsed()) continue;
        if (h == hb_mv || h == hb_mass || h == hb_scale) {
            c.command = "heatball";
            c.sub = h->get_name();
        } else {
            c.command = h->get_name();
        }
    }
    const detail::Streams s{out, err};
    try {
        if (c.command == "mollify" || c.command == "seminorm") {
            if (!c.input.empty() && (moll->count("--function") + semi->count("--function")) > 0) {
                throw InvalidArgument("--input and --function are exclusive");
            }
            return c.command == "mollify" ? detail::cmd_mollify(c, s) : detail::cmd_seminorm(c, s);
        }
        if (c.command == "heatball") return detail::cmd_heatball(c, s);
        std::vector<std::string> names;
        if (c.command == "norm-equiv") names = {"norm_equivalence"};
        if (c.command == "estimates") names = {"frozen_residual", "derivative_estimates"};
        if (c.command == "schauder") names = {"schauder"};
        if (c.command == "suite") {
            if (c.sweep.dim != 1) throw InvalidArgument("suite: only --dim 1 is supported");
            for (const auto& n : check_names()) {
                if (c.only.empty() || std::find(c.only.begin(), c.only.end(), n) != c.only.end()) names.push_back(n);
            }
        }
        return detail::cmd_checks(c, names, s);
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "check failed: " << c.command << (c.sub.empty() ? "" : " " + c.sub) << ": " << e.what() << '\n';
        return 1;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    std::vector<std::string> args;
    for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
    return run(args, out, err);
}

}  // namespace schauder::cli
