#pragma once

// Verification checks: each measures one family of inequalities and returns a VerifyReport.

#include "schauder/builtin.hpp"
#include "schauder/error.hpp"
#include "schauder/field.hpp"
#include "schauder/heatball.hpp"
#include "schauder/holder.hpp"
#include "schauder/io.hpp"
#include "schauder/manufactured.hpp"
#include "schauder/mollify.hpp"
#include "schauder/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace schauder {

struct SweepConfig {
    int dim = 1;
    double alpha = 0.5;
    std::uint64_t seed = 7;

    // mollifier checks
    std::vector<double> mass_taus{0.2, 0.1, 0.05};
    std::vector<double> tau_grid{0.2, 0.1, 0.05, 0.025};
    std::vector<double> cusp_alphas{0.3, 0.5, 0.7};
    int sup_grid = 65;          // input samples per axis for sup contraction
    int fine_nodes = 65;        // nodes across the singular window
    double err_factor = 1.05;   // |u_tau - u| <= err_factor tau^alpha
    double slope_tol = 0.05;

    // norm equivalence
    double norm_C = 20.0;
    double refine_tau = 0.0125;
    double stability = 0.10;
    int chain_pairs = 10000;
    double epsilon = 0.0;  // 0 selects 4^(-1/alpha)
    int seminorm_grid = 65;

    // heat balls
    std::vector<double> r_grid{0.5, 1.0, 2.0};
    std::vector<double> scaling_r{0.25, 0.5, 1.0, 2.0};
    int scaling_dim = 1;
    double scaling_tol = 0.01;
    QuadSpec quad{};

    // manufactured problems
    double lambda = 0.5;
    double Lambda = 2.0;
    int family_count = 10;
    std::vector<double> x0{0.25};
    double t0 = -0.45;
    std::vector<double> rho_grid{0.4, 0.2, 0.1, 0.05};
    double residual_factor = 1.05;
    std::vector<double> estimate_taus{0.04, 0.02, 0.01, 0.005};
    double N = 4.0;
    double band = 2.0;
    int schauder_grid = 33;
    int schauder_refined = 65;
    double family_factor = 3.0;
    double refine_change = 0.10;

    void validate() const
    {
        if (dim < 1 || dim > kMaxDim) throw InvalidArgument("config: unsupported dimension");
        if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("config: alpha must lie in (0, 1)");
        auto decreasing = [](const std::vector<double>& v, const char* name) {
            if (v.empty()) throw InvalidArgument(std::string("config: ") + name + " is empty");
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!(v[i] > 0.0)) throw InvalidArgument(std::string("config: ") + name + " must be positive");
                if (i && !(v[i] < v[i - 1])) throw InvalidArgument(std::string("config: ") + name + " must decrease strictly");
            }
        };
        auto increasing = [](const std::vector<double>& v, const char* name) {
            if (v.empty()) throw InvalidArgument(std::string("config: ") + name + " is empty");
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!(v[i] > 0.0)) throw InvalidArgument(std::string("config: ") + name + " must be positive");
                if (i && !(v[i] > v[i - 1])) throw InvalidArgument(std::string("config: ") + name + " must increase strictly");
            }
        };
        decreasing(mass_taus, "mass_taus");
        decreasing(tau_grid, "tau_grid");
        decreasing(estimate_taus, "estimate_taus");
        decreasing(rho_grid, "rho_grid");
        increasing(r_grid, "r_grid");
        increasing(scaling_r, "scaling_r");
        for (double a : cusp_alphas) {
            if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("config: cusp alphas must lie in (0, 1)");
        }
        if (!(refine_tau > 0.0 && refine_tau < tau_grid.back())) {
            throw InvalidArgument("config: refine_tau must be below the finest tau");
        }
        if (!(N >= 1.0)) throw InvalidArgument("config: N must be >= 1");
        if (epsilon != 0.0 && !(epsilon > 0.0 && epsilon < 0.5)) throw InvalidArgument("config: epsilon must lie in (0, 1/2)");
        if (static_cast<int>(x0.size()) != dim) throw InvalidArgument("config: x0 needs one coordinate per dimension");
        if (family_count < 1 || chain_pairs < 1) throw InvalidArgument("config: counts must be positive");
        if (sup_grid < 3 || fine_nodes < 3 || seminorm_grid < 3 || schauder_grid < 3 || schauder_refined < 3) {
            throw InvalidArgument("config: grid sizes must be >= 3");
        }
        quad.validate();
    }

    SpaceTimePoint X0() const { return SpaceTimePoint::from_span(x0, t0); }
    double epsilon_for(double a) const { return epsilon > 0.0 ? epsilon : std::pow(4.0, -1.0 / a); }

    FamilyConfig family(int count) const
    {
        FamilyConfig f;
        f.dim = dim;
        f.alpha = alpha;
        f.lambda = lambda;
        f.Lambda = Lambda;
        f.count = count;
        f.seed = seed;
        return f;
    }
};

inline nlohmann::ordered_json to_json(const SweepConfig& c)
{
    nlohmann::ordered_json j;
    j["dim"] = c.dim;
    j["alpha"] = c.alpha;
    j["seed"] = c.seed;
    j["mass_taus"] = c.mass_taus;
    j["tau_grid"] = c.tau_grid;
    j["cusp_alphas"] = c.cusp_alphas;
    j["sup_grid"] = c.sup_grid;
    j["fine_nodes"] = c.fine_nodes;
    j["norm_C"] = c.norm_C;
    j["refine_tau"] = c.refine_tau;
    j["chain_pairs"] = c.chain_pairs;
    j["epsilon"] = c.epsilon;
    j["r_grid"] = c.r_grid;
    j["scaling_r"] = c.scaling_r;
    j["quad"] = {{"n_slices", c.quad.n_slices},
                 {"n_radial", c.quad.n_radial},
                 {"n_angular", c.quad.n_angular},
                 {"clustering", c.quad.clustering},
                 {"tolerance", c.quad.tolerance}};
    j["lambda"] = c.lambda;
    j["Lambda"] = c.Lambda;
    j["family_count"] = c.family_count;
    j["x0"] = c.x0;
    j["t0"] = c.t0;
    j["rho_grid"] = c.rho_grid;
    j["estimate_taus"] = c.estimate_taus;
    j["N"] = c.N;
    j["schauder_grid"] = c.schauder_grid;
    j["schauder_refined"] = c.schauder_refined;
    return j;
}

inline const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names{
        "mollifier_mass",      "sup_contraction", "holder_mollification", "norm_equivalence",
        "kernel_mass",         "caloric_mean_value", "subsolution_mean_value", "scaling_integral",
        "frozen_residual",     "derivative_estimates", "schauder"};
    return names;
}

namespace detail {

inline Row make_row(std::string label, std::vector<Param> params, double lhs, double rhs)
{
    const double ratio = rhs != 0.0 ? lhs / rhs : (lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    return Row{std::move(label), std::move(params), lhs, rhs, ratio};
}

/// Region used for the cusp experiments: Q_1 with top at t = 0.5, so both cusps are interior.
inline Cylinder cusp_region(int dim)
{
    SpaceTimePoint c = SpaceTimePoint::origin(dim);
    c.t = 0.5;
    return Cylinder{c, 1.0};
}

inline Box cusp_domain(int dim) { return Box::bounding(cusp_region(dim)); }

enum class CuspKind { spatial, temporal };

inline const char* cusp_name(CuspKind k) { return k == CuspKind::spatial ? "spatial_cusp" : "temporal_cusp"; }

inline AnalyticFn make_cusp(CuspKind k, int dim, double a)
{
    return k == CuspKind::spatial ? spatial_cusp(dim, a) : temporal_cusp(dim, a);
}

struct CuspSups {
    double err = 0.0;  // sup |u_tau - u|
    double dx = 0.0;   // sup |d_x u_tau| (axis 0)
    double dt = 0.0;   // sup |d_t u_tau|
};

/// Sup norms on U_tau from a coarse grid over all of U_tau plus a fine grid
/// across the cusp's singular set (spacing tau/8 in space or tau^2/8 in time).
inline CuspSups cusp_sups(const AnalyticFn& u, CuspKind kind, double tau, const Box& domain, int fine_nodes,
                          const MollifierProfile& p = default_profile())
{
    const int d = u.dim();
    const Box U = domain.shrink(tau);
    std::vector<GridSpec> grids{GridSpec(U, d == 1 ? 33 : 9, 9)};
    Box w = U;
    if (kind == CuspKind::spatial) {
        const double half = 0.125 * tau * (fine_nodes - 1) / 2.0;
        for (int k = 0; k < d; ++k) {
            w.lo[static_cast<std::size_t>(k)] = std::max(U.lo[static_cast<std::size_t>(k)], -half);
            w.hi[static_cast<std::size_t>(k)] = std::min(U.hi[static_cast<std::size_t>(k)], half);
        }
        grids.emplace_back(w, fine_nodes, 3);
    } else {
        const double half = 0.125 * tau * tau * (fine_nodes - 1) / 2.0;
        w.t_lo = std::max(U.t_lo, -half);
        w.t_hi = std::min(U.t_hi, half);
        grids.emplace_back(w, 3, fine_nodes);
    }
    const std::vector<Deriv> orders{Deriv{}, Deriv::along(1, 0), Deriv::along(0, 1)};
    CuspSups s;
    for (const auto& g : grids) {
        const auto fields = mollify_many(u, domain, p, tau, g, orders);
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            s.err = std::max(s.err, std::abs(fields[0].value(i) - u(g.node(i))));
            s.dx = std::max(s.dx, std::abs(fields[1].value(i)));
            s.dt = std::max(s.dt, std::abs(fields[2].value(i)));
        }
    }
    return s;
}

/// Largest |h| found on [0, 1] by a coarse scan followed by local refinement.
template <class H>
double segment_max(const H& h)
{
    constexpr int kCoarse = 9;
    constexpr int kRounds = 3;
    double best = 0.0;
    double best_s = 0.0;
    for (int i = 0; i < kCoarse; ++i) {
        const double s = static_cast<double>(i) / (kCoarse - 1);
        const double v = std::abs(h(s));
        if (v > best) {
            best = v;
            best_s = s;
        }
    }
    double width = 1.0 / (kCoarse - 1);
    for (int r = 0; r < kRounds; ++r) {
        const double c = best_s;
        for (int i = -2; i <= 2; ++i) {
            if (i == 0) continue;
            const double s = std::clamp(c + 0.5 * i * width, 0.0, 1.0);
            const double v = std::abs(h(s));
            if (v > best) {
                best = v;
                best_s = s;
            }
        }
        width *= 0.5;
    }
    return best;
}

inline std::string point_str(const SpaceTimePoint& X) { return X.str(); }

}  // namespace detail

// ---------------------------------------------------------------------------
// 1. Mollifier mass

inline VerifyReport check_mollifier_mass(const SweepConfig& cfg)
{
    VerifyReport rep;
    rep.check = "mollifier_mass";
    const auto& p = default_profile();
    const int d = cfg.dim;
    const int n = d == 1 ? 201 : 61;
    for (double tau : cfg.mass_taus) {
        // Dense midpoint rule over the scaled support, independent of the convolution weights.
        const double hx = 2.0 * tau / n;
        const double ht = 2.0 * tau * tau / n;
        std::size_t spatial = 1;
        for (int k = 0; k < d; ++k) spatial *= static_cast<std::size_t>(n);
        double mass = 0.0;
        SpaceTimePoint X = SpaceTimePoint::origin(d);
        for (int it = 0; it < n; ++it) {
            X.t = -tau * tau + (it + 0.5) * ht;
            for (std::size_t s = 0; s < spatial; ++s) {
                std::size_t rem = s;
                for (int k = 0; k < d; ++k) {
                    X.x[static_cast<std::size_t>(k)] = -tau + (static_cast<double>(rem % n) + 0.5) * hx;
                    rem /= static_cast<std::size_t>(n);
                }
                mass += rho_tau(p, tau, X);
            }
        }
        mass *= std::pow(hx, d) * ht;
        rep.rows.push_back(detail::make_row("dense_midpoint", {{"tau", tau}}, mass, 1.0));
        rep.items.push_back(make_item("|mass - 1| tau=" + csv_double(tau), std::abs(mass - 1.0), Relation::le, 1e-6));

        double wsum = 1.0;
        double s1 = 0.0;
        for (double w : p.weights(0)) s1 += w;
        wsum = std::pow(s1, d + 1);
        rep.rows.push_back(detail::make_row("discrete_weights", {{"tau", tau}}, wsum, 1.0));
        rep.items.push_back(
            make_item("|weight sum - 1| tau=" + csv_double(tau), std::abs(wsum - 1.0), Relation::le, 1e-6));
    }
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// 2. Sup contraction

inline BuiltinParams suite_builtin_params(const SweepConfig& cfg)
{
    BuiltinParams bp;
    bp.dim = cfg.dim;
    bp.alpha = cfg.alpha;
    bp.constant = 1.5;
    bp.time_slope = 0.5;
    bp.pole = SpaceTimePoint::origin(cfg.dim);
    bp.pole.x[0] = 0.2;
    bp.pole.t = -0.75;  // below the domain
    bp.support = detail::cusp_region(cfg.dim);
    return bp;
}

inline VerifyReport check_sup_contraction(const SweepConfig& cfg)
{
    VerifyReport rep;
    rep.check = "sup_contraction";
    const Box D = detail::cusp_domain(cfg.dim);
    const auto bp = suite_builtin_params(cfg);
    const int n_in = cfg.dim == 1 ? cfg.sup_grid : 17;
    const int n_out = cfg.dim == 1 ? 33 : 9;
    for (const auto& name : builtin_names()) {
        const Field u = sample(builtin_family(name, bp), GridSpec(D, n_in, n_in));
        const double su = u.sup_abs();
        for (double tau : cfg.tau_grid) {
            const Field ut = mollify(u, D, default_profile(), tau, GridSpec(D.shrink(tau), n_out, n_out));
            const double st = ut.sup_abs();
            rep.rows.push_back(detail::make_row(name, {{"tau", tau}}, st, su));
            rep.items.push_back(make_item(name + " tau=" + csv_double(tau), st, Relation::le, su + 1e-9));
        }
    }
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// 3. Hoelder mollification exponents

inline VerifyReport check_holder_mollification(const SweepConfig& cfg)
{
    VerifyReport rep;
    rep.check = "holder_mollification";
    const Box D = detail::cusp_domain(cfg.dim);
    for (auto kind : {detail::CuspKind::spatial, detail::CuspKind::temporal}) {
        for (double a : cfg.cusp_alphas) {
            const AnalyticFn u = detail::make_cusp(kind, cfg.dim, a);
            const std::string tag = std::string(detail::cusp_name(kind)) + " alpha=" + csv_double(a);
            std::vector<double> dx;
            std::vector<double> dt;
            double other = 0.0;
            for (double tau : cfg.tau_grid) {
                const auto s = detail::cusp_sups(u, kind, tau, D, cfg.fine_nodes);
                const double bound = std::pow(tau, a);
                rep.rows.push_back(detail::make_row(std::string(detail::cusp_name(kind)) + ":error",
                                                    {{"alpha", a}, {"tau", tau}}, s.err, bound));
                rep.rows.push_back(detail::make_row(std::string(detail::cusp_name(kind)) + ":dx",
                                                    {{"alpha", a}, {"tau", tau}}, s.dx, std::pow(tau, a - 1.0)));
                rep.rows.push_back(detail::make_row(std::string(detail::cusp_name(kind)) + ":dt",
                                                    {{"alpha", a}, {"tau", tau}}, s.dt, std::pow(tau, a - 2.0)));
                rep.items.push_back(make_item(tag + " |u_tau-u| tau=" + csv_double(tau), s.err, Relation::le,
                                              cfg.err_factor * bound));
                dx.push_back(s.dx);
                dt.push_back(s.dt);
                other = std::max(other, kind == detail::CuspKind::spatial ? s.dt : s.dx);
            }
            if (kind == detail::CuspKind::spatial) {
                rep.fits.push_back(fit_loglog(tag + " d_x slope", cfg.tau_grid, dx, a - 1.0, cfg.slope_tol));
                rep.items.push_back(make_item(tag + " d_t u_tau vanishes", other, Relation::le, 1e-8,
                                              0.0, "cusp does not depend on t"));
            } else {
                rep.fits.push_back(fit_loglog(tag + " d_t slope", cfg.tau_grid, dt, a - 2.0, cfg.slope_tol));
                rep.items.push_back(make_item(tag + " d_x u_tau vanishes", other, Relation::le, 1e-8,
                                              0.0, "cusp does not depend on x"));
            }
        }
    }
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// 4. Norm equivalence

struct ChainResult {
    int pairs = 0;
    int violations = 0;
    double worst_ratio = 0.0;  // max lhs / rhs
    SpaceTimePoint worst_x;
    SpaceTimePoint worst_y;
};

/// Checks |u(X) - u(Y)| <= 2 tau^a L + |x-y| max|D_e u_tau| + |t-s| max|d_t u_tau|
/// at sampled pairs, tau = eps d(X,Y), with maxima taken along the two path segments.
inline ChainResult triangle_chain(const AnalyticFn& u, detail::CuspKind kind, double a, double L, double eps, int pairs,
                                  std::uint64_t seed, const MollifierProfile& p = default_profile())
{
    const int d = u.dim();
    std::seed_seq seq{seed, static_cast<std::uint64_t>(kind == detail::CuspKind::spatial ? 1 : 2),
                      static_cast<std::uint64_t>(std::llround(a * 1000.0))};
    std::mt19937_64 rng(seq);
    auto uni = [&](double lo, double hi) { return detail::uniform(rng, lo, hi); };
    auto sign = [&] { return detail::uniform01(rng) < 0.5 ? -1.0 : 1.0; };
    ChainResult res;
    for (int n = 0; n < pairs; ++n) {
        SpaceTimePoint X = SpaceTimePoint::origin(d);
        for (int k = 0; k < d; ++k) X.x[static_cast<std::size_t>(k)] = uni(-0.5, 0.5);
        X.t = uni(-0.2, 0.2);
        // Concentrate the first point near the singular set.
        if (kind == detail::CuspKind::spatial) {
            X.x[0] = sign() * std::pow(10.0, uni(-4.0, std::log10(0.5)));
        } else {
            X.t = sign() * std::pow(10.0, uni(-6.0, std::log10(0.2)));
        }
        const double dist = std::pow(10.0, uni(-4.0, std::log10(0.25)));
        SpaceTimePoint Y = X;
        std::array<double, kMaxDim> dir{};
        double norm = 0.0;
        for (int k = 0; k < d; ++k) {
            dir[static_cast<std::size_t>(k)] = uni(-1.0, 1.0);
            norm += dir[static_cast<std::size_t>(k)] * dir[static_cast<std::size_t>(k)];
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            dir[0] = 1.0;
            norm = 1.0;
        }
        double dx = dist;
        double dtime = dist * dist;
        if (detail::uniform01(rng) < 0.5) {
            dtime *= uni(0.0, 1.0);
        } else {
            dx *= uni(0.0, 1.0);
        }
        for (int k = 0; k < d; ++k) Y.x[static_cast<std::size_t>(k)] += dx * dir[static_cast<std::size_t>(k)] / norm;
        Y.t += sign() * dtime;
        const double dd = pdist(X, Y);
        if (!(dd > 0.0)) continue;
        const double tau = eps * dd;

        const double lhs = std::abs(u(X) - u(Y));
        const double sx = spatial_distance(X, Y);
        double mx = 0.0;
        if (sx > 0.0) {
            mx = detail::segment_max([&](double s) {
                SpaceTimePoint Z = X;
                for (int k = 0; k < d; ++k) {
                    const auto ku = static_cast<std::size_t>(k);
                    Z.x[ku] = X.x[ku] + s * (Y.x[ku] - X.x[ku]);
                }
                double v = 0.0;
                for (int k = 0; k < d; ++k) {
                    const auto ku = static_cast<std::size_t>(k);
                    v += (Y.x[ku] - X.x[ku]) / sx * mollify_at(u, p, tau, Z, Deriv::along(1, 0, k));
                }
                return v;
            });
        }
        const double st = std::abs(Y.t - X.t);
        double mt = 0.0;
        if (st > 0.0) {
            mt = detail::segment_max([&](double s) {
                SpaceTimePoint Z = Y;
                Z.t = X.t + s * (Y.t - X.t);
                return mollify_at(u, p, tau, Z, Deriv::along(0, 1));
            });
        }
        const double rhs = 2.0 * std::pow(tau, a) * L + sx * mx + st * mt;
        ++res.pairs;
        const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        if (lhs > rhs) ++res.violations;
        if (ratio > res.worst_ratio || res.pairs == 1) {
            res.worst_ratio = ratio;
            res.worst_x = X;
            res.worst_y = Y;
        }
    }
    return res;
}

inline VerifyReport check_norm_equivalence(const SweepConfig& cfg)
{
    VerifyReport rep;
    rep.check = "norm_equivalence";
    const Box D = detail::cusp_domain(cfg.dim);
    const Cylinder Q = detail::cusp_region(cfg.dim);
    const int functions = 2 * static_cast<int>(cfg.cusp_alphas.size());
    int fn_index = 0;
    for (auto kind : {detail::CuspKind::spatial, detail::CuspKind::temporal}) {
        for (double a : cfg.cusp_alphas) {
            const AnalyticFn u = detail::make_cusp(kind, cfg.dim, a);
            const std::string tag = std::string(detail::cusp_name(kind)) + " alpha=" + csv_double(a);
            const int ng = cfg.dim == 1 ? cfg.seminorm_grid : 17;
            const HolderReport hr = holder_seminorm(u, a, Q, ng, ng);
            const double L = hr.seminorm;
            auto M = [&](double tau) {
                const auto s = detail::cusp_sups(u, kind, tau, D, cfg.fine_nodes);
                return std::pair{std::pow(tau, 1.0 - a) * s.dx + std::pow(tau, 2.0 - a) * s.dt, s};
            };
            double S = 0.0;
            std::vector<double> dts;
            for (double tau : cfg.tau_grid) {
                const auto [m, s] = M(tau);
                S = std::max(S, m);
                dts.push_back(s.dt);
                rep.rows.push_back(detail::make_row(std::string(detail::cusp_name(kind)) + ":M",
                                                    {{"alpha", a}, {"tau", tau}}, m, L));
            }
            const auto [m_ref, s_ref] = M(cfg.refine_tau);
            const double S_ref = std::max(S, m_ref);
            rep.rows.push_back(detail::make_row(std::string(detail::cusp_name(kind)) + ":M",
                                                {{"alpha", a}, {"tau", cfg.refine_tau}}, m_ref, L));
            rep.constants.push_back({tag + " S/L", L > 0.0 ? S / L : 0.0, "L witness " + hr.witness_x.str() + " " + hr.witness_y.str()});
            if (L == 0.0) {
                rep.items.push_back(make_item(tag + " S with L = 0", S, Relation::le, 1e-12));
            } else {
                rep.items.push_back(make_item(tag + " S/L", S / L, Relation::in_band, cfg.norm_C, 1.0 / cfg.norm_C));
                rep.items.push_back(make_item(tag + " S stability under refinement", std::abs(S_ref / S - 1.0),
                                              Relation::le, cfg.stability));
            }
            if (kind == detail::CuspKind::temporal) {
                rep.fits.push_back(fit_loglog(tag + " d_t slope", cfg.tau_grid, dts, a - 2.0, cfg.slope_tol));
            }

            const int share = cfg.chain_pairs / functions + (fn_index < cfg.chain_pairs % functions ? 1 : 0);
            const auto chain = triangle_chain(u, kind, a, L, cfg.epsilon_for(a), share, cfg.seed);
            rep.rows.push_back(detail::make_row(std::string(detail::cusp_name(kind)) + ":chain_worst",
                                                {{"alpha", a}, {"pairs", static_cast<double>(chain.pairs)}},
                                                chain.worst_ratio, 1.0));
            rep.constants.push_back({tag + " chain worst lhs/rhs", chain.worst_ratio,
                                     chain.worst_x.str() + " " + chain.worst_y.str()});
            rep.items.push_back(make_item(tag + " chain violations in " + std::to_string(chain.pairs) + " pairs",
                                          chain.violations, Relation::le, 0.0));
            ++fn_index;
        }
    }
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// 5-8. Heat balls

inline VerifyReport check_kernel_mass(const SweepConfig& cfg)
{
    VerifyReport rep;
    rep.check = "kernel_mass";
    for (int d : {1, 2}) {
        for (double r : cfg.r_grid) {
            const auto m = kernel_mass(HeatBall{SpaceTimePoint::origin(d), r}, cfg.quad);
            const double exact = 4.0 * std::pow(r, d);
            rep.rows.push_back(detail::make_row("kernel_mass", {{"dim", static_cast<double>(d)}, {"r", r}}, m.value, exact));
            rep.items.push_back(make_item("relative error d=" + std::to_string(d) + " r=" + csv_double(r),
                                          std::abs(m.value / exact - 1.0), Relation::le, 1e-3));
        }
    }
    rep.finalize();
    return rep;
}

namespace detail {

/// osc of v over a grid of points inside the heat ball.
template <Evaluable V>
double osc_on_ball(const V& v, const HeatBall& ball)
{
    const int d = ball.dim();
    const double c = ball.depth();
    const double rmax = radius(ball.r, c / std::numbers::e, d);
    const int n = d == 1 ? 41 : 21;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t spatial = 1;
    for (int k = 0; k < d; ++k) spatial *= static_cast<std::size_t>(n);
    for (int it = 1; it < n; ++it) {
        SpaceTimePoint Y = ball.center;
        Y.t = ball.center.t - c * it / n;
        for (std::size_t s = 0; s < spatial; ++s) {
            std::size_t rem = s;
            for (int k = 0; k < d; ++k) {
                Y.x[static_cast<std::size_t>(k)] =
                    ball.center.x[static_cast<std::size_t>(k)] - rmax + 2.0 * rmax * static_cast<double>(rem % n) / (n - 1);
                rem /= static_cast<std::size_t>(n);
            }
            if (!contains(ball, Y)) continue;
            const double val = v(Y);
            lo = std::min(lo, val);
            hi = std::max(hi, val);
        }
    }
    return hi >= lo ? hi - lo : 0.0;
}

inline std::vector<HeatBall> suite_balls(int d)
{
    SpaceTimePoint a = SpaceTimePoint::origin(d);
    SpaceTimePoint b = SpaceTimePoint::origin(d);
    b.x[0] = 0.3;
    if (d > 1) b.x[1] = -0.2;
    b.t = 0.4;
    return {HeatBall{a, 0.5}, HeatBall{a, 1.0}, HeatBall{b, 1.0}};
}

}  // namespace detail

inline VerifyReport check_caloric_mean_value(const SweepConfig& cfg)
{
    VerifyReport rep;
    rep.check = "caloric_mean_value";
    for (int d : {1, 2}) {
        std::vector<double> grad(static_cast<std::size_t>(d), 0.0);
        grad[0] = 1.0;
        if (d > 1) grad[1] = -0.5;
        SpaceTimePoint pole = SpaceTimePoint::origin(d);
        pole.x[0] = 0.1;
        pole.t = -0.5;
        const std::vector<AnalyticFn> fns{constant_fn(d, 1.5), affine_fn(d, 0.25, grad), caloric_poly(d),
                                          heat_kernel_shift(pole)};
        for (const auto& v : fns) {
            for (const auto& ball : detail::suite_balls(d)) {
                const auto mv = mean_value(v, ball, cfg.quad);
                const double at = v(ball.center);
                const double osc = detail::osc_on_ball(v, ball);
                const std::vector<Param> params{{"dim", static_cast<double>(d)}, {"r", ball.r}, {"t", ball.center.t}};
                rep.rows.push_back(detail::make_row(v.name(), params, std::abs(mv.value - at), 1e-3 * (1.0 + osc)));
                rep.items.push_back(make_item(v.name() + " d=" + std::to_string(d) + " r=" + csv_double(ball.r) +
                                                  " center=" + ball.center.str(),
                                              std::abs(mv.value - at), Relation::le, 1e-3 * (1.0 + osc)));
            }
        }
    }
    rep.finalize();
    return rep;
}

inline VerifyReport check_subsolution_mean_value(const SweepConfig& cfg)
{
    VerifyReport rep;
    rep.check = "subsolution_mean_value";
    for (int d : {1, 2}) {
        auto one = constant_factor();
        auto sq = make_factor([](auto s) { return s * s; });
        auto lin = make_factor([](auto s) { return s; });
        std::vector<SeparableTerm> norm2;
        for (int k = 0; k < d; ++k) {
            SeparableTerm t{1.0, std::vector<Factor>(static_cast<std::size_t>(d), one), one};
            t.space[static_cast<std::size_t>(k)] = sq;
            norm2.push_back(std::move(t));
        }
        auto minus_t = std::vector<SeparableTerm>{{-1.0, std::vector<Factor>(static_cast<std::size_t>(d), one), lin}};
        auto norm2_minus_t = norm2;
        norm2_minus_t.push_back(minus_t.front());
        std::vector<AnalyticFn> fns{separable_sum(d, norm2, Support::global, "norm_sq"),
                                    separable_sum(d, minus_t, Support::global, "minus_t"),
                                    separable_sum(d, norm2_minus_t, Support::global, "norm_sq_minus_t")};

        for (const auto& ball : detail::suite_balls(d)) {
            std::vector<std::pair<std::string, AnalyticFn>> suite;
            for (const auto& f : fns) suite.emplace_back(f.name(), f);

            // Caloric minus a nonnegative bump whose peak sits at the ball's center.
            SpaceTimePoint bc = ball.center;
            bc.t = ball.center.t + 0.5;
            const AnalyticFn bump = compact_bump(Cylinder{bc, 1.0});
            const AnalyticFn cal = caloric_poly(d);
            suite.emplace_back("caloric_minus_bump",
                               AnalyticFn(
                                   d, [cal, bump](const SpaceTimePoint& X) { return cal(X) - bump(X); }, {},
                                   DerivOrder{0, 0}, Support::global, "caloric_minus_bump"));

            // Lifts of w with d_t w - Laplacian w = M.
            const double M = 1.5;
            const GridSpec check_grid(Box::make(d, ball.center.x[0] - 1.0, ball.center.x[0] + 1.0,
                                                ball.center.t - ball.depth(), ball.center.t),
                                      d == 1 ? 17 : 9, 9);
            std::vector<SeparableTerm> mt{{M, std::vector<Factor>(static_cast<std::size_t>(d), one), lin}};
            auto cal_mt = mt;
            for (int k = 0; k < d; ++k) {
                SeparableTerm t{1.0, std::vector<Factor>(static_cast<std::size_t>(d), one), one};
                t.space[static_cast<std::size_t>(k)] = sq;
                cal_mt.push_back(std::move(t));
            }
            cal_mt.push_back({2.0 * d, std::vector<Factor>(static_cast<std::size_t>(d), one), lin});
            suite.emplace_back("lift(M t)", subsolution_lift(separable_sum(d, mt, Support::global, "Mt"), M, check_grid));
            suite.emplace_back("lift(caloric + M t)",
                               subsolution_lift(separable_sum(d, cal_mt, Support::global, "caloric_Mt"), M, check_grid));

            for (const auto& [name, v] : suite) {
                const auto mv = mean_value(v, ball, cfg.quad);
                const double at = v(ball.center);
                const std::vector<Param> params{{"dim", static_cast<double>(d)}, {"r", ball.r}, {"t", ball.center.t}};
                rep.rows.push_back(detail::make_row(name, params, mv.value, at));
                rep.items.push_back(make_item(name + " d=" + std::to_string(d) + " r=" + csv_double(ball.r) +
                                                  " center=" + ball.center.str(),
                                              mv.value, Relation::ge, at - 1e-6));
            }
        }
    }
    rep.finalize();
    return rep;
}

/// Closed form of the scaling integral, (1/r^d)(2d)^(a/2) c^g Gamma(a/2+1) / g^(a/2+1).
inline double scaling_integral_exact(int alpha, int beta, double r, int d)
{
    const double g = 0.5 * alpha - beta + 1.0;
    if (!(g > 0.0)) throw Divergent("scaling_integral_exact: divergent parameters");
    const double c = r * r / (4.0 * std::numbers::pi);
    return std::pow(2.0 * d, 0.5 * alpha) * std::pow(c, g) * std::tgamma(0.5 * alpha + 1.0) /
           std::pow(g, 0.5 * alpha + 1.0) / std::pow(r, d);
}

inline VerifyReport check_scaling_integral(const SweepConfig& cfg)
{
    VerifyReport rep;
    rep.check = "scaling_integral";
    const int d = cfg.scaling_dim;
    const std::vector<std::pair<std::string, std::pair<int, int>>> cases{
        {"(2,2)", {2, 2}}, {"(4,2)", {4, 2}}, {"(d+1,2)", {d + 1, 2}}};
    for (const auto& [label, ab] : cases) {
        const auto [a, b] = ab;
        const double expected = -d + a - 2.0 * b + 2.0;
        const std::string tag = label + " alpha=" + std::to_string(a) + " beta=" + std::to_string(b) +
                                " d=" + std::to_string(d);
        std::vector<double> vals;
        try {
            for (double r : cfg.scaling_r) {
                const auto v = scaling_integral(a, b, r, d, cfg.quad);
                vals.push_back(v.value);
                rep.rows.push_back(detail::make_row(label, {{"alpha", double(a)}, {"beta", double(b)}, {"r", r}}, v.value,
                                                    scaling_integral_exact(a, b, r, d)));
            }
        } catch (const Divergent& e) {
            rep.items.push_back(failed_item(tag + " slope",
                                            "integral diverges: alpha/2 - beta + 1 = " +
                                                csv_double(0.5 * a - b + 1.0) + " <= 0, so the sigma -> 0 endpoint is "
                                                "not integrable and no slope exists"));
            rep.notes.push_back(tag + ": " + e.what());
            continue;
        }
        rep.fits.push_back(fit_loglog(tag + " slope", cfg.scaling_r, vals, expected, cfg.scaling_tol));
        for (std::size_t i = 1; i < vals.size(); ++i) {
            const double q = cfg.scaling_r[i] / cfg.scaling_r[i - 1];
            rep.items.push_back(make_item(tag + " ratio r=" + csv_double(cfg.scaling_r[i]),
                                          std::abs(vals[i] / vals[i - 1] / std::pow(q, expected) - 1.0), Relation::le,
                                          1e-3));
        }
    }
    // The same exponent in two dimensions, for information only.
    try {
        std::vector<double> vals;
        for (double r : cfg.scaling_r) vals.push_back(scaling_integral(3, 2, r, 2, cfg.quad).value);
        const auto f = fit_loglog("(3,2) d=2", cfg.scaling_r, vals, -2.0 + 3.0 - 4.0 + 2.0, cfg.scaling_tol);
        rep.notes.push_back("informational: (alpha,beta)=(3,2) at d=2 fitted slope " + csv_double(f.slope) +
                            " expected " + csv_double(f.expected));
    } catch (const Error& e) {
        rep.notes.push_back(std::string("informational (3,2) d=2 failed: ") + e.what());
    }
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// 9. Frozen residual

inline Field hessian_l1(const AnalyticFn& u, const GridSpec& g)
{
    return sample(
        [&](const SpaceTimePoint& X) {
            const Mat H = hessian(u, X);
            return H.cwiseAbs().sum();
        },
        g);
}

inline double coefficient_seminorm(const CoefficientField& a, double alpha, const Cylinder& Q, const GridSpec& g)
{
    double s = 0.0;
    for (int i = 0; i < a.dim; ++i) {
        for (int j = i; j < a.dim; ++j) {
            const Field f = sample([&](const SpaceTimePoint& X) { return a(X)(i, j); }, g);
            s = std::max(s, holder_seminorm(f, alpha, Q).seminorm);
        }
    }
    return s;
}

inline VerifyReport check_frozen_residual(const SweepConfig& cfg)
{
    VerifyReport rep;
    rep.check = "frozen_residual";
    const auto family = default_problem_family(cfg.family(cfg.family_count));
    const SpaceTimePoint X0 = cfg.X0();
    const int n = cfg.dim == 1 ? 17 : 9;
    for (const auto& p : family) {
        const FrozenForm ff = freeze(p, X0);
        const double g0 = ff.g(X0);
        rep.items.push_back(make_item(p.name + " g(X0)", std::abs(g0), Relation::le, 0.0));
        for (double rho : cfg.rho_grid) {
            const Cylinder Q{X0, rho};
            const GridSpec g(Box::bounding(Q), n, n);
            const double sup_g = sup_norm(sample(ff.g, g), Q);
            const double semi_a = coefficient_seminorm(p.a, cfg.alpha, Q, g);
            const double semi_f = holder_seminorm(sample(p.f, g), cfg.alpha, Q).seminorm;
            const double d2 = sup_norm(hessian_l1(p.u, g), Q);
            const double bound = std::pow(rho, cfg.alpha) * (semi_a * d2 + semi_f);
            rep.rows.push_back(detail::make_row(p.name, {{"rho", rho}}, sup_g, bound));
            rep.items.push_back(make_item(p.name + " rho=" + csv_double(rho), sup_g, Relation::le,
                                          cfg.residual_factor * bound));
        }
    }
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// 10. Derivative estimates

struct EstimateSample {
    std::array<double, 4> lhs{};
    std::array<double, 4> rhs{};
    double osc_xx = 0.0;
    double osc_t = 0.0;
};

inline const std::array<const char*, 4>& estimate_names()
{
    static const std::array<const char*, 4> n{"d_x^3", "d_t d_x^2", "d_x d_t", "d_t^2"};
    return n;
}

/// Both sides of the four interior derivative estimates at X0 for one tau, with R = N tau,
/// after freezing at X0 and normalizing coordinates. Derivatives are along e_1.
inline EstimateSample derivative_estimates_at(const ManufacturedProblem& p, const FrozenForm& ff, double tau, double N,
                                              const MollifierProfile& prof = default_profile())
{
    const int d = p.u.dim();
    const double R = N * tau;
    const auto ut = in_normalized_coords(p.u, ff.T_inv);
    const auto gt = in_normalized_coords(ff.g, ff.T_inv);
    const SpaceTimePoint X0p = to_normalized(ff.X0, ff.T);
    const std::array<Deriv, 4> orders{Deriv::along(3, 0), Deriv::along(2, 1), Deriv::along(1, 1), Deriv::along(0, 2)};

    EstimateSample s;
    std::array<double, 4> lhs{};
    mollify_point(ut, prof, tau, X0p, std::span<const Deriv>(orders), std::span<double>(lhs));
    for (int k = 0; k < 4; ++k) s.lhs[static_cast<std::size_t>(k)] = std::abs(lhs[static_cast<std::size_t>(k)]);

    const Cylinder Q{X0p, R};
    const Box qb = Box::bounding(Q);
    // Exact second derivative along e_1 in normalized coordinates: v^T H v with v = T^{-1} e_1.
    Eigen::VectorXd v = ff.T_inv.col(0);
    const int n_osc = d == 1 ? 17 : 9;
    const GridSpec og(qb, n_osc, n_osc);
    const Field dxx = sample(
        [&](const SpaceTimePoint& Xp) {
            SpaceTimePoint X = Xp;
            for (int i = 0; i < d; ++i) {
                double acc = 0.0;
                for (int j = 0; j < d; ++j) acc += ff.T_inv(i, j) * Xp.x[static_cast<std::size_t>(j)];
                X.x[static_cast<std::size_t>(i)] = acc;
            }
            return static_cast<double>(v.transpose() * hessian(p.u, X) * v);
        },
        og);
    const Field dt = sample(
        [&](const SpaceTimePoint& Xp) {
            SpaceTimePoint X = Xp;
            for (int i = 0; i < d; ++i) {
                double acc = 0.0;
                for (int j = 0; j < d; ++j) acc += ff.T_inv(i, j) * Xp.x[static_cast<std::size_t>(j)];
                X.x[static_cast<std::size_t>(i)] = acc;
            }
            return p.u.derivative(X, Deriv::along(0, 1));
        },
        og);
    s.osc_xx = osc(dxx, Q);
    s.osc_t = osc(dt, Q);

    Box dom = qb;
    for (int k = 0; k < d; ++k) {
        dom.lo[static_cast<std::size_t>(k)] -= 2.0 * tau;
        dom.hi[static_cast<std::size_t>(k)] += 2.0 * tau;
    }
    dom.t_lo -= 2.0 * tau * tau;
    dom.t_hi += 2.0 * tau * tau;
    const int n_g = d == 1 ? 9 : 5;
    const auto gfields = mollify_many(gt, dom, prof, tau, GridSpec(qb, n_g, n_g), std::span<const Deriv>(orders));
    std::array<double, 4> gsup{};
    for (int k = 0; k < 4; ++k) gsup[static_cast<std::size_t>(k)] = sup_norm(gfields[static_cast<std::size_t>(k)], Q);

    s.rhs[0] = s.osc_xx / R + R * R * gsup[0];
    s.rhs[1] = s.osc_xx / (R * R) + R * R * gsup[1];
    s.rhs[2] = s.osc_t / R + R * R * gsup[2];
    s.rhs[3] = s.osc_t / (R * R) + R * R * gsup[3];
    return s;
}

inline VerifyReport check_derivative_estimates(const SweepConfig& cfg)
{
    VerifyReport rep;
    rep.check = "derivative_estimates";
    const auto family = default_problem_family(cfg.family(cfg.family_count));
    const SpaceTimePoint X0 = cfg.X0();
    const auto& names = estimate_names();
    const std::size_t nt = cfg.estimate_taus.size();
    // ratio[e][tau][problem]
    std::vector<std::vector<std::vector<double>>> ratio(4, std::vector<std::vector<double>>(nt));
    std::vector<std::vector<double>> osc_over_R(family.size());
    std::vector<double> Rs;
    for (double tau : cfg.estimate_taus) Rs.push_back(cfg.N * tau);

    for (std::size_t k = 0; k < family.size(); ++k) {
        const auto& p = family[k];
        const Cylinder need{X0, cfg.N * cfg.estimate_taus.front() + 2.0 * cfg.estimate_taus.front()};
        if (!p.domain.contains_closure(need.center)) throw OutOfDomain("derivative estimates: X0 outside the domain");
        const FrozenForm ff = freeze(p, X0);
        for (std::size_t i = 0; i < nt; ++i) {
            const double tau = cfg.estimate_taus[i];
            const auto s = derivative_estimates_at(p, ff, tau, cfg.N);
            for (std::size_t e = 0; e < 4; ++e) {
                const double r = s.rhs[e] > 0.0 ? s.lhs[e] / s.rhs[e] : std::numeric_limits<double>::infinity();
                ratio[e][i].push_back(r);
                rep.rows.push_back(detail::make_row(p.name + ":" + names[e], {{"tau", tau}, {"R", cfg.N * tau}},
                                                    s.lhs[e], s.rhs[e]));
            }
            osc_over_R[k].push_back(s.osc_xx / (cfg.N * tau));
        }
    }

    for (std::size_t e = 0; e < 4; ++e) {
        bool finite = true;
        double running = 0.0;
        double first = 0.0;
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t i = 0; i < nt; ++i) {
            double m = 0.0;
            for (double r : ratio[e][i]) {
                finite = finite && std::isfinite(r);
                m = std::max(m, r);
            }
            running = std::max(running, m);
            if (i == 0) first = running;
            lo = std::min(lo, m);
            hi = std::max(hi, m);
            rep.constants.push_back({std::string(names[e]) + " C(tau=" + csv_double(cfg.estimate_taus[i]) + ")", running,
                                     "max over family at this tau " + csv_double(m)});
        }
        const std::string tag = std::string("estimate ") + names[e];
        if (!finite) {
            rep.items.push_back(failed_item(tag + " finite", "a ratio is not finite"));
            continue;
        }
        rep.items.push_back(make_item(tag + " C_finest / C_coarsest", first > 0.0 ? running / first : 1.0,
                                      Relation::le, cfg.band));
        rep.notes.push_back(tag + ": per-tau max ratio spread " + csv_double(lo > 0.0 ? hi / lo : 0.0));
    }
    for (std::size_t k = 0; k < family.size(); ++k) {
        auto f = fit_loglog(family[k].name + " (1/R) osc d_x^2 u slope", Rs, osc_over_R[k], 0.0, 0.0);
        f.pass = f.slope >= -cfg.slope_tol;
        rep.fits.push_back(f);
    }
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// 11. End-to-end Schauder ratio

struct SchauderTerms {
    double semi_dxx = 0.0;
    double semi_dt = 0.0;
    double semi_f = 0.0;
    double sup_u = 0.0;
    double ratio() const { return (semi_dxx + semi_dt) / (semi_f + sup_u); }
};

inline SchauderTerms schauder_terms(const ManufacturedProblem& p, double alpha, int n)
{
    const GridSpec g(Box::bounding(p.domain), n, n);
    SchauderTerms s;
    const int d = p.u.dim();
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            s.semi_dxx = std::max(s.semi_dxx,
                                  holder_seminorm(sample_derivative(p.u, second_derivative(i, j), g), alpha, p.domain).seminorm);
        }
    }
    s.semi_dt = holder_seminorm(sample_derivative(p.u, Deriv::along(0, 1), g), alpha, p.domain).seminorm;
    s.semi_f = holder_seminorm(sample(p.f, g), alpha, p.domain).seminorm;
    s.sup_u = sup_norm(sample(p.u, g), p.domain);
    if (s.semi_f + s.sup_u == 0.0) throw PreconditionViolated("schauder: degenerate problem with f = 0 and u = 0");
    return s;
}

inline VerifyReport check_schauder(const SweepConfig& cfg)
{
    VerifyReport rep;
    rep.check = "schauder";
    const auto big = default_problem_family(cfg.family(2 * cfg.family_count));
    double max10 = 0.0;
    double max20 = 0.0;
    double max10_ref = 0.0;
    std::string wit10;
    std::string wit20;
    bool finite = true;
    double worst_scale = 0.0;
    for (std::size_t k = 0; k < big.size(); ++k) {
        const auto& p = big[k];
        const auto t = schauder_terms(p, cfg.alpha, cfg.schauder_grid);
        const double r = t.ratio();
        finite = finite && std::isfinite(r);
        rep.rows.push_back(detail::make_row(p.name, {{"n", double(cfg.schauder_grid)}}, t.semi_dxx + t.semi_dt,
                                            t.semi_f + t.sup_u));
        if (r > max20) {
            max20 = r;
            wit20 = p.name;
        }
        if (static_cast<int>(k) < cfg.family_count) {
            if (r > max10) {
                max10 = r;
                wit10 = p.name;
            }
            const auto tr = schauder_terms(p, cfg.alpha, cfg.schauder_refined);
            rep.rows.push_back(detail::make_row(p.name, {{"n", double(cfg.schauder_refined)}}, tr.semi_dxx + tr.semi_dt,
                                                tr.semi_f + tr.sup_u));
            max10_ref = std::max(max10_ref, tr.ratio());
            const auto ts = schauder_terms(scaled(p, 3.0), cfg.alpha, cfg.schauder_grid);
            worst_scale = std::max(worst_scale, std::abs(ts.ratio() / r - 1.0));
        }
    }
    rep.constants.push_back({"C(family of " + std::to_string(cfg.family_count) + ")", max10, wit10});
    rep.constants.push_back({"C(family of " + std::to_string(2 * cfg.family_count) + ")", max20, wit20});
    rep.constants.push_back({"C(family of " + std::to_string(cfg.family_count) + ", refined grid)", max10_ref, wit10});
    rep.items.push_back(make_item("max ratio finite", finite ? max10 : std::numeric_limits<double>::infinity(),
                                  Relation::le, std::numeric_limits<double>::max()));
    rep.items.push_back(make_item("u -> 3u relative change", worst_scale, Relation::le, 1e-12));
    rep.items.push_back(make_item("family doubling factor", max20 / max10, Relation::in_band, cfg.family_factor,
                                  1.0 / cfg.family_factor));
    rep.items.push_back(make_item("grid refinement relative change", std::abs(max10_ref / max10 - 1.0), Relation::le,
                                  cfg.refine_change));
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// Suite

inline VerifyReport run_check(const std::string& name, const SweepConfig& cfg)
{
    cfg.validate();
    if (name == "mollifier_mass") return check_mollifier_mass(cfg);
    if (name == "sup_contraction") return check_sup_contraction(cfg);
    if (name == "holder_mollification") return check_holder_mollification(cfg);
    if (name == "norm_equivalence") return check_norm_equivalence(cfg);
    if (name == "kernel_mass") return check_kernel_mass(cfg);
    if (name == "caloric_mean_value") return check_caloric_mean_value(cfg);
    if (name == "subsolution_mean_value") return check_subsolution_mean_value(cfg);
    if (name == "scaling_integral") return check_scaling_integral(cfg);
    if (name == "frozen_residual") return check_frozen_residual(cfg);
    if (name == "derivative_estimates") return check_derivative_estimates(cfg);
    if (name == "schauder") return check_schauder(cfg);
    throw InvalidArgument("unknown check '" + name + "'");
}

/// Write report_<check>.json and sweep_<check>.csv; returns the file names.
inline std::vector<std::string> write_report(const VerifyReport& r, const fs::path& dir, const std::string& format = "both")
{
    std::vector<std::string> files;
    if (format == "json" || format == "both") {
        files.push_back("report_" + r.check + ".json");
        write_text(dir / files.back(), to_json(r).dump(2) + '\n');
    }
    if (format == "csv" || format == "both") {
        files.push_back("sweep_" + r.check + ".csv");
        write_text(dir / files.back(), to_csv(r));
    }
    return files;
}

/// Runs the named checks (all when empty), writes reports, the family manifest and manifest.json.
/// The optional hook sees each report as it completes.
inline std::vector<VerifyReport> run_suite(const SweepConfig& cfg, const fs::path& dir,
                                           const std::vector<std::string>& only = {},
                                           const std::function<void(const VerifyReport&)>& hook = {},
                                           const std::string& format = "both")
{
    cfg.validate();
    if (cfg.dim != 1) throw InvalidArgument("suite: only dim = 1 is supported");
    fs::create_directories(dir);
    std::vector<VerifyReport> out;
    std::vector<std::string> files;
    for (const auto& name : check_names()) {
        if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
        out.push_back(run_check(name, cfg));
        if (hook) hook(out.back());
        for (auto& f : write_report(out.back(), dir, format)) files.push_back(f);
    }
    files.push_back("family.json");
    write_text(dir / files.back(), family_manifest(cfg.family(cfg.family_count)).dump(2) + '\n');
    write_manifest(dir, files, to_json(cfg));
    return out;
}

}  // namespace schauder
