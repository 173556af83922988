#pragma once

// The built-in test-function family used by the experiments.

#include "schauder/error.hpp"
#include "schauder/field.hpp"
#include "schauder/jet.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace schauder {

/// exp(-1/(1-s^2)) on |s| < 1, zero elsewhere. Works for double and Jet.
template <class T>
T bump_profile(const T& s)
{
    using std::exp;
    const double v = value_of(s);
    if (!(std::abs(v) < 1.0)) return T(0.0);
    return exp(-1.0 / (1.0 - s * s));
}

inline AnalyticFn constant_fn(int dim, double c)
{
    std::vector<SeparableTerm> terms(1);
    terms[0].coeff = c;
    terms[0].space.assign(static_cast<std::size_t>(dim), constant_factor());
    terms[0].time = constant_factor();
    return separable_sum(dim, std::move(terms), Support::global, "constant");
}

/// c0 + b . x + bt * t
inline AnalyticFn affine_fn(int dim, double c0, std::vector<double> b, double bt = 0.0)
{
    if (b.empty()) b.assign(static_cast<std::size_t>(dim), 0.0);
    if (static_cast<int>(b.size()) != dim) throw InvalidArgument("affine: gradient length must equal dim");
    auto one = constant_factor();
    auto lin = make_factor([](auto s) { return s; });
    std::vector<SeparableTerm> terms;
    terms.push_back({c0, std::vector<Factor>(static_cast<std::size_t>(dim), one), one});
    for (int k = 0; k < dim; ++k) {
        SeparableTerm term{b[static_cast<std::size_t>(k)], std::vector<Factor>(static_cast<std::size_t>(dim), one), one};
        term.space[static_cast<std::size_t>(k)] = lin;
        terms.push_back(std::move(term));
    }
    terms.push_back({bt, std::vector<Factor>(static_cast<std::size_t>(dim), one), lin});
    return separable_sum(dim, std::move(terms), Support::global, "affine");
}

/// |x|^2 + 2 dim t, a caloric polynomial (x^2 + 2t in one dimension).
inline AnalyticFn caloric_poly(int dim)
{
    auto one = constant_factor();
    auto sq = make_factor([](auto s) { return s * s; });
    auto lin = make_factor([](auto s) { return s; });
    std::vector<SeparableTerm> terms;
    for (int k = 0; k < dim; ++k) {
        SeparableTerm term{1.0, std::vector<Factor>(static_cast<std::size_t>(dim), one), one};
        term.space[static_cast<std::size_t>(k)] = sq;
        terms.push_back(std::move(term));
    }
    terms.push_back({2.0 * dim, std::vector<Factor>(static_cast<std::size_t>(dim), one), lin});
    return separable_sum(dim, std::move(terms), Support::global, "caloric_poly");
}

/// |x|^alpha (Euclidean norm). Hoelder-alpha with seminorm exactly 1; no derivatives.
inline AnalyticFn spatial_cusp(int dim, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("spatial_cusp: alpha must lie in (0, 1)");
    return AnalyticFn(
        dim, [alpha](const SpaceTimePoint& X) { return std::pow(X.spatial_norm(), alpha); }, {}, DerivOrder{0, 0},
        Support::global, "spatial_cusp");
}

/// |t|^(alpha/2). Hoelder-alpha in the parabolic metric with seminorm exactly 1.
inline AnalyticFn temporal_cusp(int dim, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("temporal_cusp: alpha must lie in (0, 1)");
    return AnalyticFn(
        dim, [alpha](const SpaceTimePoint& X) { return std::pow(std::abs(X.t), 0.5 * alpha); }, {}, DerivOrder{0, 0},
        Support::global, "temporal_cusp");
}

/// Heat kernel with pole at (x0, t0); zero for t <= t0.
inline AnalyticFn heat_kernel_shift(const SpaceTimePoint& pole)
{
    const int dim = pole.dim;
    auto value = [pole, dim](const SpaceTimePoint& X) {
        const double s = X.t - pole.t;
        if (!(s > 0.0)) return 0.0;
        const double r2 = spatial_distance(X, pole) * spatial_distance(X, pole);
        return std::pow(4.0 * std::numbers::pi * s, -0.5 * dim) * std::exp(-r2 / (4.0 * s));
    };
    // Time derivatives become Laplacians: d_t^j d^b Phi = Lap^j d^b Phi.
    auto deriv = [pole, dim](const SpaceTimePoint& X, const Deriv& d) {
        const double s = X.t - pole.t;
        if (!(s > 0.0)) return 0.0;
        std::array<Jet7, kMaxDim> g;
        for (int k = 0; k < dim; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            const Jet7 y = Jet7::variable(X.x[ku] - pole.x[ku]);
            g[ku] = exp(-(y * y) / (4.0 * s));
        }
        const double pref = std::pow(4.0 * std::numbers::pi * s, -0.5 * dim);
        auto spatial = [&](const std::array<int, kMaxDim>& b) {
            double v = pref;
            for (int k = 0; k < dim; ++k) {
                v *= g[static_cast<std::size_t>(k)].derivative(static_cast<std::size_t>(b[static_cast<std::size_t>(k)]));
            }
            return v;
        };
        std::function<double(std::array<int, kMaxDim>, int)> lap = [&](std::array<int, kMaxDim> b, int j) {
            if (j == 0) return spatial(b);
            double acc = 0.0;
            for (int m = 0; m < dim; ++m) {
                auto bb = b;
                bb[static_cast<std::size_t>(m)] += 2;
                acc += lap(bb, j - 1);
            }
            return acc;
        };
        return lap(d.x, d.t);
    };
    return AnalyticFn(dim, value, deriv, DerivOrder{3, 2}, Support::global, "heat_kernel_shift");
}

/// Smooth bump supported in the closure of the cylinder, peak value 1 at the
/// cylinder's spatial center and mid-time. Per-axis half-width R/sqrt(dim)
/// keeps the spatial support inside the ball.
inline AnalyticFn compact_bump(const Cylinder& q)
{
    const int dim = q.dim();
    const double half = q.R / std::sqrt(static_cast<double>(dim));
    std::vector<SeparableTerm> terms(1);
    terms[0].coeff = 1.0;
    for (int k = 0; k < dim; ++k) {
        const double c = q.center.x[static_cast<std::size_t>(k)];
        terms[0].space.push_back(
            make_factor([c, half](auto s) { return std::numbers::e * bump_profile((s - c) / half); }));
    }
    const double tc = q.center.t;
    const double r2 = q.R * q.R;
    terms[0].time = make_factor([tc, r2](auto t) { return std::numbers::e * bump_profile((2.0 * (t - tc) + r2) / r2); });
    return separable_sum(dim, std::move(terms), Support::compact_in_cylinder, "compact_bump");
}

struct BuiltinParams {
    int dim = 1;
    double alpha = 0.5;
    double constant = 1.0;
    std::vector<double> gradient;  // affine slope; empty means e_0
    double time_slope = 0.0;
    SpaceTimePoint pole = SpaceTimePoint::origin(1);
    Cylinder support{SpaceTimePoint::origin(1), 1.0};
};

inline const std::vector<std::string>& builtin_names()
{
    static const std::vector<std::string> names{"constant",     "affine",       "spatial_cusp", "temporal_cusp",
                                                "caloric_poly", "heat_kernel_shift", "compact_bump"};
    return names;
}

/// Look up a built-in test function by name.
inline AnalyticFn builtin_family(std::string_view name, const BuiltinParams& p = {})
{
    if (name == "constant") return constant_fn(p.dim, p.constant);
    if (name == "affine") {
        std::vector<double> g = p.gradient;
        if (g.empty()) {
            g.assign(static_cast<std::size_t>(p.dim), 0.0);
            g[0] = 1.0;
        }
        return affine_fn(p.dim, 0.0, g, p.time_slope);
    }
    if (name == "spatial_cusp") return spatial_cusp(p.dim, p.alpha);
    if (name == "temporal_cusp") return temporal_cusp(p.dim, p.alpha);
    if (name == "caloric_poly") return caloric_poly(p.dim);
    if (name == "heat_kernel_shift") {
        if (p.pole.dim != p.dim) throw InvalidArgument("heat_kernel_shift: pole dimension mismatch");
        return heat_kernel_shift(p.pole);
    }
    if (name == "compact_bump") {
        if (p.support.dim() != p.dim) throw InvalidArgument("compact_bump: support dimension mismatch");
        return compact_bump(p.support);
    }
    throw InvalidArgument("builtin_family: unknown function '" + std::string(name) + "'");
}

}  // namespace schauder
