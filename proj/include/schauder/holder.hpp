#pragma once

// Parabolic distance, Hoelder seminorms, oscillation and the |.|_{2,1,alpha} norm.

#include "schauder/error.hpp"
#include "schauder/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace schauder {

/// d(X, Y) = max(|x - y|, |t - s|^(1/2)).
inline double pdist(const SpaceTimePoint& X, const SpaceTimePoint& Y)
{
    if (X.dim != Y.dim) throw InvalidArgument("pdist: dimension mismatch");
    return std::max(spatial_distance(X, Y), std::sqrt(std::abs(X.t - Y.t)));
}

struct HolderReport {
    double alpha = 0.5;
    double seminorm = 0.0;
    SpaceTimePoint witness_x;
    SpaceTimePoint witness_y;
    std::uint64_t pairs_scanned = 0;
};

inline constexpr std::uint64_t kDefaultPairBudget = 20'000'000;

namespace detail {

inline void check_alpha(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("holder: alpha must lie in (0, 1)");
}

/// Node mask for the closure of a cylinder (all nodes when no region is given).
inline std::vector<char> region_mask(const GridSpec& g, const std::optional<Cylinder>& region)
{
    std::vector<char> mask(g.node_count(), 1);
    if (!region) return mask;
    if (region->dim() != g.dim()) throw InvalidArgument("holder: region dimension mismatch");
    if (!g.bounds.contains_box(Box::bounding(*region), 1e-9)) {
        throw OutOfDomain("holder: region is not inside the field's bounds");
    }
    bool any = false;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        mask[i] = region->contains_closure(g.node(i), 1e-9) ? 1 : 0;
        any = any || mask[i];
    }
    if (!any) throw InvalidArgument("holder: region contains no grid nodes");
    return mask;
}

struct Offset {
    std::array<int, kMaxDim> o{};
    int ot = 0;
};

/// Scan difference quotients over a deterministic pair set.
///
/// All grid pairs when they fit in the budget; otherwise all offsets whose
/// components are multiples of a power-of-two stride plus every
/// nearest-neighbour offset. A larger budget selects a smaller stride, whose
/// offset set contains the larger stride's, so reports are monotone in budget.
inline HolderReport scan_pairs(const GridSpec& g, std::span<const double> v, const std::vector<char>& mask, double alpha,
                               std::uint64_t budget)
{
    check_alpha(alpha);
    const int d = g.dim();
    const int nx = g.nx;
    const int nt = g.nt;

    auto is_positive = [d](const Offset& off) {
        if (off.ot != 0) return off.ot > 0;
        for (int k = d - 1; k >= 0; --k) {
            const int c = off.o[static_cast<std::size_t>(k)];
            if (c != 0) return c > 0;
        }
        return false;
    };
    auto is_neighbour = [d](const Offset& off) {
        if (std::abs(off.ot) > 1) return false;
        for (int k = 0; k < d; ++k) {
            if (std::abs(off.o[static_cast<std::size_t>(k)]) > 1) return false;
        }
        return true;
    };
    auto divisible = [d](const Offset& off, int s) {
        if (off.ot % s != 0) return false;
        for (int k = 0; k < d; ++k) {
            if (off.o[static_cast<std::size_t>(k)] % s != 0) return false;
        }
        return true;
    };
    auto pair_count = [d, nx, nt](const Offset& off) {
        std::uint64_t c = static_cast<std::uint64_t>(nt - std::abs(off.ot));
        for (int k = 0; k < d; ++k) c *= static_cast<std::uint64_t>(nx - std::abs(off.o[static_cast<std::size_t>(k)]));
        return c;
    };

    std::vector<Offset> all;
    {
        const int span = 2 * nx - 1;
        std::size_t spatial = 1;
        for (int k = 0; k < d; ++k) spatial *= static_cast<std::size_t>(span);
        for (int ot = 0; ot < nt; ++ot) {
            for (std::size_t s = 0; s < spatial; ++s) {
                Offset off;
                off.ot = ot;
                std::size_t rem = s;
                for (int k = 0; k < d; ++k) {
                    off.o[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(span)) - (nx - 1);
                    rem /= static_cast<std::size_t>(span);
                }
                if (is_positive(off)) all.push_back(off);
            }
        }
    }

    int stride = 1;
    const int max_extent = std::max(nx, nt);
    while (true) {
        std::uint64_t count = 0;
        for (const auto& off : all) {
            if (is_neighbour(off) || divisible(off, stride)) count += pair_count(off);
        }
        if (count <= budget || stride >= max_extent) break;
        stride *= 2;
    }

    std::array<std::size_t, kMaxDim> strides{};
    std::size_t st = 1;
    for (int k = 0; k < d; ++k) {
        strides[static_cast<std::size_t>(k)] = st;
        st *= static_cast<std::size_t>(nx);
    }
    const std::size_t stride_t = st;

    HolderReport rep;
    rep.alpha = alpha;
    double best = -1.0;
    std::size_t best_a = 0;
    std::size_t best_b = 0;
    std::uint64_t scanned = 0;

    for (const auto& off : all) {
        if (!(is_neighbour(off) || divisible(off, stride))) continue;
        double dx2 = 0.0;
        for (int k = 0; k < d; ++k) {
            const double c = off.o[static_cast<std::size_t>(k)] * g.hx(k);
            dx2 += c * c;
        }
        const double dist = std::max(std::sqrt(dx2), std::sqrt(std::abs(off.ot) * g.ht()));
        const double den = std::pow(dist, alpha);

        std::array<int, kMaxDim> lo{};
        std::array<int, kMaxDim> hi{};
        for (int k = 0; k < kMaxDim; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            if (k < d) {
                lo[ku] = std::max(0, -off.o[ku]);
                hi[ku] = nx - std::max(0, off.o[ku]);
            } else {
                lo[ku] = 0;
                hi[ku] = 1;
            }
        }
        const int t_lo = std::max(0, -off.ot);
        const int t_hi = nt - std::max(0, off.ot);
        std::ptrdiff_t delta = static_cast<std::ptrdiff_t>(off.ot) * static_cast<std::ptrdiff_t>(stride_t);
        for (int k = 0; k < d; ++k) {
            delta += static_cast<std::ptrdiff_t>(off.o[static_cast<std::size_t>(k)]) *
                     static_cast<std::ptrdiff_t>(strides[static_cast<std::size_t>(k)]);
        }

        for (int it = t_lo; it < t_hi; ++it) {
            for (int i2 = lo[2]; i2 < hi[2]; ++i2) {
                for (int i1 = lo[1]; i1 < hi[1]; ++i1) {
                    std::size_t base = static_cast<std::size_t>(it) * stride_t;
                    if (d > 2) base += static_cast<std::size_t>(i2) * strides[2];
                    if (d > 1) base += static_cast<std::size_t>(i1) * strides[1];
                    for (int i0 = lo[0]; i0 < hi[0]; ++i0) {
                        const std::size_t a = base + static_cast<std::size_t>(i0);
                        const auto b = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(a) + delta);
                        if (!mask[a] || !mask[b]) continue;
                        ++scanned;
                        const double r = std::abs(v[a] - v[b]) / den;
                        const std::size_t lo_i = std::min(a, b);
                        const std::size_t hi_i = std::max(a, b);
                        if (r > best || (r == best && std::pair(lo_i, hi_i) < std::pair(best_a, best_b))) {
                            best = r;
                            best_a = lo_i;
                            best_b = hi_i;
                        }
                    }
                }
            }
        }
    }

    rep.pairs_scanned = scanned;
    if (scanned == 0) throw InvalidArgument("holder: region holds fewer than two grid nodes");
    rep.witness_x = g.node(best_a);
    rep.witness_y = g.node(best_b);
    // Report the quotient recomputed from the witness coordinates.
    rep.seminorm = std::abs(v[best_a] - v[best_b]) / std::pow(pdist(rep.witness_x, rep.witness_y), alpha);
    return rep;
}

}  // namespace detail

/// Lower-bound estimate of [u]_alpha over the region's closure from grid pairs.
inline HolderReport holder_seminorm(const Field& u, double alpha, const std::optional<Cylinder>& region = std::nullopt,
                                    std::uint64_t pair_budget = kDefaultPairBudget)
{
    detail::check_alpha(alpha);
    const auto mask = detail::region_mask(u.spec(), region);
    return detail::scan_pairs(u.spec(), u.values(), mask, alpha, pair_budget);
}

/// Same, sampling an evaluable on an nx^d x nt grid over the region's bounding box.
template <Evaluable U>
HolderReport holder_seminorm(const U& u, double alpha, const Cylinder& region, int nx, int nt,
                             std::uint64_t pair_budget = kDefaultPairBudget)
{
    detail::check_alpha(alpha);
    const Field f = sample(u, GridSpec(Box::bounding(region), nx, nt));
    return holder_seminorm(f, alpha, region, pair_budget);
}

/// sup - inf over the grid nodes in the region's closure.
inline double osc(const Field& u, const std::optional<Cylinder>& region = std::nullopt)
{
    const auto mask = detail::region_mask(u.spec(), region);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i]) continue;
        lo = std::min(lo, u.value(i));
        hi = std::max(hi, u.value(i));
    }
    if (!(hi >= lo)) throw InvalidArgument("osc: empty region");
    return hi - lo;
}

template <Evaluable U>
double osc(const U& u, const Cylinder& region, int nx, int nt)
{
    return osc(sample(u, GridSpec(Box::bounding(region), nx, nt)), region);
}

/// sup |u| over the grid nodes in the region's closure.
inline double sup_norm(const Field& u, const std::optional<Cylinder>& region = std::nullopt)
{
    const auto mask = detail::region_mask(u.spec(), region);
    double m = 0.0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) m = std::max(m, std::abs(u.value(i)));
    }
    return m;
}

template <Evaluable U>
double sup_norm(const U& u, const Cylinder& region, int nx, int nt)
{
    return sup_norm(sample(u, GridSpec(Box::bounding(region), nx, nt)), region);
}

/// The terms of |u|_{2,1,alpha}. For dim > 1 the first-derivative term is the
/// gradient norm and second-derivative terms take the largest entry.
struct ParabolicNorm {
    double sup_u = 0.0;
    double sup_dx = 0.0;
    double sup_dxx = 0.0;
    double sup_dt = 0.0;
    double semi_dxx = 0.0;
    double semi_dt = 0.0;

    double total() const { return sup_u + sup_dx + sup_dxx + sup_dt + semi_dxx + semi_dt; }
};

inline Deriv second_derivative(int i, int j)
{
    Deriv d;
    d.x[static_cast<std::size_t>(i)] += 1;
    d.x[static_cast<std::size_t>(j)] += 1;
    return d;
}

inline ParabolicNorm parabolic_norm(const AnalyticFn& u, double alpha, const Cylinder& region, int nx, int nt,
                                    std::uint64_t pair_budget = kDefaultPairBudget)
{
    detail::check_alpha(alpha);
    if (!u.has_derivatives() || u.max_order().spatial < 2 || u.max_order().temporal < 1) {
        throw MissingDerivative("parabolic_norm: '" + u.name() + "' lacks exact derivatives up to (2,1)");
    }
    const int d = u.dim();
    const GridSpec g(Box::bounding(region), nx, nt);
    ParabolicNorm n;
    n.sup_u = sup_norm(sample(u, g), region);
    n.sup_dx = sup_norm(sample(
                            [&](const SpaceTimePoint& X) {
                                double s = 0.0;
                                for (int k = 0; k < d; ++k) {
                                    const double v = u.derivative(X, Deriv::along(1, 0, k));
                                    s += v * v;
                                }
                                return std::sqrt(s);
                            },
                            g),
                        region);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            const Field f = sample_derivative(u, second_derivative(i, j), g);
            n.sup_dxx = std::max(n.sup_dxx, sup_norm(f, region));
            n.semi_dxx = std::max(n.semi_dxx, holder_seminorm(f, alpha, region, pair_budget).seminorm);
        }
    }
    const Field ft = sample_derivative(u, Deriv::along(0, 1), g);
    n.sup_dt = sup_norm(ft, region);
    n.semi_dt = holder_seminorm(ft, alpha, region, pair_budget).seminorm;
    return n;
}

}  // namespace schauder
