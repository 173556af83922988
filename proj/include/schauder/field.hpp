#pragma once

// Space-time points, parabolic cylinders, tensor grids, sampled fields and
// analytic functions with exact derivatives.

#include "schauder/error.hpp"
#include "schauder/jet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace schauder {

inline constexpr int kMaxDim = 3;

inline std::string format_double(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

/// A point X = (x, t) with x in R^dim.
struct SpaceTimePoint {
    int dim = 1;
    std::array<double, kMaxDim> x{};
    double t = 0.0;

    SpaceTimePoint() = default;

    SpaceTimePoint(std::initializer_list<double> xs, double time) : dim(static_cast<int>(xs.size())), t(time)
    {
        if (dim < 1 || dim > kMaxDim) {
            throw InvalidArgument("SpaceTimePoint: dimension must be in [1, " + std::to_string(kMaxDim) + "]");
        }
        std::copy(xs.begin(), xs.end(), x.begin());
        validate();
    }

    static SpaceTimePoint from_span(std::span<const double> xs, double time)
    {
        if (xs.empty() || xs.size() > static_cast<std::size_t>(kMaxDim)) {
            throw InvalidArgument("SpaceTimePoint: dimension must be in [1, " + std::to_string(kMaxDim) + "]");
        }
        SpaceTimePoint p;
        p.dim = static_cast<int>(xs.size());
        std::copy(xs.begin(), xs.end(), p.x.begin());
        p.t = time;
        p.validate();
        return p;
    }

    /// Origin of R^dim x R.
    static SpaceTimePoint origin(int dim)
    {
        if (dim < 1 || dim > kMaxDim) {
            throw InvalidArgument("SpaceTimePoint: dimension must be in [1, " + std::to_string(kMaxDim) + "]");
        }
        SpaceTimePoint p;
        p.dim = dim;
        return p;
    }

    void validate() const
    {
        if (dim < 1 || dim > kMaxDim) {
            throw InvalidArgument("SpaceTimePoint: dimension must be in [1, " + std::to_string(kMaxDim) + "]");
        }
        for (int k = 0; k < dim; ++k) {
            if (!std::isfinite(x[static_cast<std::size_t>(k)])) {
                throw InvalidArgument("SpaceTimePoint: non-finite spatial coordinate");
            }
        }
        if (!std::isfinite(t)) {
            throw InvalidArgument("SpaceTimePoint: non-finite time coordinate");
        }
    }

    std::span<const double> space() const { return {x.data(), static_cast<std::size_t>(dim)}; }

    double spatial_norm() const
    {
        double s = 0.0;
        for (int k = 0; k < dim; ++k) s += x[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(k)];
        return std::sqrt(s);
    }

    std::string str() const
    {
        std::string s = "(";
        for (int k = 0; k < dim; ++k) {
            s += format_double(x[static_cast<std::size_t>(k)]);
            s += ", ";
        }
        s += "t=" + format_double(t) + ")";
        return s;
    }

    friend bool operator==(const SpaceTimePoint& a, const SpaceTimePoint& b)
    {
        if (a.dim != b.dim || a.t != b.t) return false;
        for (int k = 0; k < a.dim; ++k) {
            if (a.x[static_cast<std::size_t>(k)] != b.x[static_cast<std::size_t>(k)]) return false;
        }
        return true;
    }
};

inline double spatial_distance(const SpaceTimePoint& a, const SpaceTimePoint& b)
{
    double s = 0.0;
    for (int k = 0; k < a.dim; ++k) {
        const double d = a.x[static_cast<std::size_t>(k)] - b.x[static_cast<std::size_t>(k)];
        s += d * d;
    }
    return std::sqrt(s);
}

/// Backward parabolic cylinder B_R(center.x) x (center.t - R^2, center.t).
struct Cylinder {
    SpaceTimePoint center;
    double R = 1.0;

    Cylinder() = default;
    Cylinder(SpaceTimePoint c, double radius) : center(c), R(radius)
    {
        center.validate();
        if (!(R > 0.0) || !std::isfinite(R)) {
            throw InvalidArgument("Cylinder: radius must be positive and finite");
        }
    }

    int dim() const { return center.dim; }
    double t_lo() const { return center.t - R * R; }
    double t_hi() const { return center.t; }

    /// Open-set membership.
    bool contains(const SpaceTimePoint& X) const
    {
        return X.dim == center.dim && spatial_distance(X, center) < R && t_lo() < X.t && X.t < center.t;
    }

    /// Membership in the closure, with a relative slack for rounded grid nodes.
    bool contains_closure(const SpaceTimePoint& X, double slack = 1e-12) const
    {
        const double tol = slack * std::max(1.0, R);
        return X.dim == center.dim && spatial_distance(X, center) <= R + tol && t_lo() - tol * R <= X.t &&
               X.t <= center.t + tol * R;
    }
};

/// Axis-aligned space-time box [lo, hi]^dim x [t_lo, t_hi].
struct Box {
    int dim = 1;
    std::array<double, kMaxDim> lo{};
    std::array<double, kMaxDim> hi{};
    double t_lo = 0.0;
    double t_hi = 1.0;

    static Box make(int dim, double x_lo, double x_hi, double t_lo, double t_hi)
    {
        Box b;
        b.dim = dim;
        for (int k = 0; k < dim; ++k) {
            b.lo[static_cast<std::size_t>(k)] = x_lo;
            b.hi[static_cast<std::size_t>(k)] = x_hi;
        }
        b.t_lo = t_lo;
        b.t_hi = t_hi;
        b.validate();
        return b;
    }

    /// Smallest box containing the closure of a cylinder.
    static Box bounding(const Cylinder& c)
    {
        Box b;
        b.dim = c.dim();
        for (int k = 0; k < b.dim; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            b.lo[ku] = c.center.x[ku] - c.R;
            b.hi[ku] = c.center.x[ku] + c.R;
        }
        b.t_lo = c.t_lo();
        b.t_hi = c.t_hi();
        b.validate();
        return b;
    }

    void validate() const
    {
        if (dim < 1 || dim > kMaxDim) throw InvalidArgument("Box: unsupported dimension");
        for (int k = 0; k < dim; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            if (!(hi[ku] > lo[ku]) || !std::isfinite(lo[ku]) || !std::isfinite(hi[ku])) {
                throw InvalidArgument("Box: empty or non-finite spatial extent");
            }
        }
        if (!(t_hi > t_lo) || !std::isfinite(t_lo) || !std::isfinite(t_hi)) {
            throw InvalidArgument("Box: empty or non-finite time extent");
        }
    }

    bool contains(const SpaceTimePoint& X, double slack = 1e-12) const
    {
        if (X.dim != dim) return false;
        for (int k = 0; k < dim; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            const double tol = slack * std::max(1.0, hi[ku] - lo[ku]);
            if (X.x[ku] < lo[ku] - tol || X.x[ku] > hi[ku] + tol) return false;
        }
        const double tol = slack * std::max(1.0, t_hi - t_lo);
        return X.t >= t_lo - tol && X.t <= t_hi + tol;
    }

    /// The box {X : d(X, complement) > tau} in the parabolic metric: tau in space, tau^2 in time.
    Box shrink(double tau) const
    {
        if (!(tau > 0.0)) throw InvalidArgument("Box::shrink: tau must be positive");
        Box b = *this;
        for (int k = 0; k < dim; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            b.lo[ku] += tau;
            b.hi[ku] -= tau;
            if (!(b.hi[ku] > b.lo[ku])) {
                throw InvalidArgument("Box::shrink: tau=" + format_double(tau) + " leaves an empty spatial domain");
            }
        }
        b.t_lo += tau * tau;
        b.t_hi -= tau * tau;
        if (!(b.t_hi > b.t_lo)) {
            throw InvalidArgument("Box::shrink: tau=" + format_double(tau) + " leaves an empty time domain");
        }
        return b;
    }

    bool contains_box(const Box& o, double slack = 1e-12) const
    {
        SpaceTimePoint a = SpaceTimePoint::origin(dim);
        SpaceTimePoint b = SpaceTimePoint::origin(dim);
        for (int k = 0; k < dim; ++k) {
            a.x[static_cast<std::size_t>(k)] = o.lo[static_cast<std::size_t>(k)];
            b.x[static_cast<std::size_t>(k)] = o.hi[static_cast<std::size_t>(k)];
        }
        a.t = o.t_lo;
        b.t = o.t_hi;
        return o.dim == dim && contains(a, slack) && contains(b, slack);
    }
};

/// Uniform tensor grid: nx nodes per spatial axis, nt in time, endpoints included.
struct GridSpec {
    Box bounds;
    int nx = 2;
    int nt = 2;

    GridSpec() = default;
    GridSpec(Box b, int nx_, int nt_) : bounds(b), nx(nx_), nt(nt_) { validate(); }

    void validate() const
    {
        bounds.validate();
        if (nx < 2 || nt < 2) throw InvalidArgument("GridSpec: need nx >= 2 and nt >= 2");
    }

    int dim() const { return bounds.dim; }
    double hx(int axis = 0) const
    {
        const auto a = static_cast<std::size_t>(axis);
        return (bounds.hi[a] - bounds.lo[a]) / (nx - 1);
    }
    double ht() const { return (bounds.t_hi - bounds.t_lo) / (nt - 1); }

    std::size_t spatial_count() const
    {
        std::size_t n = 1;
        for (int k = 0; k < dim(); ++k) n *= static_cast<std::size_t>(nx);
        return n;
    }
    std::size_t node_count() const { return spatial_count() * static_cast<std::size_t>(nt); }

    double x_coord(int axis, int i) const
    {
        const auto a = static_cast<std::size_t>(axis);
        if (i == nx - 1) return bounds.hi[a];
        return bounds.lo[a] + i * hx(axis);
    }
    double t_coord(int i) const
    {
        if (i == nt - 1) return bounds.t_hi;
        return bounds.t_lo + i * ht();
    }

    /// Multi-index of a flat node index; axis 0 varies fastest, time slowest.
    struct Index {
        std::array<int, kMaxDim> ix{};
        int it = 0;
    };

    Index unflatten(std::size_t flat) const
    {
        Index idx;
        for (int k = 0; k < dim(); ++k) {
            idx.ix[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(nx));
            flat /= static_cast<std::size_t>(nx);
        }
        idx.it = static_cast<int>(flat);
        return idx;
    }

    std::size_t flatten(const Index& idx) const
    {
        std::size_t flat = static_cast<std::size_t>(idx.it);
        for (int k = dim() - 1; k >= 0; --k) {
            flat = flat * static_cast<std::size_t>(nx) + static_cast<std::size_t>(idx.ix[static_cast<std::size_t>(k)]);
        }
        return flat;
    }

    SpaceTimePoint node(const Index& idx) const
    {
        SpaceTimePoint p = SpaceTimePoint::origin(dim());
        for (int k = 0; k < dim(); ++k) p.x[static_cast<std::size_t>(k)] = x_coord(k, idx.ix[static_cast<std::size_t>(k)]);
        p.t = t_coord(idx.it);
        return p;
    }
    SpaceTimePoint node(std::size_t flat) const { return node(unflatten(flat)); }

    friend bool operator==(const GridSpec& a, const GridSpec& b)
    {
        if (a.nx != b.nx || a.nt != b.nt || a.bounds.dim != b.bounds.dim) return false;
        if (a.bounds.t_lo != b.bounds.t_lo || a.bounds.t_hi != b.bounds.t_hi) return false;
        for (int k = 0; k < a.dim(); ++k) {
            const auto ku = static_cast<std::size_t>(k);
            if (a.bounds.lo[ku] != b.bounds.lo[ku] || a.bounds.hi[ku] != b.bounds.hi[ku]) return false;
        }
        return true;
    }
};

/// Anything that can be evaluated at a space-time point.
template <class U>
concept Evaluable = requires(const U& u, const SpaceTimePoint& X) {
    { u(X) } -> std::convertible_to<double>;
};

enum class Provenance { sampled, computed };

/// Function values on the nodes of a GridSpec.
class Field {
public:
    Field(GridSpec spec, std::vector<double> values, Provenance provenance = Provenance::computed)
        : spec_(std::move(spec)), values_(std::move(values)), provenance_(provenance)
    {
        spec_.validate();
        if (values_.size() != spec_.node_count()) {
            throw InvalidArgument("Field: expected " + std::to_string(spec_.node_count()) + " values, got " +
                                  std::to_string(values_.size()));
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i])) {
                throw NonFinite("Field: non-finite value at node " + spec_.node(i).str());
            }
        }
    }

    const GridSpec& spec() const { return spec_; }
    std::span<const double> values() const { return values_; }
    double value(std::size_t flat) const { return values_[flat]; }
    Provenance provenance() const { return provenance_; }
    int dim() const { return spec_.dim(); }

    /// Multilinear interpolation; exact at nodes.
    double evaluate(const SpaceTimePoint& X) const
    {
        const Box& b = spec_.bounds;
        if (X.dim != b.dim) throw InvalidArgument("Field::evaluate: dimension mismatch");
        if (!b.contains(X)) throw OutOfDomain("Field::evaluate: point " + X.str() + " lies outside the grid bounds");
        const int d = spec_.dim();
        std::array<int, kMaxDim + 1> base{};
        std::array<double, kMaxDim + 1> frac{};
        for (int k = 0; k < d; ++k) {
            locate(X.x[static_cast<std::size_t>(k)], b.lo[static_cast<std::size_t>(k)], spec_.hx(k), spec_.nx,
                   base[static_cast<std::size_t>(k)], frac[static_cast<std::size_t>(k)]);
        }
        locate(X.t, b.t_lo, spec_.ht(), spec_.nt, base[static_cast<std::size_t>(d)], frac[static_cast<std::size_t>(d)]);

        double acc = 0.0;
        const unsigned corners = 1u << static_cast<unsigned>(d + 1);
        for (unsigned c = 0; c < corners; ++c) {
            double w = 1.0;
            GridSpec::Index idx;
            for (int k = 0; k <= d; ++k) {
                const bool up = (c >> static_cast<unsigned>(k)) & 1u;
                const auto ku = static_cast<std::size_t>(k);
                w *= up ? frac[ku] : 1.0 - frac[ku];
                const int i = base[ku] + (up ? 1 : 0);
                if (k < d) {
                    idx.ix[ku] = i;
                } else {
                    idx.it = i;
                }
            }
            if (w != 0.0) acc += w * values_[spec_.flatten(idx)];
        }
        return acc;
    }

    double operator()(const SpaceTimePoint& X) const { return evaluate(X); }

    double sup_abs() const
    {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    static void locate(double v, double lo, double h, int n, int& base, double& frac)
    {
        double s = (v - lo) / h;
        int i = static_cast<int>(std::floor(s));
        i = std::clamp(i, 0, n - 2);
        base = i;
        frac = std::clamp(s - i, 0.0, 1.0);
    }

    GridSpec spec_;
    std::vector<double> values_;
    Provenance provenance_;
};

/// Derivative multi-index: x[k] spatial orders per axis, t temporal order.
struct Deriv {
    std::array<int, kMaxDim> x{};
    int t = 0;

    /// i derivatives along axis 0 and j in time.
    static Deriv along(int i, int j = 0, int axis = 0)
    {
        Deriv d;
        d.x[static_cast<std::size_t>(axis)] = i;
        d.t = j;
        return d;
    }

    int spatial_order() const
    {
        int s = 0;
        for (int v : x) s += v;
        return s;
    }
    bool is_zero() const { return spatial_order() == 0 && t == 0; }
};

struct DerivOrder {
    int spatial = 3;
    int temporal = 2;
};

enum class Support { global, compact_in_cylinder };

/// A function of (x, t) with optional exact partial derivatives.
class AnalyticFn {
public:
    using ValueFn = std::function<double(const SpaceTimePoint&)>;
    using DerivFn = std::function<double(const SpaceTimePoint&, const Deriv&)>;

    AnalyticFn(int dim, ValueFn value, DerivFn deriv = {}, DerivOrder max_order = {}, Support support = Support::global,
               std::string name = "fn")
        : dim_(dim),
          value_(std::move(value)),
          deriv_(std::move(deriv)),
          max_order_(max_order),
          support_(support),
          name_(std::move(name))
    {
        if (dim_ < 1 || dim_ > kMaxDim) throw InvalidArgument("AnalyticFn: unsupported dimension");
        if (!value_) throw InvalidArgument("AnalyticFn: missing evaluator");
    }

    int dim() const { return dim_; }
    const std::string& name() const { return name_; }
    Support support() const { return support_; }
    bool has_derivatives() const { return static_cast<bool>(deriv_); }
    DerivOrder max_order() const { return max_order_; }

    double operator()(const SpaceTimePoint& X) const { return value_(X); }

    double derivative(const SpaceTimePoint& X, const Deriv& d) const
    {
        if (d.is_zero()) return value_(X);
        if (!deriv_) throw MissingDerivative("AnalyticFn '" + name_ + "' carries no exact derivatives");
        if (d.spatial_order() > max_order_.spatial || d.t > max_order_.temporal) {
            throw MissingDerivative("AnalyticFn '" + name_ + "': derivative order exceeds the stored maximum");
        }
        return deriv_(X, d);
    }

    AnalyticFn renamed(std::string name) const
    {
        AnalyticFn f = *this;
        f.name_ = std::move(name);
        return f;
    }

private:
    int dim_;
    ValueFn value_;
    DerivFn deriv_;
    DerivOrder max_order_;
    Support support_;
    std::string name_;
};

/// Sample an evaluable at every node of a grid.
template <Evaluable U>
Field sample(const U& fn, const GridSpec& spec)
{
    spec.validate();
    std::vector<double> values(spec.node_count());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const SpaceTimePoint X = spec.node(i);
        const double v = fn(X);
        if (!std::isfinite(v)) throw NonFinite("sample: non-finite value at node " + X.str());
        values[i] = v;
    }
    return Field(spec, std::move(values), Provenance::sampled);
}

/// Sample an exact derivative at every node of a grid.
inline Field sample_derivative(const AnalyticFn& fn, const Deriv& d, const GridSpec& spec)
{
    return sample([&](const SpaceTimePoint& X) { return fn.derivative(X, d); }, spec);
}

// ---------------------------------------------------------------------------
// Separable sums: sum_m c_m * prod_k f_{m,k}(x_k) * g_m(t), each factor a
// one-variable function whose derivatives come from Taylor jets.

/// One-variable factor with a fast value path and a jet path for derivatives.
struct Factor {
    std::function<double(double)> value;
    std::function<Jet7(double)> jet;
};

/// Build a Factor from a generic callable usable with both double and Jet7.
template <class F>
Factor make_factor(F f)
{
    return Factor{[f](double s) { return static_cast<double>(f(s)); }, [f](double s) { return f(Jet7::variable(s)); }};
}

inline Factor constant_factor(double c = 1.0)
{
    return make_factor([c](auto) { return decltype(c)(c); });
}

struct SeparableTerm {
    double coeff = 1.0;
    std::vector<Factor> space;  // one per spatial axis
    Factor time;
};

inline AnalyticFn separable_sum(int dim, std::vector<SeparableTerm> terms, Support support, std::string name)
{
    for (const auto& term : terms) {
        if (static_cast<int>(term.space.size()) != dim) {
            throw InvalidArgument("separable_sum: every term needs one factor per spatial axis");
        }
    }
    auto shared = std::make_shared<const std::vector<SeparableTerm>>(std::move(terms));
    auto value = [shared, dim](const SpaceTimePoint& X) {
        double acc = 0.0;
        for (const auto& term : *shared) {
            double v = term.coeff * term.time.value(X.t);
            for (int k = 0; k < dim && v != 0.0; ++k) {
                v *= term.space[static_cast<std::size_t>(k)].value(X.x[static_cast<std::size_t>(k)]);
            }
            acc += v;
        }
        return acc;
    };
    auto deriv = [shared, dim](const SpaceTimePoint& X, const Deriv& d) {
        double acc = 0.0;
        for (const auto& term : *shared) {
            double v = term.coeff * term.time.jet(X.t).derivative(static_cast<std::size_t>(d.t));
            for (int k = 0; k < dim && v != 0.0; ++k) {
                const auto ku = static_cast<std::size_t>(k);
                v *= term.space[ku].jet(X.x[ku]).derivative(static_cast<std::size_t>(d.x[ku]));
            }
            acc += v;
        }
        return acc;
    };
    return AnalyticFn(dim, value, deriv, DerivOrder{3, 2}, support, std::move(name));
}

}  // namespace schauder
