#pragma once

// Parabolic mollification: the bump profile rho, its scaling
// rho_tau(x, t) = tau^-(d+2) rho(x / tau, t / tau^2), and convolutions of a
// function against rho_tau and its derivatives.

#include "schauder/builtin.hpp"
#include "schauder/error.hpp"
#include "schauder/field.hpp"
#include "schauder/jet.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace schauder {

/// Tensor-product mollifier rho(x, t) = prod_k phi(x_k) phi(t) / M^(d+1) with
/// phi(s) = exp(-1/(1-s^2)) and M its integral. Even in every variable and
/// supported in the unit box {|x|_inf <= 1, |t| <= 1}.
///
/// Convolutions use a midpoint rule with `nodes` points per axis on the
/// support. The per-axis weights for each derivative order are corrected so
/// that their moments up to kMomentOrder match the continuous kernel, which
/// makes the discrete derivative kernels consistent with derivatives of the
/// discrete mollification and keeps the value weights summing to one.
class MollifierProfile {
public:
    static constexpr int kMaxSpatialOrder = 3;
    static constexpr int kMaxTemporalOrder = 2;
    static constexpr int kMomentOrder = 9;

    explicit MollifierProfile(int nodes = 33) : nodes_(nodes)
    {
        if (nodes_ < 4) throw InvalidArgument("MollifierProfile: need at least 4 kernel nodes per axis");
        compute_reference_integrals();
        build_weights();
    }

    int nodes() const { return nodes_; }

    /// Integral of phi over [-1, 1] (high-resolution quadrature).
    double mass_1d() const { return mass_; }

    /// int phi(s) s^j ds / M for j <= kMomentOrder.
    double moment(int j) const { return moments_[static_cast<std::size_t>(j)]; }

    /// Kernel node positions in [-1, 1].
    std::span<const double> node_positions() const { return z_; }

    /// Corrected quadrature weights for the k-th derivative of phi / M.
    std::span<const double> weights(int k) const { return w_[static_cast<std::size_t>(k)]; }

    /// rho(X) for a point of any dimension.
    double operator()(const SpaceTimePoint& X) const
    {
        double v = bump_profile(X.t) / mass_;
        for (int k = 0; k < X.dim && v != 0.0; ++k) v *= bump_profile(X.x[static_cast<std::size_t>(k)]) / mass_;
        return v;
    }

    /// Exact partial derivative of rho.
    double derivative(const SpaceTimePoint& X, const Deriv& d) const
    {
        check_order(d);
        double v = phi_derivative(X.t, d.t) / mass_;
        for (int k = 0; k < X.dim && v != 0.0; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            v *= phi_derivative(X.x[ku], d.x[ku]) / mass_;
        }
        return v;
    }

    /// int |d^b rho| over R^{d+1}: the constant in the sup-norm derivative bounds.
    double l1_norm(int dim, const Deriv& d) const
    {
        check_order(d);
        double v = abs_integrals_[static_cast<std::size_t>(d.t)];
        for (int k = 0; k < dim; ++k) v *= abs_integrals_[static_cast<std::size_t>(d.x[static_cast<std::size_t>(k)])];
        return v;
    }

    static void check_order(const Deriv& d)
    {
        for (int v : d.x) {
            if (v < 0 || v > kMaxSpatialOrder) throw InvalidArgument("mollifier: unsupported spatial derivative order");
        }
        if (d.spatial_order() > kMaxSpatialOrder) throw InvalidArgument("mollifier: total spatial order exceeds 3");
        if (d.t < 0 || d.t > kMaxTemporalOrder) throw InvalidArgument("mollifier: unsupported temporal derivative order");
    }

    static double phi_derivative(double s, int k)
    {
        if (k == 0) return bump_profile(s);
        return bump_profile(Jet7::variable(s)).derivative(static_cast<std::size_t>(k));
    }

private:
    void compute_reference_integrals()
    {
        // Dense midpoint rule: phi is flat to all orders at +-1, so this is
        // accurate to rounding and independent of the kernel node count.
        constexpr int n = 20001;
        const double h = 2.0 / n;
        std::array<double, kMomentOrder + 1> raw{};
        std::array<double, kMaxSpatialOrder + 1> abs_raw{};
        for (int i = 0; i < n; ++i) {
            const double s = -1.0 + (i + 0.5) * h;
            const Jet7 jet = bump_profile(Jet7::variable(s));
            const double phi = jet.value();
            double p = 1.0;
            for (int j = 0; j <= kMomentOrder; ++j) {
                raw[static_cast<std::size_t>(j)] += h * phi * p;
                p *= s;
            }
            for (int k = 0; k <= kMaxSpatialOrder; ++k) {
                abs_raw[static_cast<std::size_t>(k)] += h * std::abs(jet.derivative(static_cast<std::size_t>(k)));
            }
        }
        mass_ = raw[0];
        for (int j = 0; j <= kMomentOrder; ++j) moments_[static_cast<std::size_t>(j)] = raw[static_cast<std::size_t>(j)] / mass_;
        for (int k = 0; k <= kMaxSpatialOrder; ++k) abs_integrals_[static_cast<std::size_t>(k)] = abs_raw[static_cast<std::size_t>(k)] / mass_;
    }

    // int phi^(k)(z) z^m dz / M = (-1)^k m!/(m-k)! mu_{m-k}
    double target_moment(int k, int m) const
    {
        if (m < k) return 0.0;
        double f = 1.0;
        for (int i = m - k + 1; i <= m; ++i) f *= i;
        return ((k % 2) ? -1.0 : 1.0) * f * moments_[static_cast<std::size_t>(m - k)];
    }

    void build_weights()
    {
        const auto n = static_cast<std::size_t>(nodes_);
        const double h = 2.0 / nodes_;
        z_.resize(n);
        for (std::size_t i = 0; i < n; ++i) z_[i] = -1.0 + (static_cast<double>(i) + 0.5) * h;
        for (int k = 0; k <= kMaxSpatialOrder; ++k) {
            std::vector<double> w(n);
            for (std::size_t i = 0; i < n; ++i) w[i] = h * phi_derivative(z_[i], k) / mass_;

            std::vector<int> powers;
            for (int m = k % 2; m <= kMomentOrder; m += 2) powers.push_back(m);
            const auto np = static_cast<Eigen::Index>(powers.size());
            Eigen::MatrixXd gram(np, np);
            Eigen::VectorXd rhs(np);
            for (Eigen::Index a = 0; a < np; ++a) {
                const int m = powers[static_cast<std::size_t>(a)];
                double have = 0.0;
                for (std::size_t i = 0; i < n; ++i) have += w[i] * std::pow(z_[i], m);
                rhs(a) = target_moment(k, m) - have;
                for (Eigen::Index b = 0; b < np; ++b) {
                    const int l = powers[static_cast<std::size_t>(b)];
                    double g = 0.0;
                    for (std::size_t i = 0; i < n; ++i) g += h * bump_profile(z_[i]) / mass_ * std::pow(z_[i], l + m);
                    gram(a, b) = g;
                }
            }
            const Eigen::VectorXd c = gram.colPivHouseholderQr().solve(rhs);
            for (std::size_t i = 0; i < n; ++i) {
                double corr = 0.0;
                for (Eigen::Index b = 0; b < np; ++b) {
                    corr += c(b) * std::pow(z_[i], powers[static_cast<std::size_t>(b)]);
                }
                w[i] += h * bump_profile(z_[i]) / mass_ * corr;
            }
            if (k == 0) {
                for (double v : w) {
                    if (!(v > 0.0)) throw Error("MollifierProfile: moment correction produced a non-positive weight");
                }
            }
            w_[static_cast<std::size_t>(k)] = std::move(w);
        }
    }

    int nodes_;
    double mass_ = 0.0;
    std::array<double, kMomentOrder + 1> moments_{};
    std::array<double, kMaxSpatialOrder + 1> abs_integrals_{};
    std::vector<double> z_;
    std::array<std::vector<double>, kMaxSpatialOrder + 1> w_;
};

/// Shared default profile (33 nodes per axis).
inline const MollifierProfile& default_profile()
{
    static const MollifierProfile p(33);
    return p;
}

/// tau^-(d+2) rho(x / tau, t / tau^2).
inline double rho_tau(const MollifierProfile& p, double tau, const SpaceTimePoint& X)
{
    if (!(tau > 0.0)) throw InvalidArgument("rho_tau: tau must be positive");
    SpaceTimePoint Y = X;
    for (int k = 0; k < X.dim; ++k) Y.x[static_cast<std::size_t>(k)] /= tau;
    Y.t /= tau * tau;
    return p(Y) / std::pow(tau, X.dim + 2);
}

/// Convolve u with rho_tau and with derivatives of rho_tau at one point.
///
/// out[o] = d^orders[o] u_tau(X). Derivatives are taken on the kernel, never by
/// differencing u_tau, and are written as int d^b rho_tau(X - Y) (u(Y) - u(X)) dY
/// so the constant part of u cancels exactly.
template <Evaluable U>
void mollify_point(const U& u, const MollifierProfile& p, double tau, const SpaceTimePoint& X,
                   std::span<const Deriv> orders, std::span<double> out)
{
    if (!(tau > 0.0)) throw InvalidArgument("mollify: tau must be positive");
    if (out.size() < orders.size()) throw InvalidArgument("mollify: output span too small");
    for (const auto& o : orders) MollifierProfile::check_order(o);

    const int d = X.dim;
    const auto n = static_cast<std::size_t>(p.nodes());
    const auto z = p.node_positions();
    const double tau2 = tau * tau;
    bool need_center = false;
    for (const auto& o : orders) need_center = need_center || !o.is_zero();
    const double u_center = need_center ? static_cast<double>(u(X)) : 0.0;

    std::array<double, 8> acc{};
    const std::size_t no = orders.size();
    if (no > acc.size()) throw InvalidArgument("mollify: at most 8 derivative orders per pass");

    std::size_t spatial_nodes = 1;
    for (int k = 0; k < d; ++k) spatial_nodes *= n;

    SpaceTimePoint Y = X;
    std::array<std::size_t, kMaxDim> idx{};
    for (std::size_t jt = 0; jt < n; ++jt) {
        Y.t = X.t - tau2 * z[jt];
        for (std::size_t s = 0; s < spatial_nodes; ++s) {
            std::size_t rem = s;
            for (int k = 0; k < d; ++k) {
                const auto ku = static_cast<std::size_t>(k);
                idx[ku] = rem % n;
                rem /= n;
                Y.x[ku] = X.x[ku] - tau * z[idx[ku]];
            }
            const double uy = u(Y);
            for (std::size_t o = 0; o < no; ++o) {
                const Deriv& ord = orders[o];
                double w = p.weights(ord.t)[jt];
                for (int k = 0; k < d; ++k) {
                    const auto ku = static_cast<std::size_t>(k);
                    w *= p.weights(ord.x[ku])[idx[ku]];
                }
                acc[o] += w * (ord.is_zero() ? uy : uy - u_center);
            }
        }
    }
    for (std::size_t o = 0; o < no; ++o) {
        const int scale = orders[o].spatial_order() + 2 * orders[o].t;
        out[o] = acc[o] * std::pow(tau, -scale);
    }
}

template <Evaluable U>
double mollify_at(const U& u, const MollifierProfile& p, double tau, const SpaceTimePoint& X, const Deriv& order = {})
{
    double out = 0.0;
    mollify_point(u, p, tau, X, std::span<const Deriv>(&order, 1), std::span<double>(&out, 1));
    return out;
}

/// Checks that the output grid lies in the shrunk domain U_tau of `domain`.
inline void check_mollify_domain(const Box& domain, double tau, const GridSpec& out)
{
    if (!(tau > 0.0)) throw InvalidArgument("mollify: tau must be positive");
    Box shrunk;
    try {
        shrunk = domain.shrink(tau);
    } catch (const InvalidArgument&) {
        throw InvalidArgument("mollify: tau=" + format_double(tau) + " is too large for the domain");
    }
    if (!shrunk.contains_box(out.bounds)) {
        throw InvalidArgument("mollify: output grid leaves U_tau for tau=" + format_double(tau) +
                              " (would need values outside the domain)");
    }
}

/// Several derivatives of u_tau on a grid in one pass over the kernel.
template <Evaluable U>
std::vector<Field> mollify_many(const U& u, const Box& domain, const MollifierProfile& p, double tau,
                                const GridSpec& out, std::span<const Deriv> orders)
{
    check_mollify_domain(domain, tau, out);
    std::vector<std::vector<double>> vals(orders.size(), std::vector<double>(out.node_count()));
    std::array<double, 8> buf{};
    for (std::size_t i = 0; i < out.node_count(); ++i) {
        mollify_point(u, p, tau, out.node(i), orders, std::span<double>(buf.data(), orders.size()));
        for (std::size_t o = 0; o < orders.size(); ++o) vals[o][i] = buf[o];
    }
    std::vector<Field> fields;
    fields.reserve(orders.size());
    for (auto& v : vals) fields.emplace_back(out, std::move(v), Provenance::computed);
    return fields;
}

/// u_tau on a grid inside U_tau of the domain.
template <Evaluable U>
Field mollify(const U& u, const Box& domain, const MollifierProfile& p, double tau, const GridSpec& out)
{
    const Deriv zero{};
    return std::move(mollify_many(u, domain, p, tau, out, std::span<const Deriv>(&zero, 1)).front());
}

/// u_tau for a sampled field, on U_tau with the field's own node counts.
inline Field mollify(const Field& u, const MollifierProfile& p, double tau)
{
    const Box domain = u.spec().bounds;
    Box shrunk;
    try {
        shrunk = domain.shrink(tau);
    } catch (const InvalidArgument&) {
        throw InvalidArgument("mollify: tau=" + format_double(tau) + " is too large for the field's domain");
    }
    return mollify(u, domain, p, tau, GridSpec(shrunk, u.spec().nx, u.spec().nt));
}

/// d_x^i d_t^j u_tau (i along axis 0) on a grid inside U_tau.
template <Evaluable U>
Field mollify_derivative(const U& u, const Box& domain, const MollifierProfile& p, double tau, int i, int j,
                         const GridSpec& out)
{
    const Deriv d = Deriv::along(i, j);
    return std::move(mollify_many(u, domain, p, tau, out, std::span<const Deriv>(&d, 1)).front());
}

inline Field mollify_derivative(const Field& u, const MollifierProfile& p, double tau, int i, int j)
{
    const Box domain = u.spec().bounds;
    return mollify_derivative(u, domain, p, tau, i, j, GridSpec(domain.shrink(tau), u.spec().nx, u.spec().nt));
}

}  // namespace schauder
