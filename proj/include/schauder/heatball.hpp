#pragma once

// Heat balls, the mean-value kernel |x-y|^2/(t-s)^2 and its quadrature.

#include "schauder/error.hpp"
#include "schauder/field.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace schauder {

struct HeatBall {
    SpaceTimePoint center;
    double r = 1.0;

    int dim() const { return center.dim; }
    /// Depth of the time window, r^2 / (4 pi).
    double depth() const { return r * r / (4.0 * std::numbers::pi); }

    void validate() const
    {
        center.validate();
        if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("HeatBall: r must be positive and finite");
    }
};

struct QuadSpec {
    int n_slices = 64;      // Gauss panels in the clustered time variable
    int n_radial = 16;      // Gauss nodes on [0, R(sigma)]
    int n_angular = 32;     // trapezoid nodes on the circle (azimuth in 3-d)
    double clustering = 2.0;
    double tolerance = 1e-6;  // relative to max(1, |value|)

    void validate() const
    {
        if (n_slices < 4 || n_radial < 4 || n_angular < 4) throw InvalidArgument("QuadSpec: all counts must be >= 4");
        if (!(clustering >= 1.0)) throw InvalidArgument("QuadSpec: clustering exponent must be >= 1");
        if (!(tolerance > 0.0)) throw InvalidArgument("QuadSpec: tolerance must be positive");
    }

    QuadSpec refined() const
    {
        QuadSpec q = *this;
        q.n_slices *= 2;
        q.n_radial *= 2;
        q.n_angular *= 2;
        return q;
    }
};

struct QuadResult {
    double value = 0.0;
    double est_error = 0.0;
};

/// Heat-kernel level-set radius R_r(sigma) = sqrt(2 d sigma log(r^2 / (4 pi sigma))).
inline double radius(double r, double sigma, int d)
{
    if (!(r > 0.0)) throw InvalidArgument("radius: r must be positive");
    if (d < 1) throw InvalidArgument("radius: dimension must be positive");
    const double c = r * r / (4.0 * std::numbers::pi);
    if (!(sigma > 0.0 && sigma < c)) throw InvalidArgument("radius: sigma must lie in (0, r^2/(4 pi))");
    return std::sqrt(2.0 * d * sigma * std::log(c / sigma));
}

inline bool contains(const HeatBall& ball, const SpaceTimePoint& Y)
{
    if (Y.dim != ball.dim()) throw InvalidArgument("contains: dimension mismatch");
    const double sigma = ball.center.t - Y.t;
    if (!(sigma > 0.0 && sigma < ball.depth())) return false;
    return spatial_distance(Y, ball.center) <= radius(ball.r, sigma, ball.dim());
}

namespace detail {

struct GaussRule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

inline GaussRule gauss_legendre(int n)
{
    GaussRule g;
    const auto zeros = boost::math::legendre_p_zeros<double>(n);  // nonnegative half
    auto push = [&](double x) {
        const double dp = boost::math::legendre_p_prime<double>(n, x);
        g.x.push_back(x);
        g.w.push_back(2.0 / ((1.0 - x * x) * dp * dp));
    };
    for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
        if (*it != 0.0) push(-*it);
    }
    for (double z : zeros) push(z);
    return g;
}

inline const GaussRule& cached_gauss(int n)
{
    static thread_local std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
    return it->second;
}

inline constexpr int kPanelOrder = 4;

/// Integrate g(w) over w in (0, w_max) under w = u^p, with composite Gauss in u.
template <class G>
double clustered_integral(const G& g, double w_max, int panels, double p)
{
    const auto& rule = cached_gauss(kPanelOrder);
    const double u_max = std::pow(w_max, 1.0 / p);
    const double h = u_max / panels;
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double a = k * h;
        double panel = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double u = a + 0.5 * h * (rule.x[i] + 1.0);
            const double w = std::pow(u, p);
            panel += rule.w[i] * g(w) * p * std::pow(u, p - 1.0);
        }
        total += 0.5 * h * panel;
    }
    return total;
}

/// Unit directions and weights for the sphere S^{d-1}; weights sum to |S^{d-1}|.
inline void sphere_rule(int d, int n_angular, std::vector<std::array<double, kMaxDim>>& dirs, std::vector<double>& wts)
{
    dirs.clear();
    wts.clear();
    if (d == 1) {
        dirs.push_back({1.0, 0.0, 0.0});
        dirs.push_back({-1.0, 0.0, 0.0});
        wts.assign(2, 1.0);
        return;
    }
    const double dphi = 2.0 * std::numbers::pi / n_angular;
    if (d == 2) {
        for (int k = 0; k < n_angular; ++k) {
            dirs.push_back({std::cos(k * dphi), std::sin(k * dphi), 0.0});
            wts.push_back(dphi);
        }
        return;
    }
    const auto& g = cached_gauss(std::max(4, n_angular / 2));
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double z = g.x[i];
        const double s = std::sqrt(1.0 - z * z);
        for (int k = 0; k < n_angular; ++k) {
            dirs.push_back({s * std::cos(k * dphi), s * std::sin(k * dphi), z});
            wts.push_back(g.w[i] * dphi);
        }
    }
}

/// (1/(4 r^d)) times the kernel integral of v over the ball, at one resolution.
template <class V>
double mean_value_once(const V& v, const HeatBall& ball, const QuadSpec& q)
{
    const int d = ball.dim();
    const double c = ball.depth();
    std::vector<std::array<double, kMaxDim>> dirs;
    std::vector<double> wts;
    sphere_rule(d, q.n_angular, dirs, wts);
    const auto& rad = cached_gauss(q.n_radial);

    auto slice = [&](double w) {
        const double sigma = c * std::exp(-w);
        if (!(sigma > 0.0)) return 0.0;
        const double R = std::sqrt(2.0 * d * sigma * w);
        SpaceTimePoint Y = ball.center;
        Y.t = ball.center.t - sigma;
        double acc = 0.0;
        for (std::size_t i = 0; i < rad.x.size(); ++i) {
            const double rho = 0.5 * R * (rad.x[i] + 1.0);
            double sphere = 0.0;
            for (std::size_t k = 0; k < dirs.size(); ++k) {
                for (int a = 0; a < d; ++a) {
                    const auto au = static_cast<std::size_t>(a);
                    Y.x[au] = ball.center.x[au] + rho * dirs[k][au];
                }
                const double val = static_cast<double>(v(Y));
                if (!std::isfinite(val)) throw NonFinite("mean_value: integrand is not finite at " + Y.str());
                sphere += wts[k] * val;
            }
            acc += rad.w[i] * std::pow(rho, d + 1) * sphere;
        }
        // dsigma = sigma dw and the kernel contributes rho^2 / sigma^2.
        return 0.5 * R * acc / sigma;
    };
    const double w_max = 90.0 / d;
    const double integral = clustered_integral(slice, w_max, q.n_slices, q.clustering);
    return integral / (4.0 * std::pow(ball.r, d));
}

inline void check_ball(const HeatBall& ball, const QuadSpec& q)
{
    ball.validate();
    q.validate();
}

inline QuadResult converge(double coarse, double fine, double tolerance, const std::string& what)
{
    QuadResult res{fine, std::abs(fine - coarse)};
    if (!std::isfinite(fine)) throw NonFinite(what + ": quadrature produced a non-finite value");
    if (res.est_error > tolerance * std::max(1.0, std::abs(fine))) {
        throw NonConvergent(what + ": refinement changed the value by " + format_double(res.est_error));
    }
    return res;
}

}  // namespace detail

/// Kernel-weighted heat-ball average of v, with a refinement-based error estimate.
template <Evaluable V>
QuadResult mean_value(const V& v, const HeatBall& ball, const QuadSpec& q = {})
{
    detail::check_ball(ball, q);
    const double coarse = detail::mean_value_once(v, ball, q);
    const double fine = detail::mean_value_once(v, ball, q.refined());
    return detail::converge(coarse, fine, q.tolerance, "mean_value");
}

/// Integral of |x-y|^2/(t-s)^2 over the ball.
inline QuadResult kernel_mass(const HeatBall& ball, const QuadSpec& q = {})
{
    detail::check_ball(ball, q);
    const double scale = 4.0 * std::pow(ball.r, ball.dim());
    auto one = [](const SpaceTimePoint&) { return 1.0; };
    const double coarse = scale * detail::mean_value_once(one, ball, q);
    const double fine = scale * detail::mean_value_once(one, ball, q.refined());
    return detail::converge(coarse, fine, q.tolerance, "kernel_mass");
}

/// (1/r^d) * integral over sigma in (0, r^2/(4 pi)) of R_r(sigma)^alpha / sigma^beta.
inline QuadResult scaling_integral(int alpha, int beta, double r, int d, const QuadSpec& q = {})
{
    q.validate();
    if (alpha < 0 || beta < 0) throw InvalidArgument("scaling_integral: exponents must be nonnegative");
    if (!(r > 0.0)) throw InvalidArgument("scaling_integral: r must be positive");
    if (d < 1 || d > kMaxDim) throw InvalidArgument("scaling_integral: unsupported dimension");
    const double gamma = 0.5 * alpha - beta + 1.0;
    if (!(gamma > 0.0)) {
        throw Divergent("scaling_integral: (alpha, beta) = (" + std::to_string(alpha) + ", " + std::to_string(beta) +
                        ") diverges at sigma -> 0");
    }
    const double c = r * r / (4.0 * std::numbers::pi);
    auto g = [&](double w) {
        const double sigma = c * std::exp(-w);
        if (!(sigma > 0.0) || w <= 0.0) return 0.0;
        return std::pow(radius(r, sigma, d), alpha) * std::pow(sigma, 1.0 - beta);
    };
    const double w_max = 45.0 / gamma + 10.0;
    const double pref = 1.0 / std::pow(r, d);
    const double coarse = pref * detail::clustered_integral(g, w_max, q.n_slices, q.clustering);
    const double fine = pref * detail::clustered_integral(g, w_max, 2 * q.n_slices, q.clustering);
    return detail::converge(coarse, fine, q.tolerance, "scaling_integral");
}

}  // namespace schauder
