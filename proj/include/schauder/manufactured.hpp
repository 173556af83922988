#pragma once

// Manufactured variable-coefficient problems, coefficient freezing and the heat operator.

#include "schauder/builtin.hpp"
#include "schauder/error.hpp"
#include "schauder/field.hpp"
#include "schauder/jet.hpp"
#include "schauder/mollify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace schauder {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// Symmetric matrix-valued a(X) with ellipticity bounds lambda, Lambda.
struct CoefficientField {
    int dim = 1;
    std::function<Mat(const SpaceTimePoint&)> eval;
    double lambda = 1.0;
    double Lambda = 1.0;
    double alpha = 0.5;
    double cusp_seminorm_bound = 0.0;  // bound on [.]_alpha of the rough part of each entry

    Mat operator()(const SpaceTimePoint& X) const { return eval(X); }
    double entry(const SpaceTimePoint& X, int i, int j) const { return eval(X)(i, j); }
};

struct ManufacturedProblem {
    std::string name;
    AnalyticFn u;
    CoefficientField a;
    AnalyticFn f;
    Cylinder domain;
};

inline Mat hessian(const AnalyticFn& u, const SpaceTimePoint& X)
{
    const int d = u.dim();
    Mat H(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            Deriv dd;
            dd.x[static_cast<std::size_t>(i)] += 1;
            dd.x[static_cast<std::size_t>(j)] += 1;
            H(i, j) = u.derivative(X, dd);
            H(j, i) = H(i, j);
        }
    }
    return H;
}

inline double contract(const Mat& a, const Mat& H)
{
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * H(i, j);
    }
    return s;
}

/// Pointwise d_t v - Laplacian v from exact derivatives.
inline double heat_operator_at(const AnalyticFn& v, const SpaceTimePoint& X)
{
    double lap = 0.0;
    for (int k = 0; k < v.dim(); ++k) lap += v.derivative(X, Deriv::along(2, 0, k));
    return v.derivative(X, Deriv::along(0, 1)) - lap;
}

inline Field heat_operator(const AnalyticFn& v, const GridSpec& g)
{
    if (!v.has_derivatives()) throw MissingDerivative("heat_operator: '" + v.name() + "' carries no exact derivatives");
    if (v.dim() != g.dim()) throw InvalidArgument("heat_operator: dimension mismatch");
    return sample([&](const SpaceTimePoint& X) { return heat_operator_at(v, X); }, g);
}

/// d_t v_tau - Laplacian v_tau with both terms from kernel derivatives.
template <Evaluable U>
Field heat_operator(const U& v, const Box& domain, const MollifierProfile& p, double tau, const GridSpec& out)
{
    const int d = out.dim();
    std::vector<Deriv> orders{Deriv::along(0, 1)};
    for (int k = 0; k < d; ++k) orders.push_back(Deriv::along(2, 0, k));
    const auto fields = mollify_many(v, domain, p, tau, out, orders);
    std::vector<double> vals(out.node_count());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        double lap = 0.0;
        for (int k = 0; k < d; ++k) lap += fields[static_cast<std::size_t>(k + 1)].value(i);
        vals[i] = fields[0].value(i) - lap;
    }
    return Field(out, std::move(vals), Provenance::computed);
}

/// Symmetric T with T A0 T^T = I.
inline Mat coordinate_normalize(const Mat& A0)
{
    if (A0.rows() != A0.cols() || A0.rows() < 1) throw InvalidArgument("coordinate_normalize: A0 must be square");
    if ((A0 - A0.transpose()).cwiseAbs().maxCoeff() > 0.0) {
        throw PreconditionViolated("coordinate_normalize: A0 is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(A0);
    const auto& ev = es.eigenvalues();
    for (int i = 0; i < ev.size(); ++i) {
        if (!(ev(i) > 0.0)) {
            throw PreconditionViolated("coordinate_normalize: A0 is not positive definite (eigenvalue " +
                                       format_double(ev(i)) + ")");
        }
    }
    const auto inv_sqrt = ev.cwiseSqrt().cwiseInverse();
    Mat T = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
    return 0.5 * (T + T.transpose());
}

struct FrozenForm {
    SpaceTimePoint X0;
    Mat A0;
    Mat T;
    Mat T_inv;
    double f0 = 0.0;
    AnalyticFn g = constant_fn(1, 0.0);  // (a(X) - A0):D^2u(X) + f(X) - f(X0)
};

inline FrozenForm freeze(const ManufacturedProblem& p, const SpaceTimePoint& X0)
{
    if (X0.dim != p.u.dim()) throw InvalidArgument("freeze: dimension mismatch");
    if (!p.domain.contains_closure(X0)) throw OutOfDomain("freeze: X0 " + X0.str() + " lies outside the domain");
    FrozenForm ff;
    ff.X0 = X0;
    ff.A0 = p.a(X0);
    ff.T = coordinate_normalize(ff.A0);
    ff.T_inv = ff.T.inverse();
    ff.f0 = p.f(X0);
    const Mat A0 = ff.A0;
    const double f0 = ff.f0;
    const AnalyticFn u = p.u;
    const CoefficientField a = p.a;
    const AnalyticFn f = p.f;
    ff.g = AnalyticFn(
        X0.dim,
        [=](const SpaceTimePoint& X) { return contract(a(X) - A0, hessian(u, X)) + (f(X) - f0); }, {}, DerivOrder{0, 0},
        Support::global, p.name + ":g");
    return ff;
}

/// v composed with x = T_inv x': the function in normalized coordinates.
template <Evaluable U>
auto in_normalized_coords(const U& v, const Mat& T_inv)
{
    return [v, T_inv](const SpaceTimePoint& Xp) {
        SpaceTimePoint X = Xp;
        const int d = Xp.dim;
        for (int i = 0; i < d; ++i) {
            double s = 0.0;
            for (int j = 0; j < d; ++j) s += T_inv(i, j) * Xp.x[static_cast<std::size_t>(j)];
            X.x[static_cast<std::size_t>(i)] = s;
        }
        return static_cast<double>(v(X));
    };
}

inline SpaceTimePoint to_normalized(const SpaceTimePoint& X, const Mat& T)
{
    SpaceTimePoint Xp = X;
    for (int i = 0; i < X.dim; ++i) {
        double s = 0.0;
        for (int j = 0; j < X.dim; ++j) s += T(i, j) * X.x[static_cast<std::size_t>(j)];
        Xp.x[static_cast<std::size_t>(i)] = s;
    }
    return Xp;
}

/// w + M |x|^2 / (2 dim), after checking d_t w - Laplacian w <= M on the grid.
inline AnalyticFn subsolution_lift(const AnalyticFn& w, double M, const GridSpec& check_grid)
{
    const Field h = heat_operator(w, check_grid);
    double worst = -std::numeric_limits<double>::infinity();
    for (double v : h.values()) worst = std::max(worst, v);
    const double slack = 1e-9 * std::max(1.0, std::abs(M));
    if (worst > M + slack) {
        throw PreconditionViolated("subsolution_lift: heat operator reaches " + format_double(worst) +
                                   " which exceeds M = " + format_double(M));
    }
    const int d = w.dim();
    const double c = M / (2.0 * d);
    auto value = [w, c, d](const SpaceTimePoint& X) {
        double r2 = 0.0;
        for (int k = 0; k < d; ++k) r2 += X.x[static_cast<std::size_t>(k)] * X.x[static_cast<std::size_t>(k)];
        return w(X) + c * r2;
    };
    auto deriv = [w, c, d](const SpaceTimePoint& X, const Deriv& dd) {
        double extra = 0.0;
        if (dd.t == 0) {
            int nonzero = 0;
            int axis = 0;
            for (int k = 0; k < d; ++k) {
                if (dd.x[static_cast<std::size_t>(k)] != 0) {
                    ++nonzero;
                    axis = k;
                }
            }
            const int order = dd.spatial_order();
            if (nonzero == 1 && order == 1) extra = 2.0 * c * X.x[static_cast<std::size_t>(axis)];
            if (nonzero == 1 && order == 2) extra = 2.0 * c;
        }
        return w.derivative(X, dd) + extra;
    };
    return AnalyticFn(d, value, deriv, w.max_order(), Support::global, w.name() + ":lifted");
}

// ---------------------------------------------------------------------------
// Default family

struct EntryParams {
    double k = 1.0;      // spatial frequency
    double omega = 1.0;  // temporal frequency
    double phase = 0.0;
    double w_cusp = 0.5;
    std::array<double, kMaxDim> cusp_x{};
    double cusp_t = 0.0;
};

struct Monomial {
    double coeff = 0.0;
    std::array<int, kMaxDim> px{};
    int pt = 0;
};

struct ProblemParams {
    int index = 0;
    int dim = 1;
    double alpha = 0.5;
    double lambda = 0.5;
    double Lambda = 2.0;
    double mu = 0.0;
    std::vector<Monomial> modulation;
    std::vector<EntryParams> entries;  // upper triangle, row-major
};

struct FamilyConfig {
    int dim = 1;
    double alpha = 0.5;
    double lambda = 0.5;
    double Lambda = 2.0;
    int count = 10;
    std::uint64_t seed = 7;
    double amplitude_scale = 1.0;  // 0 gives constant coefficients
};

inline Cylinder family_domain(int dim) { return Cylinder{SpaceTimePoint::origin(dim), 1.0}; }

namespace detail {

template <class T>
T ipow(const T& s, int p)
{
    T r(1.0);
    for (int i = 0; i < p; ++i) r = r * s;
    return r;
}

inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
inline double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// The rough entry profile: min(1, (|x-xc|^2 + |t-tc|)^(alpha/2) / K^alpha).
inline double cusp_profile(const SpaceTimePoint& X, const EntryParams& e, double alpha, double K)
{
    double r2 = std::abs(X.t - e.cusp_t);
    for (int k = 0; k < X.dim; ++k) {
        const double dx = X.x[static_cast<std::size_t>(k)] - e.cusp_x[static_cast<std::size_t>(k)];
        r2 += dx * dx;
    }
    return std::min(1.0, std::pow(r2, 0.5 * alpha) / std::pow(K, alpha));
}

inline double entry_scale(int dim) { return dim == 1 ? 1.0 : 1.0 / static_cast<double>(dim); }

}  // namespace detail

/// compact_bump(q) times a polynomial sum_m c_m x^px t^pt. Each axis's bump jet
/// is built once per call and shared by all monomials.
inline AnalyticFn modulated_bump(int dim, const Cylinder& q, const std::vector<Monomial>& modulation)
{
    constexpr int kMaxPow = 3;
    for (const auto& m : modulation) {
        for (int k = 0; k < dim; ++k) {
            if (m.px[static_cast<std::size_t>(k)] < 0 || m.px[static_cast<std::size_t>(k)] > kMaxPow) {
                throw InvalidArgument("modulated_bump: monomial powers must lie in [0, 3]");
            }
        }
        if (m.pt < 0 || m.pt > kMaxPow) throw InvalidArgument("modulated_bump: monomial powers must lie in [0, 3]");
    }
    const double half = q.R / std::sqrt(static_cast<double>(dim));
    const double tc = q.center.t;
    const double r2 = q.R * q.R;
    const auto cx = q.center.x;
    auto space_bump = [cx, half](auto s, int k) {
        return std::numbers::e * bump_profile((s - cx[static_cast<std::size_t>(k)]) / half);
    };
    auto time_bump = [tc, r2](auto t) { return std::numbers::e * bump_profile((2.0 * (t - tc) + r2) / r2); };

    auto value = [=](const SpaceTimePoint& X) {
        double b = time_bump(X.t);
        for (int k = 0; k < dim && b != 0.0; ++k) b *= space_bump(X.x[static_cast<std::size_t>(k)], k);
        if (b == 0.0) return 0.0;
        double poly = 0.0;
        for (const auto& m : modulation) {
            double v = m.coeff * detail::ipow(X.t, m.pt);
            for (int k = 0; k < dim; ++k) {
                v *= detail::ipow(X.x[static_cast<std::size_t>(k)], m.px[static_cast<std::size_t>(k)]);
            }
            poly += v;
        }
        return b * poly;
    };
    auto deriv = [=](const SpaceTimePoint& X, const Deriv& d) {
        // table[k][p] = d^order (bump_k(s) s^p) at the point, for each power p.
        auto table = [&](const Jet7& bump, double s0, std::size_t order) {
            std::array<double, kMaxPow + 1> out{};
            bool all_zero = true;
            for (std::size_t i = 0; i <= Jet7::order; ++i) all_zero = all_zero && bump.coeff(i) == 0.0;
            if (all_zero) return out;
            const Jet7 var = Jet7::variable(s0);
            Jet7 acc = bump;
            for (int p = 0; p <= kMaxPow; ++p) {
                out[static_cast<std::size_t>(p)] = acc.derivative(order);
                acc = acc * var;
            }
            return out;
        };
        const auto tt = table(time_bump(Jet7::variable(X.t)), X.t, static_cast<std::size_t>(d.t));
        std::array<std::array<double, kMaxPow + 1>, kMaxDim> xt{};
        for (int k = 0; k < dim; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            xt[ku] = table(space_bump(Jet7::variable(X.x[ku]), k), X.x[ku], static_cast<std::size_t>(d.x[ku]));
        }
        double acc = 0.0;
        for (const auto& m : modulation) {
            double v = m.coeff * tt[static_cast<std::size_t>(m.pt)];
            for (int k = 0; k < dim; ++k) {
                v *= xt[static_cast<std::size_t>(k)][static_cast<std::size_t>(m.px[static_cast<std::size_t>(k)])];
            }
            acc += v;
        }
        return acc;
    };
    return AnalyticFn(dim, value, deriv, DerivOrder{3, 2}, Support::compact_in_cylinder, "modulated_bump");
}

inline CoefficientField make_coefficients(const ProblemParams& pp, const Cylinder& domain)
{
    const int d = pp.dim;
    if (static_cast<int>(pp.entries.size()) != d * (d + 1) / 2) {
        throw InvalidArgument("coefficients: expected one entry per upper-triangular position");
    }
    const double K = domain.R * std::sqrt(5.0);
    const double scale = detail::entry_scale(d);
    const double mu = pp.mu;
    const double alpha = pp.alpha;
    const auto entries = pp.entries;
    CoefficientField a;
    a.dim = d;
    a.lambda = pp.lambda;
    a.Lambda = pp.Lambda;
    a.alpha = alpha;
    double wmax = 0.0;
    for (const auto& e : entries) wmax = std::max(wmax, e.w_cusp);
    a.cusp_seminorm_bound = std::abs(mu) * scale * wmax * 2.0 * std::pow(2.0, 0.5 * alpha) / std::pow(K, alpha);
    a.eval = [d, K, scale, mu, alpha, entries](const SpaceTimePoint& X) {
        Mat A = Mat::Identity(d, d);
        std::size_t idx = 0;
        for (int i = 0; i < d; ++i) {
            for (int j = i; j < d; ++j, ++idx) {
                const auto& e = entries[idx];
                double arg = e.omega * X.t + e.phase;
                for (int k = 0; k < d; ++k) arg += e.k * X.x[static_cast<std::size_t>(k)];
                const double s = (1.0 - e.w_cusp) * std::sin(arg) +
                                 e.w_cusp * (2.0 * detail::cusp_profile(X, e, alpha, K) - 1.0);
                A(i, j) += mu * scale * s;
                A(j, i) = A(i, j);
            }
        }
        return A;
    };
    return a;
}

inline ManufacturedProblem build_problem(const ProblemParams& pp)
{
    if (pp.dim < 1 || pp.dim > kMaxDim) throw InvalidArgument("problem: unsupported dimension");
    if (!(pp.alpha > 0.0 && pp.alpha < 1.0)) throw InvalidArgument("problem: alpha must lie in (0, 1)");
    if (!(pp.lambda > 0.0 && pp.lambda <= pp.Lambda)) throw InvalidArgument("problem: need 0 < lambda <= Lambda");
    if (pp.lambda > 1.0 || pp.Lambda < 1.0) {
        throw InvalidArgument("problem: coefficients are perturbations of the identity, so need lambda <= 1 <= Lambda");
    }
    if (std::abs(pp.mu) > std::min(1.0 - pp.lambda, pp.Lambda - 1.0) + 1e-15) {
        throw InvalidArgument("problem: perturbation size mu violates the ellipticity bounds");
    }
    const Cylinder domain = family_domain(pp.dim);
    ManufacturedProblem p{"problem_" + std::to_string(pp.index), modulated_bump(pp.dim, domain, pp.modulation),
                          make_coefficients(pp, domain), constant_fn(pp.dim, 0.0), domain};
    const AnalyticFn u = p.u;
    const CoefficientField a = p.a;
    p.f = AnalyticFn(
        pp.dim,
        [u, a](const SpaceTimePoint& X) { return u.derivative(X, Deriv::along(0, 1)) - contract(a(X), hessian(u, X)); },
        {}, DerivOrder{0, 0}, Support::global, p.name + ":f");
    return p;
}

/// Parameters of problem k; depends only on (config, k).
inline ProblemParams problem_params(const FamilyConfig& cfg, int k)
{
    const int d = cfg.dim;
    std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(k), std::uint64_t{0x5cada}};
    std::mt19937_64 rng(seq);
    ProblemParams pp;
    pp.index = k;
    pp.dim = d;
    pp.alpha = cfg.alpha;
    pp.lambda = cfg.lambda;
    pp.Lambda = cfg.Lambda;
    const double room = std::min(1.0 - cfg.lambda, cfg.Lambda - 1.0);
    pp.mu = cfg.amplitude_scale * room * detail::uniform(rng, 0.5, 1.0);

    pp.modulation.push_back({1.0, {}, 0});
    for (int kx = 0; kx < d; ++kx) {
        Monomial lin{detail::uniform(rng, -0.5, 0.5), {}, 0};
        lin.px[static_cast<std::size_t>(kx)] = 1;
        pp.modulation.push_back(lin);
        Monomial quad{detail::uniform(rng, -0.5, 0.5), {}, 0};
        quad.px[static_cast<std::size_t>(kx)] = 2;
        pp.modulation.push_back(quad);
    }
    pp.modulation.push_back({detail::uniform(rng, -0.5, 0.5), {}, 1});
    Monomial mixed{detail::uniform(rng, -0.5, 0.5), {}, 1};
    mixed.px[0] = 1;
    pp.modulation.push_back(mixed);

    // Cusp centers sit on a dyadic lattice where the second derivative of u is
    // not small, so the rough part of a is seen by a:D^2u.
    const Cylinder domain = family_domain(d);
    const AnalyticFn u = modulated_bump(d, domain, pp.modulation);
    std::vector<SpaceTimePoint> lattice;
    std::vector<double> weight;
    const double h = 0.125;
    const int nxl = static_cast<int>(std::lround(2.0 * domain.R / h)) - 1;
    const int ntl = static_cast<int>(std::lround(domain.R * domain.R / h)) - 1;
    std::size_t spatial = 1;
    for (int kx = 0; kx < d; ++kx) spatial *= static_cast<std::size_t>(nxl);
    double wmax = 0.0;
    for (int it = 1; it <= ntl; ++it) {
        for (std::size_t s = 0; s < spatial; ++s) {
            SpaceTimePoint X = SpaceTimePoint::origin(d);
            X.t = domain.t_lo() + it * h;
            std::size_t rem = s;
            for (int kx = 0; kx < d; ++kx) {
                X.x[static_cast<std::size_t>(kx)] =
                    domain.center.x[static_cast<std::size_t>(kx)] - domain.R + h * (1 + static_cast<int>(rem % nxl));
                rem /= static_cast<std::size_t>(nxl);
            }
            if (!domain.contains(X)) continue;
            const double w = std::abs(u.derivative(X, Deriv::along(2, 0, 0)));
            lattice.push_back(X);
            weight.push_back(w);
            wmax = std::max(wmax, w);
        }
    }
    std::vector<SpaceTimePoint> candidates;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        if (weight[i] >= 0.25 * wmax) candidates.push_back(lattice[i]);
    }
    if (candidates.empty()) candidates = lattice;

    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            EntryParams e;
            e.k = detail::uniform(rng, 1.0, 3.0);
            e.omega = detail::uniform(rng, 1.0, 3.0);
            e.phase = detail::uniform(rng, 0.0, 2.0 * std::numbers::pi);
            e.w_cusp = detail::uniform(rng, 0.3, 0.7);
            const auto pick = static_cast<std::size_t>(detail::uniform01(rng) * static_cast<double>(candidates.size()));
            const auto& c = candidates[std::min(pick, candidates.size() - 1)];
            e.cusp_x = c.x;
            e.cusp_t = c.t;
            pp.entries.push_back(e);
        }
    }
    return pp;
}

inline std::vector<ProblemParams> family_params(const FamilyConfig& cfg)
{
    if (cfg.count < 1) throw InvalidArgument("problem family: count must be positive");
    std::vector<ProblemParams> out;
    for (int k = 0; k < cfg.count; ++k) out.push_back(problem_params(cfg, k));
    return out;
}

inline std::vector<ManufacturedProblem> default_problem_family(const FamilyConfig& cfg)
{
    if (!(cfg.lambda > 0.0 && cfg.lambda <= cfg.Lambda)) throw InvalidArgument("problem family: need 0 < lambda <= Lambda");
    if (cfg.lambda > 1.0 || cfg.Lambda < 1.0) {
        throw InvalidArgument("problem family: need lambda <= 1 <= Lambda for perturbations of the identity");
    }
    std::vector<ManufacturedProblem> out;
    for (const auto& pp : family_params(cfg)) out.push_back(build_problem(pp));
    return out;
}

inline std::vector<ManufacturedProblem> default_problem_family(double alpha, double lambda, double Lambda, int count,
                                                               std::uint64_t seed, int dim = 1)
{
    FamilyConfig cfg;
    cfg.dim = dim;
    cfg.alpha = alpha;
    cfg.lambda = lambda;
    cfg.Lambda = Lambda;
    cfg.count = count;
    cfg.seed = seed;
    return default_problem_family(cfg);
}

/// A problem whose solution is c times the given one (same coefficients).
inline ManufacturedProblem scaled(const ManufacturedProblem& p, double c)
{
    ManufacturedProblem q = p;
    const AnalyticFn u = p.u;
    const AnalyticFn f = p.f;
    q.u = AnalyticFn(
        u.dim(), [u, c](const SpaceTimePoint& X) { return c * u(X); },
        [u, c](const SpaceTimePoint& X, const Deriv& d) { return c * u.derivative(X, d); }, u.max_order(), u.support(),
        u.name() + ":scaled");
    q.f = AnalyticFn(
        f.dim(), [f, c](const SpaceTimePoint& X) { return c * f(X); }, {}, DerivOrder{0, 0}, Support::global,
        f.name() + ":scaled");
    return q;
}

}  // namespace schauder
