#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace schauder {

/// Truncated Taylor series in one variable.
///
/// c[k] holds f^(k)(s0) / k!. Arithmetic follows the usual power-series
/// recurrences, so any expression built from the supported operations
/// yields exact derivatives (up to rounding) through order N.
template <std::size_t N>
class Jet {
public:
    static constexpr std::size_t order = N;

    constexpr Jet() = default;
    constexpr Jet(double constant) { c_[0] = constant; }  // NOLINT: implicit by design of the arithmetic

    /// The independent variable expanded around s0.
    static constexpr Jet variable(double s0)
    {
        Jet j(s0);
        if constexpr (N >= 1) {
            j.c_[1] = 1.0;
        }
        return j;
    }

    constexpr double value() const { return c_[0]; }
    constexpr double coeff(std::size_t k) const { return c_[k]; }
    constexpr double& coeff(std::size_t k) { return c_[k]; }

    /// k-th derivative at the expansion point.
    constexpr double derivative(std::size_t k) const
    {
        double f = 1.0;
        for (std::size_t i = 2; i <= k; ++i) {
            f *= static_cast<double>(i);
        }
        return c_[k] * f;
    }

    Jet& operator+=(const Jet& o)
    {
        for (std::size_t k = 0; k <= N; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o)
    {
        for (std::size_t k = 0; k <= N; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Jet& operator*=(double s)
    {
        for (auto& v : c_) v *= s;
        return *this;
    }
    Jet& operator*=(const Jet& o)
    {
        *this = *this * o;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a)
    {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }

    friend Jet operator*(const Jet& a, const Jet& b)
    {
        Jet r;
        for (std::size_t k = 0; k <= N; ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
            r.c_[k] = acc;
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b)
    {
        Jet r;
        for (std::size_t k = 0; k <= N; ++k) {
            double acc = a.c_[k];
            for (std::size_t i = 1; i <= k; ++i) acc -= b.c_[i] * r.c_[k - i];
            r.c_[k] = acc / b.c_[0];
        }
        return r;
    }
    friend Jet operator/(const Jet& a, double s)
    {
        Jet r = a;
        for (auto& v : r.c_) v /= s;
        return r;
    }
    friend Jet operator/(double s, const Jet& b) { return Jet(s) / b; }

    friend Jet exp(const Jet& a)
    {
        Jet r;
        r.c_[0] = std::exp(a.c_[0]);
        for (std::size_t k = 1; k <= N; ++k) {
            double acc = 0.0;
            for (std::size_t j = 1; j <= k; ++j) {
                acc += static_cast<double>(j) * a.c_[j] * r.c_[k - j];
            }
            r.c_[k] = acc / static_cast<double>(k);
        }
        return r;
    }

    friend Jet sin(const Jet& a) { return sincos(a).first; }
    friend Jet cos(const Jet& a) { return sincos(a).second; }

private:
    struct SinCos {
        Jet first;
        Jet second;
    };

    static SinCos sincos(const Jet& a)
    {
        SinCos r;
        r.first.c_[0] = std::sin(a.c_[0]);
        r.second.c_[0] = std::cos(a.c_[0]);
        for (std::size_t k = 1; k <= N; ++k) {
            double s = 0.0;
            double c = 0.0;
            for (std::size_t j = 1; j <= k; ++j) {
                const double ja = static_cast<double>(j) * a.c_[j];
                s += ja * r.second.c_[k - j];
                c -= ja * r.first.c_[k - j];
            }
            r.first.c_[k] = s / static_cast<double>(k);
            r.second.c_[k] = c / static_cast<double>(k);
        }
        return r;
    }

    std::array<double, N + 1> c_{};
};

/// Jet order used for every exact-derivative evaluator in the library.
/// Seven covers three spatial orders plus two Laplacians for time derivatives.
inline constexpr std::size_t kJetOrder = 7;
using Jet7 = Jet<kJetOrder>;

inline double value_of(double v) { return v; }
template <std::size_t N>
double value_of(const Jet<N>& j)
{
    return j.value();
}

}  // namespace schauder
