#pragma once

#include <functional>
#include <string>

#include "spectral.hpp"

namespace fbenney {

// Porous-medium nonlinearity g with g(0) = 0 and m <= g' <= M.
struct NonlinearityG {
    std::string name = "zero";
    double m = 0.0;
    double M = 0.0;
    std::function<double(double)> g = [](double) { return 0.0; };
    std::function<double(double)> dg = [](double) { return 0.0; };

    double operator()(double v) const { return g(v); }

    // Samples g' on [-range, range]; throws when the declared bounds are off.
    void validate(double range = 10.0, std::size_t n = 2001, double tol = 1e-12) const {
        if (m < 0.0 || M < m) throw DomainError("NonlinearityG '" + name + "': need 0 <= m <= M");
        if (g(0.0) != 0.0) throw DomainError("NonlinearityG '" + name + "': g(0) must be 0");
        for (std::size_t i = 0; i < n; ++i) {
            const double v = -range + 2.0 * range * static_cast<double>(i) / static_cast<double>(n - 1);
            const double d = dg(v);
            if (d < m - tol || d > M + tol)
                throw DomainError("NonlinearityG '" + name + "': g' leaves [m, M] at v=" + std::to_string(v));
        }
    }
};

inline NonlinearityG g_zero() { return NonlinearityG{}; }

inline NonlinearityG g_linear(double slope) {
    NonlinearityG n;
    n.name = "linear";
    n.m = slope;
    n.M = slope;
    n.g = [slope](double v) { return slope * v; };
    n.dg = [slope](double) { return slope; };
    return n;
}

// g(v) = m v + (M - m) tanh(v), so m <= g' <= M.
inline NonlinearityG g_tanh_blend(double m, double M) {
    NonlinearityG n;
    n.name = "tanh_blend";
    n.m = m;
    n.M = M;
    n.g = [m, M](double v) { return m * v + (M - m) * std::tanh(v); };
    n.dg = [m, M](double v) {
        const double c = std::cosh(v);
        return m + (M - m) / (c * c);
    };
    return n;
}

inline NonlinearityG make_nonlinearity(const std::string& kind, double m, double M) {
    if (kind == "zero") return g_zero();
    if (kind == "linear") return g_linear(M);
    if (kind == "tanh_blend" || kind == "tanh") return g_tanh_blend(m, M);
    throw ConfigError("unknown nonlinearity '" + kind + "' (expected zero, linear, tanh_blend)");
}

inline double g_eps(const NonlinearityG& g, double eps, double v) { return g(v) + eps * v; }

inline Field g_eps_apply(const Field& v, double eps, const NonlinearityG& g) {
    if (!v.is_real()) throw DomainError("g_eps_apply: needs a real field");
    Field out = v;
    for (auto& z : out.samples) z = cplx(g_eps(g, eps, z.real()), 0.0);
    return out;
}

}  // namespace fbenney
