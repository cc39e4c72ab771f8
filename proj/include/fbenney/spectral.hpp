#pragma once

#include <cmath>
#include <functional>

#include "fft.hpp"

namespace fbenney {

// |k|^p on every mode, zero on the unpaired Nyquist mode and at k = 0.
inline rvec frac_symbol(const GridSpec& g, double p) {
    rvec m(g.N, 0.0);
    for (std::size_t j = 0; j < g.N; ++j) {
        if (g.is_nyquist(j) || g.mode(j) == 0) continue;
        m[j] = std::pow(std::abs(g.k(j)), p);
    }
    return m;
}

// 2/3-rule mask: keeps |j| < N/3.
inline rvec dealias_mask(const GridSpec& g) {
    rvec m(g.N, 0.0);
    const double cut = static_cast<double>(g.N) / 3.0;
    for (std::size_t j = 0; j < g.N; ++j)
        if (!g.is_nyquist(j) && std::abs(static_cast<double>(g.mode(j))) < cut) m[j] = 1.0;
    return m;
}

inline Field apply_multiplier(const Field& f, const rvec& m) {
    cvec c = forward(f.samples);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] *= m[j];
    return from_spectrum(f.grid, c, f.flavor);
}

inline Field apply_multiplier(const Field& f, const cvec& m, Flavor out) {
    cvec c = forward(f.samples);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] *= m[j];
    return from_spectrum(f.grid, c, out);
}

inline Field frac_laplacian_spectral(const Field& f, FracOrder s) {
    return apply_multiplier(f, frac_symbol(f.grid, 2.0 * s.s));
}

// (-Delta)^{p/2} for any p > 0; p = s gives the half power used by the system.
inline Field frac_power(const Field& f, double p) { return apply_multiplier(f, frac_symbol(f.grid, p)); }

inline Field riesz_inverse(const Field& f, FracOrder s, double zero_mode_tol = 1e-10) {
    cvec c = forward(f.samples);
    double scale = 0.0;
    for (const auto& z : c) scale = std::max(scale, std::abs(z));
    if (std::abs(c[0]) > zero_mode_tol * std::max(scale, 1e-300) && std::abs(c[0]) > 1e-300)
        throw ZeroModeError("riesz_inverse: input has nonzero mean (zero mode " +
                            std::to_string(std::abs(c[0])) + ")");
    rvec sym = frac_symbol(f.grid, 2.0 * s.s);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = sym[j] > 0.0 ? c[j] / sym[j] : cplx(0.0, 0.0);
    return from_spectrum(f.grid, c, f.flavor);
}

inline Field derivative(const Field& f) {
    cvec c = forward(f.samples);
    for (std::size_t j = 0; j < c.size(); ++j)
        c[j] *= f.grid.is_nyquist(j) ? cplx(0.0, 0.0) : cplx(0.0, f.grid.k(j));
    return from_spectrum(f.grid, c, f.flavor);
}

inline Field laplacian(const Field& f) {
    cvec c = forward(f.samples);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] *= -f.grid.k(j) * f.grid.k(j);
    return from_spectrum(f.grid, c, f.flavor);
}

inline Field project_band(const Field& f) { return apply_multiplier(f, dealias_mask(f.grid)); }

inline double l2_sq(const Field& f) {
    double s = 0.0;
    for (const auto& z : f.samples) s += std::norm(z);
    return s * f.grid.dx;
}
inline double l2_norm(const Field& f) { return std::sqrt(l2_sq(f)); }

inline double lp_pow(const Field& f, double p) {
    double s = 0.0;
    for (const auto& z : f.samples) s += std::pow(std::abs(z), p);
    return s * f.grid.dx;
}

// Real part of the L2 pairing int f conj(g) dx.
inline cplx inner(const Field& f, const Field& g) {
    require_same_grid(f, g, "inner");
    cplx s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f.samples[i] * std::conj(g.samples[i]);
    return s * f.grid.dx;
}

// Weighted spectral sum  2L * sum_j w_j |c_j|^2.
inline double weighted_sq(const GridSpec& g, const cvec& c, const std::function<double(std::size_t)>& w) {
    double s = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) s += w(j) * std::norm(c[j]);
    return s * g.length();
}

inline double frac_grad_sq(const Field& f, double s) {
    cvec c = forward(f.samples);
    rvec sym = frac_symbol(f.grid, 2.0 * s);
    return weighted_sq(f.grid, c, [&](std::size_t j) { return sym[j]; });
}

inline double h1_sq(const Field& f) {
    cvec c = forward(f.samples);
    return weighted_sq(f.grid, c, [&](std::size_t j) { return 1.0 + f.grid.k(j) * f.grid.k(j); });
}
inline double h1_norm(const Field& f) { return std::sqrt(h1_sq(f)); }

inline double grad_sq(const Field& f) {
    cvec c = forward(f.samples);
    return weighted_sq(f.grid, c, [&](std::size_t j) {
        return f.grid.is_nyquist(j) ? 0.0 : f.grid.k(j) * f.grid.k(j);
    });
}

// Band-limited interpolant sampled on a grid `factor` times finer.
inline cvec refine(const Field& f, std::size_t factor) {
    const std::size_t n = f.grid.N, m = n * factor;
    cvec c = forward(f.samples), big(m, cplx(0.0, 0.0));
    for (std::size_t j = 0; j < n / 2; ++j) big[j] = c[j];
    for (std::size_t j = n / 2 + 1; j < n; ++j) big[m - n + j] = c[j];
    big[n / 2] = 0.5 * c[n / 2];
    big[m - n / 2] = 0.5 * c[n / 2];
    return backward(big);
}

inline double sup_norm(const Field& f, std::size_t factor = 8) {
    double best = 0.0;
    for (const auto& z : refine(f, factor)) best = std::max(best, std::abs(z));
    return best;
}

inline Field scaled(const Field& f, cplx a) {
    Field out = f;
    for (auto& z : out.samples) z *= a;
    if (out.is_real()) out.realize();
    return out;
}

inline Field add(const Field& a, const Field& b, double cb = 1.0) {
    require_same_grid(a, b, "add");
    Field out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out.samples[i] += cb * b.samples[i];
    return out;
}

inline double mean(const Field& f) {
    cplx s = 0.0;
    for (const auto& z : f.samples) s += z;
    return (s / static_cast<double>(f.size())).real();
}

inline double max_abs_diff(const Field& a, const Field& b) {
    require_same_grid(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.samples[i] - b.samples[i]));
    return m;
}

}  // namespace fbenney
