#pragma once

#include "sobolev.hpp"

namespace fbenney {

struct PropagatorSpec {
    double eps = 0.1;
    int a = 4;
    int b = 7;
    double s = 0.75;

    double eps_a() const { return std::pow(eps, a); }
    double eps_b() const { return std::pow(eps, b); }

    void validate() const {
        if (!(eps > 0.0 && eps < 1.0)) throw DomainError("PropagatorSpec: eps must lie in (0,1)");
        if (a < 0 || b < 0) throw DomainError("PropagatorSpec: exponents must be nonnegative");
        FracOrder check(s);
        (void)check;
    }
};

// Phase rate |k|^{2s} + eps^a k^2 of U_eps. The Nyquist mode keeps its |k| so
// the multiplier stays unimodular on every stored coefficient.
inline rvec schrodinger_rate(const GridSpec& g, const PropagatorSpec& p) {
    rvec w(g.N);
    const double ea = p.eps_a();
    for (std::size_t j = 0; j < g.N; ++j) {
        const double k = std::abs(g.k(j));
        w[j] = std::pow(k, 2.0 * p.s) + ea * k * k;
    }
    return w;
}

inline rvec heat_rate(const GridSpec& g, const PropagatorSpec& p) {
    rvec w(g.N);
    const double eb = p.eps_b();
    for (std::size_t j = 0; j < g.N; ++j) w[j] = eb * g.k(j) * g.k(j);
    return w;
}

inline Field schrodinger_group_apply(const Field& u, double t, const PropagatorSpec& p) {
    p.validate();
    const rvec w = schrodinger_rate(u.grid, p);
    cvec m(u.grid.N);
    for (std::size_t j = 0; j < m.size(); ++j) m[j] = std::polar(1.0, -w[j] * t);
    return apply_multiplier(u, m, u.flavor == Flavor::real_longwave ? Flavor::complex_shortwave : u.flavor);
}

inline Field heat_semigroup_apply(const Field& v, double t, const PropagatorSpec& p) {
    p.validate();
    if (t < 0.0) throw DomainError("heat_semigroup_apply: t must be nonnegative");
    const rvec w = heat_rate(v.grid, p);
    rvec m(v.grid.N);
    for (std::size_t j = 0; j < m.size(); ++j) m[j] = std::exp(-w[j] * t);
    return apply_multiplier(v, m);
}

inline double heat_smoothing_constant(const PropagatorSpec& p) { return 1.0 / std::sqrt(kPi * p.eps_b()); }

// |d/dx W(t) v|_2 <= (pi eps^b)^{-1/2} t^{-1/2} |v|_2
inline InequalityReport check_heat_smoothing(const Field& v, double t, const PropagatorSpec& p,
                                             double tol = 1e-12) {
    if (!(t > 0.0)) throw DomainError("check_heat_smoothing: t must be positive");
    const Field w = heat_semigroup_apply(v, t, p);
    const double lhs = std::sqrt(grad_sq(w));
    const double c = heat_smoothing_constant(p);
    const double rhs = c / std::sqrt(t) * l2_norm(v);
    return make_report("heat_smoothing", p.s, lhs, rhs, c, "t=" + std::to_string(t), tol * std::max(1.0, rhs));
}

// <u, w>_{H^s} = 2L sum (1+k^2)^s c_u conj(c_w)
inline cplx hs_inner(const Field& u, const Field& w, double s) {
    require_same_grid(u, w, "hs_inner");
    const cvec cu = forward(u.samples), cw = forward(w.samples);
    cplx acc = 0.0;
    for (std::size_t j = 0; j < cu.size(); ++j)
        acc += std::pow(1.0 + u.grid.k(j) * u.grid.k(j), s) * cu[j] * std::conj(cw[j]);
    return acc * u.grid.length();
}

}  // namespace fbenney
