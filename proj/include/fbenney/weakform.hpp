#pragma once

#include "testfunction.hpp"

namespace fbenney {

enum class FracTermPhase {
    consistent,  // multiply-and-integrate of the short-wave equation
    literal      // an extra factor i on the fractional pairing
};

struct WeakOptions {
    bool perturbed = true;
    FracTermPhase phase = FracTermPhase::consistent;
};

namespace detail {

// int a conj(b) dx
inline cplx pairing(const cvec& a, const cvec& b, double dx) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
    return acc * dx;
}

}  // namespace detail

// Short-wave weak identity for the test function phi:
//   i int int u conj(phi_t) + int int D^s u conj(D^s phi) + i int u0 conj(phi(0))
//   - eps^a int int u conj(phi_xx) + alpha int int v u conj(phi) + gamma int int |u|^2 u conj(phi)
// with D^s = (-Delta)^{s/2}; the eps^a term only when perturbed.
inline cplx weak_residual_u(const Trajectory& tr, const TestFunction& phi, const WeakOptions& opt = {}) {
    const GridSpec& g = tr.grid;
    const SystemParams& p = tr.params;
    if (tr.size() < 2) throw DomainError("weak_residual_u: trajectory too short");
    const double T = tr.t.back();
    if (phi.check_support(g, T)) return 0.0;

    const Field X = phi.space(g);
    const cvec cX = forward(X.samples);
    const rvec sym = frac_symbol(g, 2.0 * p.s);
    cvec lapX(g.N);
    for (std::size_t j = 0; j < g.N; ++j) lapX[j] = -g.k(j) * g.k(j) * cX[j];
    const cvec Xxx = backward(lapX);
    const double ea = opt.perturbed ? std::pow(tr.run.eps, tr.run.a) : 0.0;
    const cplx frac_phase = opt.phase == FracTermPhase::literal ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
    const cplx I(0.0, 1.0);

    const rvec w = detail::simpson_weights(tr.size(), tr.sample_dt());
    cplx total = I * detail::pairing(tr.u.front().samples, X.samples, g.dx) * phi.time_profile(tr.t.front());
    for (std::size_t n = 0; n < tr.size(); ++n) {
        const double th = phi.time_profile(tr.t[n]), dth = phi.time_derivative(tr.t[n]);
        if (th == 0.0 && dth == 0.0) continue;
        const cvec& u = tr.u[n].samples;
        const cvec& v = tr.v[n].samples;
        const cvec cu = forward(u);
        cplx frac = 0.0;
        for (std::size_t j = 0; j < g.N; ++j) frac += sym[j] * cu[j] * std::conj(cX[j]);
        frac *= g.length();
        cvec nl(g.N);
        for (std::size_t i = 0; i < g.N; ++i) nl[i] = (p.alpha * v[i].real() + p.gamma * std::norm(u[i])) * u[i];
        const cplx integrand = I * dth * detail::pairing(u, X.samples, g.dx) +
                               th * (frac_phase * frac - ea * detail::pairing(u, Xxx, g.dx) +
                                     detail::pairing(nl, X.samples, g.dx));
        total += w[n] * integrand;
    }
    return total;
}

// Long-wave weak identity for the real test function psi:
//   int int v psi_t - G(v) D psi + int v0 psi(0) + eps^b int int v psi_xx + beta int int |u|^2 D psi
// with D = (-Delta)^{s/2}, G = g_eps and the eps^b term when perturbed, G = g otherwise.
inline double weak_residual_v(const Trajectory& tr, const TestFunction& psi, const WeakOptions& opt = {}) {
    const GridSpec& g = tr.grid;
    const SystemParams& p = tr.params;
    if (psi.complex_valued) throw DomainError("weak_residual_v: test function must be real");
    if (tr.size() < 2) throw DomainError("weak_residual_v: trajectory too short");
    const double T = tr.t.back();
    if (psi.check_support(g, T)) return 0.0;

    const Field Y = psi.space(g);
    const rvec DY = frac_power(Y, p.s).real_part();
    const rvec Yxx = laplacian(Y).real_part();
    const rvec y = Y.real_part();
    const double eb = opt.perturbed ? std::pow(tr.run.eps, tr.run.b) : 0.0;
    const double eps = opt.perturbed ? tr.run.eps : 0.0;

    const rvec w = detail::simpson_weights(tr.size(), tr.sample_dt());
    double init = 0.0;
    for (std::size_t i = 0; i < g.N; ++i) init += tr.v.front().samples[i].real() * y[i];
    double total = init * g.dx * psi.time_profile(tr.t.front());
    for (std::size_t n = 0; n < tr.size(); ++n) {
        const double th = psi.time_profile(tr.t[n]), dth = psi.time_derivative(tr.t[n]);
        if (th == 0.0 && dth == 0.0) continue;
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < g.N; ++i) {
            const double v = tr.v[n].samples[i].real();
            const double m = std::norm(tr.u[n].samples[i]);
            a += v * y[i];
            b += -(p.g(v) + eps * v) * DY[i] + eb * v * Yxx[i] + p.beta * m * DY[i];
        }
        total += w[n] * (dth * a + th * b) * g.dx;
    }
    return total;
}

}  // namespace fbenney
