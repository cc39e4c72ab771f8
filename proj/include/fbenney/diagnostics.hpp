#pragma once

#include <limits>

#include "solver.hpp"

namespace fbenney {

// Spectral scalars of one (u, v) state that every diagnostic reuses.
struct StateNorms {
    double mass = 0.0;      // |u|_2^2
    double fg = 0.0;        // |(-D)^{s/2} u|_2^2
    double ux = 0.0;        // |u_x|_2^2
    double u4 = 0.0;        // int |u|^4
    double u_sup = 0.0;
    double v_l2sq = 0.0;
    double v_sup = 0.0;
    double vx = 0.0;        // |v_x|_2^2
    double v_quarter = 0.0; // |(-D)^{s/4} v|_2^2
    double cross = 0.0;     // int v |u|^2
};

inline Field modulus_sq(const Field& u) {
    rvec m(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) m[i] = std::norm(u.samples[i]);
    return real_field(u.grid, m);
}

inline StateNorms state_norms(const Field& u, const Field& v, double s) {
    require_same_grid(u, v, "state_norms");
    StateNorms n;
    n.mass = l2_sq(u);
    n.fg = frac_grad_sq(u, s);
    n.ux = grad_sq(u);
    n.u4 = lp_pow(u, 4.0);
    n.u_sup = sup_norm(u);
    n.v_l2sq = l2_sq(v);
    n.v_sup = sup_norm(v);
    n.vx = grad_sq(v);
    n.v_quarter = frac_grad_sq(v, 0.5 * s);
    double c = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) c += v.samples[i].real() * std::norm(u.samples[i]);
    n.cross = c * u.grid.dx;
    return n;
}

// E = |(-D)^{s/2}u|^2 + eps^a |u_x|^2 + (gamma/2) int |u|^4 + alpha int v |u|^2
inline double energy_functional(const StateNorms& n, const SystemParams& p, const PerturbedRun& r) {
    return n.fg + std::pow(r.eps, r.a) * n.ux + 0.5 * p.gamma * n.u4 + p.alpha * n.cross;
}

namespace detail {

inline double real_pairing(const Field& a, const Field& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a.samples[i].real() * b.samples[i].real();
    return acc * a.grid.dx;
}

}  // namespace detail

// alpha beta int D(|u|^2)|u|^2 - alpha int |u|^2 D g_eps(v) - alpha eps^b int (|u|^2)_x v_x,  D = (-Delta)^{s/2}
inline double energy_rate(const Field& u, const Field& v, const SystemParams& p, const PerturbedRun& r) {
    if (p.alpha == 0.0) return 0.0;
    const Field m = modulus_sq(u);
    const Field Dm = frac_power(m, p.s);
    const Field Dg = frac_power(g_eps_apply(v, r.eps, p.g), p.s);
    const double t1 = detail::real_pairing(Dm, m);
    const double t2 = detail::real_pairing(m, Dg);
    const double t3 = detail::real_pairing(derivative(m), derivative(v));
    return p.alpha * p.beta * t1 - p.alpha * t2 - p.alpha * std::pow(r.eps, r.b) * t3;
}

// int D g_eps(v) v + eps^b |v_x|^2 - beta int D(|u|^2) v; the v-balance says
// (1/2) d/dt |v|^2 + this = 0.
inline double v_dissipation(const Field& u, const Field& v, const SystemParams& p, const PerturbedRun& r) {
    const Field Dg = frac_power(g_eps_apply(v, r.eps, p.g), p.s);
    const Field Dm = frac_power(modulus_sq(u), p.s);
    return detail::real_pairing(Dg, v) + std::pow(r.eps, r.b) * grad_sq(v) - p.beta * detail::real_pairing(Dm, v);
}

namespace detail {

// Second-order derivative of a uniformly sampled series at index n.
inline double series_derivative(const rvec& y, std::size_t n, double h) {
    const std::size_t m = y.size();
    if (m < 3) throw DomainError("time derivative needs at least three samples");
    if (n == 0) return (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
    if (n + 1 == m) return (3.0 * y[m - 1] - 4.0 * y[m - 2] + y[m - 3]) / (2.0 * h);
    return (y[n + 1] - y[n - 1]) / (2.0 * h);
}

inline double cumulative_trapezoid_step(double acc, double prev, double cur, double h) {
    return acc + 0.5 * h * (prev + cur);
}

}  // namespace detail

// Residual of the energy identity on a window of three consecutive samples.
inline double energy_balance_residual(const Field& u_prev, const Field& v_prev, const Field& u_mid,
                                      const Field& v_mid, const Field& u_next, const Field& v_next,
                                      double h, const SystemParams& p, const PerturbedRun& r) {
    const double e0 = energy_functional(state_norms(u_prev, v_prev, p.s), p, r);
    const double e2 = energy_functional(state_norms(u_next, v_next, p.s), p, r);
    return std::abs((e2 - e0) / (2.0 * h) - energy_rate(u_mid, v_mid, p, r));
}

inline double v_balance_residual(const Field& v_prev, const Field& u_mid, const Field& v_mid,
                                 const Field& v_next, double h, const SystemParams& p, const PerturbedRun& r) {
    const double d = (l2_sq(v_next) - l2_sq(v_prev)) / (2.0 * h);
    return std::abs(0.5 * d + v_dissipation(u_mid, v_mid, p, r));
}

// (|du/dt|_{H^-1}, |dv/dt|_{H^-1}) from two consecutive samples.
inline std::pair<double, double> dt_negative_norm(const Field& u0, const Field& v0, const Field& u1,
                                                  const Field& v1, double h) {
    if (!(h > 0.0)) throw DomainError("dt_negative_norm: spacing must be positive");
    auto norm = [h](const Field& a, const Field& b) {
        const cvec c = forward(add(b, a, -1.0).samples);
        const double w = weighted_sq(a.grid, c, [&](std::size_t j) { return 1.0 / (1.0 + a.grid.k(j) * a.grid.k(j)); });
        return std::sqrt(w) / h;
    };
    return {norm(u0, u1), norm(v0, v1)};
}

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double v_l2 = 0.0;
    double v_sup = 0.0;
    double energy_balance_residual = 0.0;
    double v_balance_residual = 0.0;
    double theta = 0.0;
    double H_bound = 0.0;
    double dtu_hminus1 = 0.0;
    double dtv_hminus1 = 0.0;
};

// Single-state record; time-derivative fields stay zero.
inline DiagnosticsRecord record_diagnostics(const Field& u, const Field& v, double t, const SystemParams& p,
                                            const PerturbedRun& r) {
    const StateNorms n = state_norms(u, v, p.s);
    DiagnosticsRecord d;
    d.t = t;
    d.mass = n.mass;
    d.energy = energy_functional(n, p, r);
    d.v_l2 = std::sqrt(n.v_l2sq);
    d.v_sup = n.v_sup;
    return d;
}

struct ThetaSeries {
    rvec t, lhs, theta, h, H, v_l2sq;
    double theta_margin = std::numeric_limits<double>::infinity();  // min over samples of theta - lhs
    double H_margin = std::numeric_limits<double>::infinity();      // min of H - |v|^2

    bool theta_holds(double tol = 1e-10) const { return theta_margin >= -tol; }
    bool H_holds(double tol = 1e-10) const { return H_margin >= -tol; }
};

struct I15Report {
    double lhs_literal = 0.0;     // eps^{1/2} and eps^{7/2} inside the norms
    double lhs_derivation = 0.0;  // eps and eps^b as tracked in the estimate
    double rhs = 0.0;
    bool holds() const { return lhs_literal <= rhs && lhs_derivation <= rhs; }
};

struct TrajectoryDiagnostics {
    std::vector<DiagnosticsRecord> records;
    std::vector<StateNorms> norms;
    ThetaSeries theta;
    I15Report i15;
    double max_energy_residual = 0.0;
    double max_v_residual = 0.0;
    double mass_drift = 0.0;  // max relative |mass - mass0|
    double sup_excess = 0.0;  // max over t of v_sup(t) - v_sup(0)
    double dtu_integral = 0.0;
    double dtv_integral = 0.0;
};

// theta(t) and the H-bound along a trajectory; h is the measured left side of
// the short-wave estimate.
inline ThetaSeries theta_envelope(const Trajectory& tr, const std::vector<StateNorms>& ns) {
    const SystemParams& p = tr.params;
    const PerturbedRun& r = tr.run;
    const double s = p.s, T = r.T, ea = std::pow(r.eps, r.a), eb = std::pow(r.eps, r.b);
    const double a = std::abs(p.alpha), b = std::abs(p.beta);
    const StateNorms& n0 = ns.front();
    const double nu = std::sqrt(n0.mass), nv = std::sqrt(n0.v_l2sq);
    const double gp = p.g.M + r.eps;
    const double k2 = kPi * (2.0 * s - 1.0);
    const double c1 = 4.0 * a / std::sqrt(k2) * gp * std::pow(nu, 1.0 - 0.5 / s);
    const double c2 = 8.0 * a * b / k2 * std::pow(nu, 3.0 - 1.0 / s);
    const double c3 = 4.0 / std::sqrt(kPi) * a * eb * std::sqrt(nu);
    const double c4 = 16.0 * a * a * b * b * std::exp(T) / k2 * std::pow(nu, 2.0 - 1.0 / s);
    const double base = 1.0 + n0.fg + ea * n0.ux + 0.5 * n0.u4 + n0.u_sup * nv * nu + a * a * std::exp(T) * n0.v_l2sq;
    const double cH = 16.0 * b * b * std::exp(T) / k2 * std::pow(nu, 2.0 - 1.0 / s);

    auto integrand = [&](const StateNorms& n) {
        const double d = std::sqrt(n.fg);
        return c1 * std::sqrt(n.v_l2sq) * std::pow(d, 1.0 + 0.5 / s) + c2 * std::pow(d, 1.0 + 1.0 / s) +
               c3 * std::sqrt(n.vx) * std::pow(n.ux, 0.75) + c4 * std::pow(d, 2.0 + 1.0 / s);
    };
    auto hval = [&](const StateNorms& n) { return n.fg + ea * n.ux + 0.25 * n.u4; };

    ThetaSeries out;
    double acc = 0.0, accH = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (i > 0) {
            const double dt = tr.t[i] - tr.t[i - 1];
            acc = detail::cumulative_trapezoid_step(acc, integrand(ns[i - 1]), integrand(ns[i]), dt);
            accH = detail::cumulative_trapezoid_step(accH, std::pow(hval(ns[i - 1]), 1.0 + 0.5 / s),
                                                     std::pow(hval(ns[i]), 1.0 + 0.5 / s), dt);
        }
        const double lhs = 1.0 + hval(ns[i]);
        const double th = base + acc;
        const double H = std::exp(T) * n0.v_l2sq + cH * accH;
        out.t.push_back(tr.t[i]);
        out.lhs.push_back(lhs);
        out.theta.push_back(th);
        out.h.push_back(hval(ns[i]));
        out.H.push_back(H);
        out.v_l2sq.push_back(ns[i].v_l2sq);
        out.theta_margin = std::min(out.theta_margin, th - lhs);
        out.H_margin = std::min(out.H_margin, H - ns[i].v_l2sq);
    }
    return out;
}

// Both normalizations of the time-integrated long-wave dissipation against its
// stated bound, at the final time.
inline I15Report i15_report(const Trajectory& tr, const std::vector<StateNorms>& ns, const ThetaSeries& th) {
    const SystemParams& p = tr.params;
    const PerturbedRun& r = tr.run;
    const double s = p.s, e = r.eps, C = cns_constant(s);
    const double nu = std::sqrt(ns.front().mass);
    const double k2 = kPi * (2.0 * s - 1.0);
    I15Report rep;
    double lit = 0.0, der = 0.0, hint = 0.0, Hint = 0.0;
    for (std::size_t i = 1; i < ns.size(); ++i) {
        const double dt = tr.t[i] - tr.t[i - 1];
        auto fl = [&](const StateNorms& n) { return e * n.v_quarter / C + std::pow(e, 7.0) * n.vx; };
        auto fd = [&](const StateNorms& n) { return e * n.v_quarter / C + std::pow(e, r.b) * n.vx; };
        lit += 0.5 * dt * (fl(ns[i - 1]) + fl(ns[i]));
        der += 0.5 * dt * (fd(ns[i - 1]) + fd(ns[i]));
        hint += 0.5 * dt * (std::pow(th.h[i - 1], 2.0 + 1.0 / s) + std::pow(th.h[i], 2.0 + 1.0 / s));
        Hint += 0.5 * dt * (th.H[i - 1] * th.H[i - 1] + th.H[i] * th.H[i]);
    }
    rep.lhs_literal = lit;
    rep.lhs_derivation = der;
    rep.rhs = 0.5 * ns.front().v_l2sq + 8.0 * p.beta * p.beta / k2 * std::pow(nu, 2.0 - 1.0 / s) * hint + 0.5 * Hint;
    return rep;
}

inline TrajectoryDiagnostics diagnose(const Trajectory& tr, std::size_t workers = 1) {
    const SystemParams& p = tr.params;
    const PerturbedRun& r = tr.run;
    const std::size_t n = tr.size();
    TrajectoryDiagnostics d;
    d.norms.resize(n);
    rvec rate(n), vdis(n);
    parallel_for(n, workers, [&](std::size_t i) {
        d.norms[i] = state_norms(tr.u[i], tr.v[i], p.s);
        rate[i] = energy_rate(tr.u[i], tr.v[i], p, r);
        vdis[i] = v_dissipation(tr.u[i], tr.v[i], p, r);
    });
    rvec E(n), V(n);
    for (std::size_t i = 0; i < n; ++i) {
        E[i] = energy_functional(d.norms[i], p, r);
        V[i] = d.norms[i].v_l2sq;
    }
    d.theta = theta_envelope(tr, d.norms);
    if (n >= 2) d.i15 = i15_report(tr, d.norms, d.theta);
    const double h = tr.sample_dt();
    const double m0 = d.norms.front().mass, s0 = d.norms.front().v_sup;
    d.records.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        DiagnosticsRecord& rec = d.records[i];
        const StateNorms& ni = d.norms[i];
        rec.t = tr.t[i];
        rec.mass = ni.mass;
        rec.energy = E[i];
        rec.v_l2 = std::sqrt(ni.v_l2sq);
        rec.v_sup = ni.v_sup;
        if (n >= 3) {
            rec.energy_balance_residual = std::abs(detail::series_derivative(E, i, h) - rate[i]);
            rec.v_balance_residual = std::abs(0.5 * detail::series_derivative(V, i, h) + vdis[i]);
            // one-sided endpoints are not reported in the maxima
            if (i > 0 && i + 1 < n) {
                d.max_energy_residual = std::max(d.max_energy_residual, rec.energy_balance_residual);
                d.max_v_residual = std::max(d.max_v_residual, rec.v_balance_residual);
            }
        }
        rec.theta = d.theta.theta[i];
        rec.H_bound = d.theta.H[i];
        if (i > 0) {
            auto [du, dv] = dt_negative_norm(tr.u[i - 1], tr.v[i - 1], tr.u[i], tr.v[i], h);
            rec.dtu_hminus1 = du;
            rec.dtv_hminus1 = dv;
            d.dtu_integral += h * du * du;
            d.dtv_integral += h * dv * dv;
        }
        if (m0 > 0.0) d.mass_drift = std::max(d.mass_drift, std::abs(ni.mass - m0) / m0);
        d.sup_excess = std::max(d.sup_excess, ni.v_sup - s0);
    }
    return d;
}

// B_s(v, w) = C_{1,s} int int (v(x)-v(y)) (w(x)-w(y)) |x-y|^{-1-2s} on the torus.
inline GagliardoResult bilinear_form(const Field& v, const Field& w, FracOrder s, const QuadratureSpec& q = {}) {
    require_same_grid(v, w, "bilinear_form");
    const std::size_t mask = v.grid.N - 1;
    const auto& a = v.samples;
    const auto& b = w.samples;
    auto E = [&](std::size_t i, std::size_t m) {
        const std::size_t ip = (i + m) & mask, im = (i - m) & mask;
        return cplx(((a[i] - a[ip]) * std::conj(b[i] - b[ip]) + (a[i] - a[im]) * std::conj(b[i] - b[im])).real(), 0.0);
    };
    PairSum ps = pair_quadrature(v.grid, s.s, E, q);
    double total = 0.0;
    for (const auto& z : ps.values) total += z.real();
    const double C = cns_constant(s);
    return {C * total * v.grid.dx, C * ps.error * v.grid.dx * static_cast<double>(v.grid.N)};
}

enum class CoercivityConstant { sharp, stated };

// int (-Delta)^{s/2} G(v) v  >=  c |(-Delta)^{s/4} v|^2,  with c = m (sharp) or
// m / C_{1,s} (as stated). Evaluated on the refined grid.
inline InequalityReport check_coercivity(const std::function<double(double)>& G, double m, const Field& v,
                                         FracOrder s, CoercivityConstant which = CoercivityConstant::sharp,
                                         double tol = 1e-10, std::size_t refine_factor = 8) {
    if (!v.is_real()) throw DomainError("check_coercivity: needs a real field");
    const Field fine = detail::refined_field(v, refine_factor);
    Field Gv = fine;
    for (auto& z : Gv.samples) z = cplx(G(z.real()), 0.0);
    const double lhs = detail::real_pairing(frac_power(Gv, s.s), fine);
    const double c = which == CoercivityConstant::sharp ? m : m / cns_constant(s);
    const double rhs = c * frac_grad_sq(fine, 0.5 * s.s);
    // reversed orientation: the report passes when rhs <= lhs
    auto r = make_report("coercivity", s.s, rhs, lhs, c, which == CoercivityConstant::sharp ? "sharp" : "stated",
                         tol * std::max(1.0, std::abs(lhs)));
    return r;
}

struct SmallnessReport {
    double C = 0.0, C1 = 0.0, C2 = 0.0, C3 = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
    double alpha0 = 0.0;  // largest |alpha| meeting the condition, data fixed
    double E0 = 0.0;      // largest |u0|_2 meeting the condition along the ray through u0
    std::string route;    // "alpha", "energy", "both" or "none"
};

struct SmallnessInputs {
    double fg = 0.0, ux = 0.0, u4 = 0.0, u_sup = 0.0, nu = 0.0, nv = 0.0;
};

inline SmallnessInputs smallness_inputs(const Field& u0, const Field& v0, double s) {
    const Field u = project_band(u0);
    const Field v = project_band(v0);
    SmallnessInputs in;
    in.fg = frac_grad_sq(u, s);
    in.ux = grad_sq(u);
    in.u4 = lp_pow(u, 4.0);
    in.u_sup = sup_norm(u);
    in.nu = l2_norm(u);
    in.nv = l2_norm(v);
    return in;
}

namespace detail {

// Constants of the global estimate; lam scales u0.
inline SmallnessReport smallness_constants(const SmallnessInputs& in, double alpha, double beta, double s, double T,
                                           double eps, int a, int b, double gp, double lam = 1.0) {
    const double a2 = alpha * alpha, b2 = beta * beta, pi = kPi;
    const double fg = lam * lam * in.fg, ux = lam * lam * in.ux, u4 = std::pow(lam, 4) * in.u4;
    const double us = lam * in.u_sup, nu = lam * in.nu, nv = in.nv;
    const double eb = std::pow(eps, b);
    const double e32 = std::pow(eps, -1.5 * a);
    SmallnessReport r;
    const double bracket = 1.0 + fg + ux + 0.5 * u4 + us * nv * nu + a2 * std::exp(T) * nv * nv;
    r.C = 64.0 * std::pow(bracket, 1.0 - 0.5 / s) +
          32.0 * a2 * (2.0 * s - 1.0) / (s * s * pi) * gp * gp * std::pow(nu, 2.0 - 1.0 / s) * nv * nv *
              std::exp(3.0 * T) +
          16.0 * a2 * eb * e32 * (2.0 * s - 1.0) * (2.0 * s - 1.0) / (pi * s * s) * nu * nv * nv * std::exp(2.0 * T);
    r.C1 = 64.0 * T;
    r.C2 = 256.0 * a2 * b2 * T / (s * s * pi * pi) * std::pow(nu, 6.0 - 2.0 / s);
    r.C3 = 512.0 * a2 * b2 / (s * s * pi * pi) * gp * gp * std::pow(nu, 4.0 - 2.0 / s) * std::exp(3.0 * T) +
           256.0 * cns_constant(s) * a2 * b2 * std::pow(eps, b - 1) * e32 * (2.0 * s - 1.0) / (pi * pi * s * s) *
               std::pow(nu, 3.0 - 1.0 / s) * std::exp(2.0 * T) +
           1024.0 * a2 * a2 * b2 * b2 * std::exp(2.0 * T) / (pi * pi * s * s) * std::pow(nu, 4.0 - 2.0 / s) * T;
    const double q = 0.5 * (2.0 * s - 1.0);
    r.lhs = r.C * std::pow(r.C2 + r.C3, q) * std::exp(64.0 * T * T) * std::pow(T, q);
    r.rhs = std::pow(q, q);
    r.satisfied = r.lhs <= r.rhs;
    return r;
}

// Largest x in [0, inf) with pred(x) true, for pred monotone true-then-false.
template <class P>
double frontier(P&& pred) {
    // the constants carry exp(64 T^2), so frontiers can sit near 1e-100
    double lo = 0.0, hi = 1e-300;
    while (pred(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) return std::numeric_limits<double>::infinity();
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (pred(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace detail

inline SmallnessReport smallness_condition(const SystemParams& p, const SmallnessInputs& in, double T, double eps,
                                           int a = 4, int b = 7) {
    FracOrder::coupled(p.s);
    if (!(T > 0.0)) throw DomainError("smallness_condition: T must be positive");
    const double gp = p.g.M + eps;
    SmallnessReport r = detail::smallness_constants(in, p.alpha, p.beta, p.s, T, eps, a, b, gp);
    r.alpha0 = detail::frontier([&](double al) {
        return detail::smallness_constants(in, al, p.beta, p.s, T, eps, a, b, gp).satisfied;
    });
    if (in.nu > 0.0) {
        const double lam = detail::frontier([&](double l) {
            return detail::smallness_constants(in, p.alpha, p.beta, p.s, T, eps, a, b, gp, l).satisfied;
        });
        r.E0 = std::isinf(lam) ? lam : lam * in.nu;
    } else {
        r.E0 = std::numeric_limits<double>::infinity();
    }
    const bool ra = std::abs(p.alpha) <= r.alpha0, re = in.nu <= r.E0;
    r.route = ra && re ? "both" : ra ? "alpha" : re ? "energy" : "none";
    return r;
}

inline SmallnessReport smallness_condition(const SystemParams& p, const Field& u0, const Field& v0, double T,
                                           double eps, int a = 4, int b = 7) {
    return smallness_condition(p, smallness_inputs(u0, v0, p.s), T, eps, a, b);
}

}  // namespace fbenney
