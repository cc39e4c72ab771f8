#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <random>

#include "diagnostics.hpp"
#include "testfunction.hpp"

namespace fbenney {

namespace detail {

inline double gk(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-13,
                 unsigned depth = 15) {
    if (!(hi > lo)) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, depth, tol);
}

// Fixed 30-point Gauss rule; the entropy integrands are smooth on each side of
// their kink and this is called once per node and sample.
template <class F>
double gl30(F&& f, double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    return boost::math::quadrature::gauss<double, 30>::integrate(std::forward<F>(f), lo, hi);
}

}  // namespace detail

// eta(v) = (1/2) int eta''(xi) |v - xi| dxi over the support [lo, hi].
inline double reconstruct_entropy(const std::function<double(double)>& d2eta, double lo, double hi, double v) {
    if (!(hi >= lo)) throw DomainError("reconstruct_entropy: empty support");
    auto f = [&](double xi) { return d2eta(xi) * std::abs(v - xi); };
    const double m = std::clamp(v, lo, hi);
    return 0.5 * (detail::gl30(f, lo, m) + detail::gl30(f, m, hi));
}

// Convex entropy, linear at infinity:
//   eta(v) = (1/2) int eta'' |v - xi| + slope v   (or |v - k| + slope v for the Kruzkov case)
struct EntropySpec {
    std::string name = "linear";
    std::function<double(double)> d2 = [](double) { return 0.0; };
    double lo = 0.0, hi = 0.0;
    double slope = 0.0;
    bool kruzkov = false;
    double k = 0.0;

    double eta(double v) const {
        if (kruzkov) return std::abs(v - k) + slope * v;
        return (hi > lo ? reconstruct_entropy(d2, lo, hi, v) : 0.0) + slope * v;
    }
    double deta(double v) const {
        if (kruzkov) return (v > k ? 1.0 : v < k ? -1.0 : 0.0) + slope;
        if (!(hi > lo)) return slope;
        const double m = std::clamp(v, lo, hi);
        return 0.5 * (detail::gl30(d2, lo, m) - detail::gl30(d2, m, hi)) + slope;
    }
    double d2eta(double v) const {
        if (kruzkov) throw DomainError("EntropySpec: Kruzkov entropy has a point-mass second derivative");
        return (v > lo && v < hi) ? d2(v) : 0.0;
    }
    bool smooth() const { return !kruzkov; }

    void validate(std::size_t n = 401) const {
        if (kruzkov || !(hi > lo)) return;
        for (std::size_t i = 0; i < n; ++i) {
            const double xi = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
            if (d2(xi) < 0.0) throw DomainError("EntropySpec '" + name + "': eta'' must be nonnegative");
        }
    }
};

inline EntropySpec linear_entropy(double slope) {
    EntropySpec e;
    e.name = "linear";
    e.slope = slope;
    return e;
}

inline EntropySpec kruzkov_entropy(double k) {
    EntropySpec e;
    e.name = "kruzkov";
    e.kruzkov = true;
    e.k = k;
    return e;
}

// eta'' = amp (1 - z^2)^8 with z = (xi - center) / width.
inline EntropySpec bump_entropy(double center, double width, double amp = 1.0, double slope = 0.0) {
    if (!(width > 0.0) || !(amp >= 0.0)) throw DomainError("bump_entropy: need width > 0, amp >= 0");
    EntropySpec e;
    e.name = "bump";
    e.d2 = [=](double xi) {
        const double z = (xi - center) / width;
        return std::abs(z) < 1.0 ? amp * std::pow(1.0 - z * z, 8) : 0.0;
    };
    e.lo = center - width;
    e.hi = center + width;
    e.slope = slope;
    return e;
}

// Flux q with q' = eta' G', G = g + eps v:  (1/2) int eta'' |G(v) - G(xi)| + slope G(v).
inline double entropy_flux(const EntropySpec& e, const NonlinearityG& g, double v, double eps = 0.0) {
    auto G = [&](double x) { return g(x) + eps * x; };
    const double Gv = G(v);
    if (e.kruzkov) return std::abs(Gv - G(e.k)) + e.slope * Gv;
    double q = e.slope * Gv;
    if (e.hi > e.lo) {
        auto f = [&](double xi) { return e.d2(xi) * std::abs(Gv - G(xi)); };
        const double m = std::clamp(v, e.lo, e.hi);
        q += 0.5 * (detail::gl30(f, e.lo, m) + detail::gl30(f, m, e.hi));
    }
    return q;
}

// ---------------------------------------------------------------------------
// Remainder on the grid: band-limited v, linear interpolation between nodes,
// periodic kernel.

namespace detail {

inline double periodic_kernel(double d, double sig, double P) {
    d = std::remainder(d, P);
    const double a = std::abs(d);
    return std::pow(a, -sig) + image_kernel(a, sig, P);
}

}  // namespace detail

// R_k(x_i) = 2 C_{1,s} int_{opposite side of k} |g(v(y)) - g(k)| K(x_i - y) dy
inline double remainder_Rk(const Field& v, const NonlinearityG& g, double k, FracOrder s, std::size_t i,
                           double sign_tol = 1e-12) {
    if (!v.is_real()) throw DomainError("remainder_Rk: needs a real field");
    const GridSpec& G = v.grid;
    if (i >= G.N) throw DomainError("remainder_Rk: node out of range");
    const rvec y = v.real_part();
    const double d = y[i] - k;
    if (std::abs(d) <= sign_tol * std::max(1.0, std::abs(k)))
        throw UndefinedSignError("remainder_Rk: v(x) equals k at node " + std::to_string(i));
    const double side = d > 0.0 ? 1.0 : -1.0;  // the set is {side * (v - k) < 0}
    const double sig = 1.0 + 2.0 * s.s, P = G.length(), xi = G.x(i), gk_ = g(k);
    double total = 0.0;
    for (std::size_t j = 0; j < G.N; ++j) {
        const double a = y[j], b = y[(j + 1) % G.N];
        const double fa = side * (a - k), fb = side * (b - k);
        if (fa >= 0.0 && fb >= 0.0) continue;
        const double x0 = G.x(j);
        double lo = 0.0, hi = 1.0;  // fraction of the cell inside the set
        if (fa < 0.0 && fb >= 0.0) hi = fa / (fa - fb);
        if (fa >= 0.0 && fb < 0.0) lo = fa / (fa - fb);
        auto f = [&](double t) {
            const double val = a + (b - a) * t;
            return std::abs(g(val) - gk_) * detail::periodic_kernel(x0 + t * G.dx - xi, sig, P);
        };
        total += detail::gk(f, lo, hi, 1e-12, 10) * G.dx;
    }
    return 2.0 * cns_constant(s) * total;
}

// ---------------------------------------------------------------------------
// Whole-line evaluation for analytic profiles.

struct LineProfile {
    std::function<double(double)> f;
    double scale = 1.0;  // analytic length scale; bounds the near-zone radius
    rvec kinks;          // points where f is not smooth
};

namespace detail {

// int_0^delta D(y) y^{-1-2s} dy for even smooth D with D(0) = 0, by an even
// polynomial through Chebyshev nodes in (y/delta)^2.
inline double near_zone(const std::function<double(double)>& D, double delta, double s, int J = 12) {
    std::vector<rvec> A(J, rvec(J));
    rvec rhs(J);
    for (int i = 0; i < J; ++i) {
        const double z = 0.5 * (1.0 + std::cos(kPi * (2.0 * i + 1.0) / (2.0 * J)));
        rhs[i] = D(delta * std::sqrt(z));
        double zp = 1.0;
        for (int j = 0; j < J; ++j) {
            zp *= z;
            A[i][j] = zp;
        }
    }
    const rvec c = small_solve(A, rhs);
    double acc = 0.0;
    for (int j = 0; j < J; ++j) acc += c[j] / (2.0 * (j + 1) - 2.0 * s);
    return acc * std::pow(delta, -2.0 * s);
}

inline double line_tail(const std::function<double(double)>& f, double lo) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, lo, std::numeric_limits<double>::infinity(), 15, 1e-13);
}

}  // namespace detail

// (-Delta)^s f(x) = C_{1,s} int_0^inf (2 f(x) - f(x+y) - f(x-y)) y^{-1-2s} dy
inline double line_frac_laplacian(const LineProfile& p, FracOrder s, double x) {
    const double fx = p.f(x);
    auto D = [&](double y) { return 2.0 * fx - p.f(x + y) - p.f(x - y); };
    rvec br;
    double dk = std::numeric_limits<double>::infinity();
    for (double c : p.kinks) {
        const double d = std::abs(c - x);
        if (d < 1e-12) throw DomainError("line_frac_laplacian: x sits on a kink");
        dk = std::min(dk, d);
        br.push_back(d);
    }
    const double delta = std::min(0.3 * dk, 0.3 * p.scale);
    const double sig = 1.0 + 2.0 * s.s;
    auto F = [&](double y) { return D(y) * std::pow(y, -sig); };
    double acc = detail::near_zone(D, delta, s.s);
    br.push_back(delta);
    br.push_back(delta + 40.0 * p.scale);
    for (double c : p.kinks) br.push_back(std::abs(c - x) + 40.0 * p.scale);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    double prev = delta;
    for (double b : br) {
        if (b <= prev) continue;
        acc += detail::gk(F, prev, b, 1e-13);
        prev = b;
    }
    acc += detail::line_tail(F, prev);
    return cns_constant(s) * acc;
}

// Sign changes of v - k on [lo, hi], refined with TOMS 748.
inline rvec level_crossings(const std::function<double(double)>& v, double k, double lo, double hi,
                            std::size_t n = 4000) {
    rvec out;
    double xa = lo, fa = v(lo) - k;
    for (std::size_t i = 1; i <= n; ++i) {
        const double xb = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
        const double fb = v(xb) - k;
        if (fa == 0.0) {
            out.push_back(xa);
        } else if (fa * fb < 0.0) {
            boost::math::tools::eps_tolerance<double> tol(52);
            std::uintmax_t it = 100;
            auto r = boost::math::tools::toms748_solve([&](double x) { return v(x) - k; }, xa, xb, fa, fb, tol, it);
            out.push_back(0.5 * (r.first + r.second));
        }
        xa = xb;
        fa = fb;
    }
    return out;
}

// R_k(x) on the line: 2 C_{1,s} int over {v on the other side of k} of |g(v(y)) - g(k)| |x-y|^{-1-2s}.
inline double line_remainder(const std::function<double(double)>& v, const NonlinearityG& g, double k, FracOrder s,
                             double x, const rvec& crossings) {
    const double d = v(x) - k;
    if (std::abs(d) < 1e-12) throw UndefinedSignError("line_remainder: v(x) equals k");
    const double sig = 1.0 + 2.0 * s.s, gk_ = g(k);
    auto F = [&](double y) {
        const double val = v(y);
        if ((val - k) * d >= 0.0) return 0.0;
        return std::abs(g(val) - gk_) * std::pow(std::abs(x - y), -sig);
    };
    rvec c = crossings;
    std::sort(c.begin(), c.end());
    if (c.empty()) return 0.0;
    double acc = 0.0;
    // intervals between consecutive crossings; the outer ones are half-lines
    auto on_set = [&](double y) { return (v(y) - k) * d < 0.0; };
    const double far = 1.0;
    if (on_set(c.front() - far))
        acc += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            F, -std::numeric_limits<double>::infinity(), c.front(), 15, 1e-13);
    for (std::size_t j = 0; j + 1 < c.size(); ++j) {
        const double a = c[j], b = c[j + 1];
        if (!on_set(0.5 * (a + b))) continue;
        if (x > a && x < b) throw DomainError("line_remainder: x inside the opposite level set");
        acc += detail::gk(F, a, b, 1e-13);
    }
    if (on_set(c.back() + far)) acc += detail::line_tail(F, c.back());
    return 2.0 * cns_constant(s) * acc;
}

struct RemainderCase {
    int id = 0;
    std::string shape;  // "tanh" or "sech2"
    double c0 = 0.0, A = 1.0, x0 = 0.0, w = 1.0;
    double k = 0.0;
    double s = 0.75;
    double gm = 0.0, gM = 1.0;
    double x = 0.0;

    double v(double y) const {
        const double z = (y - x0) / w;
        if (shape == "tanh") return c0 + A * std::tanh(z);
        const double c = 1.0 / std::cosh(z);
        return c0 + A * c * c;
    }
};

struct RemainderCheck {
    double lhs = 0.0;  // (-Delta)^s |g(v) - g(k)| + R_k
    double rhs = 0.0;  // sgn(v - k) (-Delta)^s g(v)
    double Rk = 0.0;
    double diff() const { return std::abs(lhs - rhs); }
};

inline RemainderCheck check_remainder_identity(const RemainderCase& c) {
    const NonlinearityG g = g_tanh_blend(c.gm, c.gM);
    auto v = [&](double y) { return c.v(y); };
    const rvec cr = level_crossings(v, c.k, c.x0 - 30.0 * c.w, c.x0 + 30.0 * c.w);
    const double gk_ = g(c.k);
    LineProfile absp{[&](double y) { return std::abs(g(v(y)) - gk_); }, c.w, cr};
    LineProfile gp{[&](double y) { return g(v(y)); }, c.w, {}};
    RemainderCheck r;
    r.Rk = line_remainder(v, g, c.k, c.s, c.x, cr);
    r.lhs = line_frac_laplacian(absp, c.s, c.x) + r.Rk;
    const double sg = v(c.x) > c.k ? 1.0 : -1.0;
    r.rhs = sg * line_frac_laplacian(gp, c.s, c.x);
    return r;
}

// Seeded sigmoid and bump profiles crossing k, with x kept off the level set.
inline std::vector<RemainderCase> remainder_cases(std::size_t n = 50, std::uint64_t seed = 77) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<RemainderCase> out;
    for (std::size_t i = 0; i < n; ++i) {
        RemainderCase c;
        c.id = static_cast<int>(i);
        c.shape = (i % 2 == 0) ? "tanh" : "sech2";
        c.c0 = -0.5 + U(rng);
        c.A = (0.5 + 1.5 * U(rng)) * (U(rng) < 0.5 ? -1.0 : 1.0);
        c.x0 = -2.0 + 4.0 * U(rng);
        c.w = 0.5 + 1.5 * U(rng);
        c.s = 0.3 + 0.65 * U(rng);
        c.gm = 0.5 * U(rng);
        c.gM = c.gm + 0.2 + 1.5 * U(rng);
        // k strictly inside the range of v so a level crossing exists
        const double lo = c.shape == "tanh" ? c.c0 - std::abs(c.A) : std::min(c.c0, c.c0 + c.A);
        const double hi = c.shape == "tanh" ? c.c0 + std::abs(c.A) : std::max(c.c0, c.c0 + c.A);
        c.k = lo + (hi - lo) * (0.15 + 0.7 * U(rng));
        do {
            c.x = c.x0 + c.w * (-3.0 + 6.0 * U(rng));
        } while (std::abs(c.v(c.x) - c.k) < 0.05 * (hi - lo));
        out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Entropy balance along a trajectory.

// Entropies with narrow eta'' make the pair integrand rough on the grid scale,
// so the remainder uses a looser default tolerance than the operators.
inline QuadratureSpec entropy_quadrature() {
    QuadratureSpec q;
    q.rel_tol = 1e-6;
    q.abs_tol = 1e-12;
    return q;
}

// Pointwise entropy data of one long-wave state.
struct EntropyNodes {
    rvec v, eta, deta, d2eta, q;  // q is the flux of g alone
};

inline EntropyNodes entropy_nodes(const Field& v, const EntropySpec& e, const NonlinearityG& g) {
    if (!v.is_real()) throw DomainError("entropy_nodes: needs a real field");
    EntropyNodes n;
    n.v = v.real_part();
    const std::size_t N = n.v.size();
    n.eta.resize(N);
    n.deta.resize(N);
    n.d2eta.resize(N);
    n.q.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double x = n.v[i];
        n.eta[i] = e.eta(x);
        n.deta[i] = e.deta(x);
        n.d2eta[i] = e.kruzkov ? 0.0 : e.d2eta(x);
        n.q[i] = entropy_flux(e, g, x, 0.0);
    }
    return n;
}

// Remainder of the regularized entropy identity at every node:
//   eta'(v) D G(v) - D Q(v),  D = (-Delta)^{s/2}, G = g + eps v, Q = q + eps eta its flux,
// assembled as a pair quadrature of eta'(a)(G(a)-G(b)) - (Q(a)-Q(b)) >= 0.
inline PairSum entropy_remainder(const GridSpec& grid, const EntropyNodes& n, const NonlinearityG& g, double eps,
                                 FracOrder s, const QuadratureSpec& q = entropy_quadrature()) {
    const std::size_t N = grid.N, mask = N - 1;
    rvec Gv(N), Qv(N);
    for (std::size_t i = 0; i < N; ++i) {
        Gv[i] = g(n.v[i]) + eps * n.v[i];
        Qv[i] = n.q[i] + eps * n.eta[i];
    }
    auto phi = [&](std::size_t a, std::size_t b) { return n.deta[a] * (Gv[a] - Gv[b]) - (Qv[a] - Qv[b]); };
    auto E = [&](std::size_t i, std::size_t m) { return cplx(phi(i, (i + m) & mask) + phi(i, (i - m) & mask), 0.0); };
    PairSum ps = pair_quadrature(grid, 0.5 * s.s, E, q);
    const double C = cns_constant(0.5 * s.s);
    for (auto& z : ps.values) z *= C;
    ps.error *= C;
    return ps;
}

inline PairSum entropy_remainder(const Field& v, const EntropySpec& e, const NonlinearityG& g, double eps,
                                 FracOrder s, const QuadratureSpec& q = entropy_quadrature()) {
    if (e.kruzkov) throw DomainError("entropy_remainder: pass a smooth entropy");
    return entropy_remainder(v.grid, entropy_nodes(v, e, g), g, eps, s, q);
}

// Space-time pairing of
//   d_t eta(v) + D q(v) - beta eta'(v) D|u|^2 - eps^b (eta(v))_xx + eps D eta(v) + eps^b |v_x|^2 eta''(v) + R
// against psi, with every derivative moved onto psi except inside R.
inline double entropy_balance_residual(const Trajectory& tr, const EntropySpec& e, const TestFunction& psi,
                                       const QuadratureSpec& q = entropy_quadrature()) {
    const GridSpec& G = tr.grid;
    const SystemParams& p = tr.params;
    if (psi.complex_valued) throw DomainError("entropy_balance_residual: test function must be real");
    if (e.kruzkov) throw DomainError("entropy_balance_residual: pass a smooth entropy");
    if (tr.size() < 2) throw DomainError("entropy_balance_residual: trajectory too short");
    e.validate();
    if (psi.check_support(G, tr.t.back())) return 0.0;
    const double eps = tr.run.eps, eb = std::pow(eps, tr.run.b);

    const Field Y = psi.space(G);
    const rvec y = Y.real_part(), DY = frac_power(Y, p.s).real_part(), Yxx = laplacian(Y).real_part();
    const rvec w = detail::simpson_weights(tr.size(), tr.sample_dt());

    double total = 0.0;
    {
        double acc = 0.0;
        for (std::size_t i = 0; i < G.N; ++i) acc += e.eta(tr.v.front().samples[i].real()) * y[i];
        total -= acc * G.dx * psi.time_profile(tr.t.front());
    }
    for (std::size_t n = 0; n < tr.size(); ++n) {
        const double th = psi.time_profile(tr.t[n]), dth = psi.time_derivative(tr.t[n]);
        if (th == 0.0 && dth == 0.0) continue;
        const Field& v = tr.v[n];
        const EntropyNodes nd = entropy_nodes(v, e, p.g);
        double acc = 0.0;
        for (std::size_t i = 0; i < G.N; ++i) acc -= dth * nd.eta[i] * y[i];
        if (th != 0.0) {
            const rvec vx = derivative(v).real_part();
            const rvec Dm = frac_power(modulus_sq(tr.u[n]), p.s).real_part();
            const PairSum R = entropy_remainder(G, nd, p.g, eps, p.s, q);
            double b = 0.0;
            for (std::size_t i = 0; i < G.N; ++i) {
                b += nd.q[i] * DY[i] - p.beta * nd.deta[i] * Dm[i] * y[i] - eb * nd.eta[i] * Yxx[i] +
                     eps * nd.eta[i] * DY[i] + eb * vx[i] * vx[i] * nd.d2eta[i] * y[i] + R.values[i].real() * y[i];
            }
            acc += th * b;
        }
        total += w[n] * acc * G.dx;
    }
    return total;
}

}  // namespace fbenney
