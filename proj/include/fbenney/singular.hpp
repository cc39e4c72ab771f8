#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "special.hpp"
#include "spectral.hpp"

namespace fbenney {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-13;
    int order = 8;       // starting interpolation order (points per far cell)
    int max_order = 16;  // refinement gives up above this
};

// Translation-invariant weights for
//   int_0^L D(y) K_P(y) dy  ~  dx^{-2s} * sum_{m=1}^{N/2} w_m D(m dx)
// where D is even, D(0) = 0, and K_P is the periodized kernel |y|^{-1-2s}.
struct SingularWeights {
    std::size_t N = 0;
    double s = 0.0;
    int order = 0;
    rvec w;  // index m = 0..N/2, w[0] unused
};

namespace detail {

using Gauss20 = boost::math::quadrature::gauss<double, 20>;

inline double image_kernel(double t, double sig, double period) {
    return std::pow(period, -sig) *
           (hurwitz_zeta(sig, 1.0 + t / period) + hurwitz_zeta(sig, 1.0 - t / period));
}

// Solves A x = b in place for a small dense system (partial pivoting).
inline rvec small_solve(std::vector<rvec> A, rvec b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = A[r][c] / A[c][c];
            for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    rvec x(n);
    for (std::size_t r = n; r-- > 0;) {
        double acc = b[r];
        for (std::size_t k = r + 1; k < n; ++k) acc -= A[r][k] * x[k];
        x[r] = acc / A[r][r];
    }
    return x;
}

inline SingularWeights build_weights(std::size_t N, double s, int p) {
    const double sig = 1.0 + 2.0 * s;
    const double P = static_cast<double>(N);
    const long half = static_cast<long>(N / 2);
    SingularWeights W;
    W.N = N;
    W.s = s;
    W.order = p;
    W.w.assign(N / 2 + 1, 0.0);
    const auto& xg = Gauss20::abscissa();
    const auto& wg = Gauss20::weights();
    // 20-point rule on [a, a+1] from the half-rule tables.
    std::vector<std::pair<double, double>> unit;
    for (std::size_t q = 0; q < xg.size(); ++q) {
        unit.emplace_back(0.5 + 0.5 * xg[q], 0.5 * wg[q]);
        if (xg[q] != 0.0) unit.emplace_back(0.5 - 0.5 * xg[q], 0.5 * wg[q]);
    }
    auto fold = [&](long n) -> long {
        n = std::abs(n);
        n %= static_cast<long>(N);
        return n > half ? static_cast<long>(N) - n : n;
    };

    // Near cell [0,1]: even polynomial sum_j c_j t^{2j} through t = 1..J.
    const int J = p / 2;
    rvec mu(J);
    for (int j = 1; j <= J; ++j) {
        double img = 0.0;
        for (auto [t, wt] : unit) img += wt * std::pow(t, 2 * j) * image_kernel(t, sig, P);
        mu[j - 1] = 1.0 / (2.0 * j + 1.0 - sig) + img;
    }
    std::vector<rvec> VT(J, rvec(J));
    for (int j = 1; j <= J; ++j)
        for (int m = 1; m <= J; ++m) VT[j - 1][m - 1] = std::pow(static_cast<double>(m), 2 * j);
    rvec wn = small_solve(VT, mu);
    for (int m = 1; m <= J; ++m) W.w[fold(m)] += wn[m - 1];

    // Far cells [m, m+1]: centered p-point Lagrange interpolation.
    rvec nodes(p), lag(p);
    for (long m = 1; m < half; ++m) {
        for (int q = 0; q < p; ++q) nodes[q] = static_cast<double>(m - p / 2 + 1 + q);
        std::fill(lag.begin(), lag.end(), 0.0);
        for (auto [t0, wt] : unit) {
            const double t = static_cast<double>(m) + t0;
            const double k = std::pow(t, -sig) + image_kernel(t, sig, P);
            for (int q = 0; q < p; ++q) {
                double l = 1.0;
                for (int r = 0; r < p; ++r)
                    if (r != q) l *= (t - nodes[r]) / (nodes[q] - nodes[r]);
                lag[q] += wt * l * k;
            }
        }
        for (int q = 0; q < p; ++q) {
            const long n = fold(static_cast<long>(nodes[q]));
            if (n != 0) W.w[n] += lag[q];
        }
    }
    return W;
}

}  // namespace detail

inline std::shared_ptr<const SingularWeights> singular_weights(std::size_t N, double s, int p) {
    static std::mutex mu;
    static std::map<std::tuple<std::size_t, double, int>, std::shared_ptr<const SingularWeights>> cache;
    const auto key = std::make_tuple(N, s, p);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto w = std::make_shared<const SingularWeights>(detail::build_weights(N, s, p));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, w);
    return w;
}

struct PairSum {
    cvec values;        // per node, already scaled by dx^{-2s}
    double error = 0.0;  // max difference between the last two orders
    int order = 0;
};

// Adaptive evaluation of  sum_m w_m E(i, m)  for an even pair integrand E
// with E(i, 0) = 0. Order is raised by two until successive results agree.
template <class E>
PairSum pair_quadrature(const GridSpec& g, double s, E&& e, const QuadratureSpec& q = {}) {
    const std::size_t N = g.N, half = N / 2;
    const double scale = std::pow(g.dx, -2.0 * s);
    auto run = [&](int p) {
        auto W = singular_weights(N, s, p);
        cvec out(N);
        for (std::size_t i = 0; i < N; ++i) {
            cplx acc = 0.0;
            for (std::size_t m = 1; m <= half; ++m) acc += W->w[m] * e(i, m);
            out[i] = acc * scale;
        }
        return out;
    };
    int p = q.order;
    cvec prev = run(p);
    for (;;) {
        if (p + 2 > q.max_order)
            throw QuadratureError("singular quadrature did not reach tolerance by order " +
                                  std::to_string(q.max_order));
        cvec next = run(p + 2);
        double err = 0.0, mag = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            err = std::max(err, std::abs(next[i] - prev[i]));
            mag = std::max(mag, std::abs(next[i]));
        }
        p += 2;
        if (err <= q.rel_tol * mag + q.abs_tol) return PairSum{std::move(next), err, p};
        prev = std::move(next);
    }
}

struct SingularResult {
    Field value;
    double quad_error = 0.0;         // estimated quadrature error, absolute, max over nodes
    double window_truncation = 0.0;  // max |whole-line - periodic| for the zero-extended data
    int order = 0;
};

// (f(x) - f(x+y)) paired over +-y against the torus kernel; the window
// truncation estimate compares to the zero extension of f on the line.
inline SingularResult frac_laplacian_singular(const Field& f, FracOrder order, const QuadratureSpec& q = {}) {
    const double s = order.s;
    const GridSpec& g = f.grid;
    const std::size_t N = g.N, mask = N - 1;
    const auto& v = f.samples;
    auto D = [&](std::size_t i, std::size_t m) { return 2.0 * v[i] - v[(i + m) & mask] - v[(i - m) & mask]; };
    PairSum ps = pair_quadrature(g, s, D, q);
    const double C = cns_constant(s);
    for (auto& z : ps.values) z *= C;

    // Whole line minus torus: C * int f(z) sum_{n != 0} |x - z + nP|^{-sig} dz.
    const double sig = 1.0 + 2.0 * s, P = g.length();
    rvec img(N);
    for (std::size_t d = 0; d < N; ++d) img[d] = detail::image_kernel(static_cast<double>(d) * g.dx, sig, P);
    double trunc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < N; ++j) acc += v[j] * img[i > j ? i - j : j - i];
        trunc = std::max(trunc, std::abs(acc) * g.dx * C);
    }

    SingularResult r{Field(g, std::move(ps.values), f.flavor), C * ps.error, trunc, ps.order};
    return r;
}

}  // namespace fbenney
