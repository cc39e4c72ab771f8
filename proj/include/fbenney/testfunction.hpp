#pragma once

#include <random>

#include "solver.hpp"

namespace fbenney {

// Separable space-time test function  B((t-tc)/tw) B((x-xc)/xw) e^{i kappa x},
// B(r) = (1 - r^2)^p on |r| < 1.
struct TestFunction {
    int id = 0;
    double tc = 0.0, tw = 1.0;
    double xc = 0.0, xw = 1.0;
    int p = 8;
    double kappa = 0.0;
    bool complex_valued = false;

    static double bump(double r, int p) {
        if (std::abs(r) >= 1.0) return 0.0;
        return std::pow(1.0 - r * r, p);
    }
    static double bump_d1(double r, int p) {
        if (std::abs(r) >= 1.0) return 0.0;
        return -2.0 * p * r * std::pow(1.0 - r * r, p - 1);
    }

    double ta() const { return tc - tw; }
    double tb() const { return tc + tw; }
    double time_profile(double t) const { return bump((t - tc) / tw, p); }
    double time_derivative(double t) const { return bump_d1((t - tc) / tw, p) / tw; }

    Field space(const GridSpec& g) const {
        cvec s(g.N);
        for (std::size_t i = 0; i < g.N; ++i) {
            const double x = g.x(i);
            s[i] = bump((x - xc) / xw, p) * (kappa != 0.0 ? std::polar(1.0, kappa * x) : cplx(1.0, 0.0));
        }
        return Field(g, std::move(s), complex_valued ? Flavor::complex_shortwave : Flavor::real_longwave);
    }

    // True when the pairing is empty; throws when the support straddles T or
    // leaves the spatial window.
    bool check_support(const GridSpec& g, double T) const {
        if (p < 2) throw DomainError("TestFunction: profile exponent must be >= 2");
        if (!(tw > 0.0) || !(xw > 0.0)) throw DomainError("TestFunction: widths must be positive");
        if (!complex_valued && kappa != 0.0) throw DomainError("TestFunction: real test functions carry no phase");
        if (xc - xw <= -g.L || xc + xw >= g.L)
            throw SupportLeakageError("test function " + std::to_string(id) + " leaves the spatial window");
        if (ta() >= T || tb() <= 0.0) return true;
        if (tb() >= T)
            throw SupportLeakageError("test function " + std::to_string(id) + " support crosses the final time");
        return false;
    }

    // Largest coefficient beyond |j| = N/3 relative to the largest one.
    double spectral_tail(const GridSpec& g) const {
        const cvec c = forward(space(g).samples);
        double top = 0.0, tail = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            top = std::max(top, std::abs(c[j]));
            if (std::abs(static_cast<double>(g.mode(j))) >= static_cast<double>(g.N) / 3.0)
                tail = std::max(tail, std::abs(c[j]));
        }
        return top > 0.0 ? tail / top : 0.0;
    }
};

// Sixteen fixed test functions, half complex with a phase, some reaching back
// past t = 0 so the initial-data term is exercised.
inline std::vector<TestFunction> default_test_library(double T, double L, std::uint64_t seed = 20240611) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<TestFunction> out;
    for (int i = 0; i < 16; ++i) {
        TestFunction f;
        f.id = i;
        f.complex_valued = (i % 2 == 0);
        const double tb = T * (0.5 + 0.45 * U(rng));
        f.tw = T * (0.25 + 0.35 * U(rng));
        f.tc = tb - f.tw;
        f.xw = std::min(2.0 + 4.0 * U(rng), 0.4 * L);
        const double room = L - f.xw - 1.0;
        f.xc = std::clamp(-0.5 * L + L * U(rng), -room, room);
        f.kappa = f.complex_valued ? -2.0 + 4.0 * U(rng) : 0.0;
        out.push_back(f);
    }
    return out;
}

namespace detail {

// Composite Simpson weights on n uniform samples (3/8 rule on the last three
// intervals when the interval count is odd).
inline rvec simpson_weights(std::size_t n, double h) {
    if (n < 2) throw DomainError("simpson_weights: need at least two samples");
    rvec w(n, 0.0);
    if (n == 2) {
        w[0] = w[1] = 0.5 * h;
        return w;
    }
    const std::size_t m = n - 1;
    std::size_t simpson_end = m;
    if (m % 2 == 1) {
        if (m < 3) {
            w[0] = w[1] = 0.5 * h;
            return w;
        }
        simpson_end = m - 3;
        const double c = 3.0 * h / 8.0;
        w[simpson_end] += c;
        w[simpson_end + 1] += 3.0 * c;
        w[simpson_end + 2] += 3.0 * c;
        w[simpson_end + 3] += c;
    }
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    return w;
}

}  // namespace detail

}  // namespace fbenney
