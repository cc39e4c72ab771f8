#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "spectral.hpp"

namespace fbenney {

// Random band-limited field: amplitudes |k|^{-1} * N(0,1), uniform phases,
// modes 0 < |j| < N/4. Real flavor enforces Hermitian symmetry.
inline Field random_bandlimited(const GridSpec& g, std::mt19937_64& rng, Flavor flavor) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    const long band = static_cast<long>(g.N / 4);
    cvec c(g.N, cplx(0.0, 0.0));
    auto idx = [&](long j) { return static_cast<std::size_t>(j >= 0 ? j : j + static_cast<long>(g.N)); };
    for (long j = 1; j < band; ++j) {
        const double k = kPi * static_cast<double>(j) / g.L;
        const double a = normal(rng) / k;
        const cplx z = std::polar(a, phase(rng));
        c[idx(j)] = z;
        if (flavor == Flavor::real_longwave) {
            c[idx(-j)] = std::conj(z);
        } else {
            const double b = normal(rng) / k;
            c[idx(-j)] = std::polar(b, phase(rng));
        }
    }
    return from_spectrum(g, c, flavor);
}

struct NamedFunction {
    std::string name;
    std::function<double(double)> f;
};

// Smooth functions decaying well inside a window of half-width >= 20.
inline std::vector<NamedFunction> decaying_family() {
    std::vector<NamedFunction> out;
    for (double w : {0.7, 1.0, 1.5, 2.0})
        for (double x0 : {0.0, 1.5})
            out.push_back({"gauss(w=" + std::to_string(w) + ",x0=" + std::to_string(x0) + ")",
                           [w, x0](double x) { return std::exp(-(x - x0) * (x - x0) / (w * w)); }});
    for (double kap : {1.0, 2.0, 3.0})
        out.push_back({"modulated_gauss(k=" + std::to_string(kap) + ")",
                       [kap](double x) { return std::cos(kap * x) * std::exp(-x * x / 2.0); }});
    for (double w : {1.0, 1.5})
        out.push_back({"sech2(w=" + std::to_string(w) + ")", [w](double x) {
                           const double c = std::cosh(x / w);
                           return 1.0 / (c * c);
                       }});
    out.push_back({"x_gauss", [](double x) { return x * std::exp(-x * x); }});
    out.push_back({"x2_gauss", [](double x) { return x * x * std::exp(-x * x / 2.0); }});
    out.push_back({"two_bumps", [](double x) {
                       return std::exp(-(x - 2) * (x - 2)) - 0.5 * std::exp(-(x + 2) * (x + 2) / 2.0);
                   }});
    out.push_back({"gauss_quartic", [](double x) { return std::exp(-x * x * x * x / 4.0); }});
    out.push_back({"hermite3", [](double x) { return (x * x * x - 1.5 * x) * std::exp(-x * x / 2.0); }});
    out.push_back({"sech_cos", [](double x) { return std::cos(1.5 * x) / std::cosh(x); }});
    out.push_back({"asym", [](double x) { return std::exp(-x * x / 2.0) * (1.0 + 0.5 * std::tanh(x)); }});
    return out;
}

}  // namespace fbenney
