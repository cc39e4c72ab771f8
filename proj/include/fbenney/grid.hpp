#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace fbenney {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Periodic grid on [-L, L) with N points.
struct GridSpec {
    double L = 0.0;
    std::size_t N = 0;
    double dx = 0.0;

    // Integer mode index in FFTW storage order: 0..N/2-1, then -N/2..-1.
    long mode(std::size_t j) const {
        return j < N / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(N);
    }
    double k(std::size_t j) const { return kPi * static_cast<double>(mode(j)) / L; }
    bool is_nyquist(std::size_t j) const { return j == N / 2; }
    double x(std::size_t i) const { return -L + dx * static_cast<double>(i); }
    double length() const { return 2.0 * L; }
    double k_max() const { return kPi * static_cast<double>(N / 2) / L; }

    rvec wavenumbers() const {
        rvec out(N);
        for (std::size_t j = 0; j < N; ++j) out[j] = k(j);
        return out;
    }
    rvec nodes() const {
        rvec out(N);
        for (std::size_t i = 0; i < N; ++i) out[i] = x(i);
        return out;
    }

    bool operator==(const GridSpec& o) const { return L == o.L && N == o.N; }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

inline GridSpec make_grid(double L, std::size_t N) {
    if (!(L > 0.0) || !std::isfinite(L))
        throw DomainError("make_grid: half_length must be positive, got " + std::to_string(L));
    if (!is_power_of_two(N) || N < 8)
        throw DomainError("make_grid: n_points must be a power of two >= 8, got " + std::to_string(N));
    GridSpec g;
    g.L = L;
    g.N = N;
    g.dx = 2.0 * L / static_cast<double>(N);
    return g;
}

struct FracOrder {
    double s;
    FracOrder(double s_) : s(s_) {  // NOLINT(google-explicit-constructor)
        if (!(s > 0.0 && s < 1.0))
            throw DomainError("fractional order must lie in (0,1), got " + std::to_string(s));
    }
    static FracOrder coupled(double s) {
        if (!(s > 0.5 && s < 1.0))
            throw DomainError("coupled system needs s in (1/2,1), got " + std::to_string(s));
        return FracOrder(s);
    }
    operator double() const { return s; }  // NOLINT(google-explicit-constructor)
};

enum class Flavor { complex_shortwave, real_longwave };

inline constexpr double kRealTol = 1e-9;

// Grid samples of u or v. Real-flavored fields keep a zero imaginary part.
struct Field {
    GridSpec grid;
    cvec samples;
    Flavor flavor = Flavor::complex_shortwave;

    Field() = default;
    Field(const GridSpec& g, Flavor f) : grid(g), samples(g.N, cplx(0.0, 0.0)), flavor(f) {}
    Field(const GridSpec& g, cvec s, Flavor f) : grid(g), samples(std::move(s)), flavor(f) {
        if (samples.size() != g.N) throw DomainError("Field: sample count does not match grid");
        if (flavor == Flavor::real_longwave) realize();
    }

    bool is_real() const { return flavor == Flavor::real_longwave; }
    std::size_t size() const { return samples.size(); }
    cplx operator[](std::size_t i) const { return samples[i]; }

    rvec real_part() const {
        rvec out(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) out[i] = samples[i].real();
        return out;
    }

    // Drops imaginary roundoff; throws if it is not roundoff.
    void realize() {
        double scale = 0.0, worst = 0.0;
        for (const auto& z : samples) {
            scale = std::max(scale, std::abs(z.real()));
            worst = std::max(worst, std::abs(z.imag()));
        }
        if (worst > kRealTol * std::max(1.0, scale))
            throw DomainError("real field acquired imaginary part " + std::to_string(worst));
        for (auto& z : samples) z = cplx(z.real(), 0.0);
    }
};

template <class F>
Field sample(const GridSpec& g, F&& f, Flavor flavor = Flavor::complex_shortwave) {
    cvec s(g.N);
    for (std::size_t i = 0; i < g.N; ++i) s[i] = cplx(f(g.x(i)));
    return Field(g, std::move(s), flavor);
}

template <class F>
Field sample_real(const GridSpec& g, F&& f) {
    return sample(g, std::forward<F>(f), Flavor::real_longwave);
}

inline Field real_field(const GridSpec& g, const rvec& values) {
    cvec s(values.begin(), values.end());
    return Field(g, std::move(s), Flavor::real_longwave);
}

inline void require_same_grid(const Field& a, const Field& b, const char* who) {
    if (a.grid != b.grid) throw DomainError(std::string(who) + ": fields live on different grids");
}

}  // namespace fbenney
