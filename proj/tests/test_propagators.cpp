#include <gtest/gtest.h>

#include <random>

#include "fbenney/ensemble.hpp"
#include "fbenney/propagators.hpp"

using namespace fbenney;

namespace {
const PropagatorSpec kSpec{0.1, 4, 7, 0.75};
}

// U(t) e^{ikx} = exp(-i (|k|^{2s} + eps^a k^2) t) e^{ikx}
TEST(Propagators, PlaneWaveExact) {
    const GridSpec g = make_grid(kPi, 64);
    for (int m : {1, 4, -9}) {
        const Field u = sample(g, [m](double x) { return std::polar(1.0, m * x); });
        const double w = std::pow(std::abs(m), 1.5) + 1e-4 * m * m;
        const double t = 0.37;
        const Field out = schrodinger_group_apply(u, t, kSpec);
        for (std::size_t i = 0; i < g.N; ++i)
            EXPECT_NEAR(std::abs(out[i] - std::polar(1.0, -w * t) * u[i]), 0.0, 1e-13);
    }
}

// W(t) cos(kx) = exp(-eps^b k^2 t) cos(kx)
TEST(Propagators, HeatExact) {
    const GridSpec g = make_grid(kPi, 64);
    const Field v = sample_real(g, [](double x) { return std::cos(5 * x); });
    const double t = 3e5;
    const Field out = heat_semigroup_apply(v, t, kSpec);
    const double decay = std::exp(-1e-7 * 25.0 * t);
    for (std::size_t i = 0; i < g.N; ++i) EXPECT_NEAR(out[i].real(), decay * v[i].real(), 1e-13);
}

TEST(Propagators, IsometryAndGroupLaw) {
    const GridSpec g = make_grid(20.0, 256);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
        const Field u = random_bandlimited(g, rng, Flavor::complex_shortwave);
        const double a = -1.3 + 0.2 * i, b = 0.7 - 0.05 * i;
        EXPECT_NEAR(l2_norm(schrodinger_group_apply(u, a, kSpec)) / l2_norm(u), 1.0, 1e-13);
        const Field ab = schrodinger_group_apply(schrodinger_group_apply(u, a, kSpec), b, kSpec);
        EXPECT_LT(max_abs_diff(ab, schrodinger_group_apply(u, a + b, kSpec)), 1e-12 * sup_norm(u, 1));
        const Field back = schrodinger_group_apply(schrodinger_group_apply(u, a, kSpec), -a, kSpec);
        EXPECT_LT(max_abs_diff(back, u), 1e-12 * sup_norm(u, 1));
    }
}

TEST(Propagators, HeatContractionAndSmoothing) {
    const GridSpec g = make_grid(20.0, 256);
    std::mt19937_64 rng(19);
    for (int i = 0; i < 10; ++i) {
        const Field v = random_bandlimited(g, rng, Flavor::real_longwave);
        for (double t = 1e-6; t < 1e3; t *= 10.0) {
            EXPECT_LE(l2_norm(heat_semigroup_apply(v, t, kSpec)), l2_norm(v) * (1.0 + 1e-14));
            EXPECT_TRUE(check_heat_smoothing(v, t, kSpec).pass());
        }
    }
}

// The smoothing constant is attained in the limit by the mode with k^2 = 1/(2 eps^b t).
TEST(Propagators, SmoothingConstantNearlySharp) {
    const GridSpec g = make_grid(kPi, 64);
    const double k = 10.0, eb = kSpec.eps_b(), t = 1.0 / (2.0 * eb * k * k);
    const Field v = sample_real(g, [k](double x) { return std::cos(k * x); });
    const InequalityReport r = check_heat_smoothing(v, t, kSpec);
    // sup_k k e^{-eb k^2 t} = (2 e eb t)^{-1/2}; ratio to the constant is sqrt(pi/(2e))
    EXPECT_NEAR(r.lhs / r.rhs, std::sqrt(kPi / (2.0 * std::exp(1.0))), 1e-12);
}

TEST(Propagators, Preconditions) {
    const GridSpec g = make_grid(kPi, 16);
    const Field v = sample_real(g, [](double x) { return std::cos(x); });
    EXPECT_THROW((void)heat_semigroup_apply(v, -1.0, kSpec), DomainError);
    EXPECT_THROW((void)check_heat_smoothing(v, 0.0, kSpec), DomainError);
    PropagatorSpec bad = kSpec;
    bad.eps = 1.5;
    EXPECT_THROW(bad.validate(), DomainError);
    EXPECT_NEAR(heat_smoothing_constant(kSpec), 1.0 / std::sqrt(kPi * 1e-7), 1e-6);
}

TEST(Propagators, HsInnerMatchesNorm) {
    const GridSpec g = make_grid(20.0, 128);
    std::mt19937_64 rng(23);
    const Field u = random_bandlimited(g, rng, Flavor::complex_shortwave);
    const double n = hs_norm(u, 0.75).hs_fourier;
    EXPECT_NEAR(hs_inner(u, u, 0.75).real(), n * n, 1e-10 * n * n);
    // U(t) is also an isometry of H^s
    const Field w = schrodinger_group_apply(u, 0.8, kSpec);
    EXPECT_NEAR(hs_inner(w, w, 0.75).real(), n * n, 1e-10 * n * n);
}
