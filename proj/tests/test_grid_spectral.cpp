#include <gtest/gtest.h>

#include <random>

#include "fbenney/ensemble.hpp"
#include "fbenney/spectral.hpp"

using namespace fbenney;

TEST(Grid, RejectsNonPowerOfTwo) {
    try {
        (void)make_grid(20.0, 100);
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("power of two"), std::string::npos);
    }
    EXPECT_THROW((void)make_grid(-1.0, 64), DomainError);
    EXPECT_THROW((void)make_grid(20.0, 4), DomainError);
}

TEST(Grid, NodesAndWavenumbers) {
    const GridSpec g = make_grid(10.0, 16);
    EXPECT_DOUBLE_EQ(g.dx, 1.25);
    EXPECT_DOUBLE_EQ(g.x(0), -10.0);
    EXPECT_EQ(g.mode(15), -1);
    EXPECT_EQ(g.mode(8), -8);
    EXPECT_DOUBLE_EQ(g.k(3), 3.0 * kPi / 10.0);
    EXPECT_TRUE(g.is_nyquist(8));
}

TEST(Grid, FracOrderRange) {
    EXPECT_THROW(FracOrder(0.0), DomainError);
    EXPECT_THROW(FracOrder(1.0), DomainError);
    EXPECT_THROW(FracOrder::coupled(0.5), DomainError);
    EXPECT_NO_THROW(FracOrder::coupled(0.75));
}

TEST(Grid, RealFieldRejectsImaginaryPart) {
    const GridSpec g = make_grid(5.0, 32);
    cvec s(g.N, cplx(1.0, 0.1));
    EXPECT_THROW(Field(g, s, Flavor::real_longwave), DomainError);
}

TEST(Spectral, FftRoundTrip) {
    const GridSpec g = make_grid(20.0, 128);
    std::mt19937_64 rng(3);
    const Field f = random_bandlimited(g, rng, Flavor::complex_shortwave);
    const cvec back = backward(forward(f.samples));
    for (std::size_t i = 0; i < g.N; ++i) EXPECT_NEAR(std::abs(back[i] - f.samples[i]), 0.0, 1e-13);
}

// cos(kx) is an eigenfunction with eigenvalue |k|^{2s}.
TEST(Spectral, FracLaplacianOfCosine) {
    const GridSpec g = make_grid(kPi, 64);
    for (double s : {0.3, 0.5, 0.75, 0.95})
        for (int m : {1, 3, 7}) {
            const Field f = sample_real(g, [m](double x) { return std::cos(m * x); });
            const Field d = frac_laplacian_spectral(f, s);
            const double lam = std::pow(static_cast<double>(m), 2.0 * s);
            for (std::size_t i = 0; i < g.N; ++i) EXPECT_NEAR(d[i].real(), lam * f[i].real(), 1e-12);
        }
}

TEST(Spectral, DerivativeAndLaplacian) {
    const GridSpec g = make_grid(kPi, 64);
    const Field f = sample_real(g, [](double x) { return std::sin(2 * x); });
    const Field d = derivative(f), l = laplacian(f);
    for (std::size_t i = 0; i < g.N; ++i) {
        EXPECT_NEAR(d[i].real(), 2.0 * std::cos(2 * g.x(i)), 1e-12);
        EXPECT_NEAR(l[i].real(), -4.0 * std::sin(2 * g.x(i)), 1e-12);
    }
}

TEST(Spectral, PowersCompose) {
    const GridSpec g = make_grid(20.0, 256);
    std::mt19937_64 rng(11);
    const Field f = random_bandlimited(g, rng, Flavor::real_longwave);
    const Field a = frac_power(frac_power(f, 0.3), 0.45);
    const Field b = frac_power(f, 0.75);
    EXPECT_LT(max_abs_diff(a, b), 1e-10 * sup_norm(b, 1));
}

// Moving the operator across the pairing.
TEST(Spectral, SelfAdjointTransfer) {
    const GridSpec g = make_grid(20.0, 256);
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const Field f = random_bandlimited(g, rng, Flavor::real_longwave);
        const Field psi = random_bandlimited(g, rng, Flavor::real_longwave);
        for (double p : {0.375, 0.75}) {
            const cplx lhs = inner(frac_power(f, p), psi);
            const cplx rhs = inner(f, frac_power(psi, p));
            EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-11 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST(Spectral, ParsevalConstant) {
    const GridSpec g = make_grid(7.0, 64);
    const Field f = sample_real(g, [](double) { return 3.0; });
    EXPECT_NEAR(l2_sq(f), 9.0 * 14.0, 1e-11);
    EXPECT_NEAR(mean(f), 3.0, 1e-14);
}

TEST(Spectral, DealiasMaskCount) {
    const GridSpec g = make_grid(1.0, 128);
    const rvec m = dealias_mask(g);
    double kept = 0.0;
    for (double x : m) kept += x;
    // |j| < 128/3 -> j in [-42, 42]
    EXPECT_DOUBLE_EQ(kept, 85.0);
}

TEST(Spectral, SupNormUsesRefinement) {
    const GridSpec g = make_grid(kPi, 16);
    // maximum of cos(x + 0.1) falls between nodes
    const Field f = sample_real(g, [](double x) { return std::cos(x + 0.1); });
    EXPECT_NEAR(sup_norm(f, 8), 1.0, 1e-3);
    EXPECT_LE(sup_norm(f, 1), 1.0);
}

TEST(Spectral, RieszInverseZeroMode) {
    const GridSpec g = make_grid(kPi, 64);
    const Field c = sample_real(g, [](double x) { return 1.0 + std::cos(x); });
    EXPECT_THROW((void)riesz_inverse(c, 0.5), ZeroModeError);
    const Field f = sample_real(g, [](double x) { return std::cos(2 * x); });
    const Field r = riesz_inverse(f, 0.5);
    for (std::size_t i = 0; i < g.N; ++i) EXPECT_NEAR(r[i].real(), 0.5 * f[i].real(), 1e-13);
}

TEST(Spectral, ProjectBandIsIdempotent) {
    const GridSpec g = make_grid(20.0, 128);
    const Field f = sample_real(g, [](double x) { return std::exp(-x * x * 4.0); });
    const Field p = project_band(f);
    EXPECT_LT(max_abs_diff(p, project_band(p)), 1e-14);
}
