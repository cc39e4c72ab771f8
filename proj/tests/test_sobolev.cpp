#include <gtest/gtest.h>

#include <random>

#include "fbenney/diagnostics.hpp"
#include "fbenney/ensemble.hpp"

using namespace fbenney;

TEST(Sobolev, HsNormOfPlaneWave) {
    const GridSpec g = make_grid(kPi, 64);
    const Field f = sample(g, [](double x) { return std::polar(2.0, 3.0 * x); });
    for (double s : {0.25, 0.6}) {
        const NormReport r = hs_norm(f, s);
        const double l2 = std::sqrt(4.0 * 2.0 * kPi);
        EXPECT_NEAR(r.l2, l2, 1e-12);
        EXPECT_NEAR(r.hs_fourier, std::pow(10.0, s / 2.0) * l2, 1e-11);
        EXPECT_NEAR(r.frac_grad_l2, std::pow(3.0, s) * l2, 1e-11);
    }
}

TEST(Sobolev, HsNormTendsToL2AsOrderVanishes) {
    const GridSpec g = make_grid(20.0, 256);
    std::mt19937_64 rng(2);
    const Field f = random_bandlimited(g, rng, Flavor::complex_shortwave);
    double prev = 1e300;
    for (double s : {0.5, 0.1, 1e-2, 1e-4, 1e-8}) {
        const NormReport r = hs_norm(f, s);
        const double gap = r.hs_fourier / r.l2 - 1.0;
        EXPECT_LT(gap, prev);
        prev = gap;
    }
    EXPECT_LT(prev, 1e-6);
}

// |cos(kx)|_{Gagliardo}^2 = 2/C_{1,s} * |k|^{2s} |cos|_2^2 exactly on the torus.
TEST(Sobolev, GagliardoOnCosine) {
    const GridSpec g = make_grid(kPi, 128);
    const Field f = sample_real(g, [](double x) { return std::cos(2 * x); });
    for (double s : {0.3, 0.7}) {
        const GagliardoResult q = gagliardo_seminorm_sq(f, s);
        const double expect = 2.0 / cns_constant(s) * std::pow(2.0, 2.0 * s) * kPi;
        EXPECT_NEAR(q.value / expect, 1.0, 1e-7);
    }
}

TEST(Sobolev, EquivalenceConstantsBracketRatio) {
    const GridSpec g = make_grid(20.0, 128);
    std::mt19937_64 rng(8);
    for (double s : {0.6, 0.9}) {
        const EquivalenceConstants c = norm_equivalence_constants(g, s);
        EXPECT_GT(c.m_s, 0.0);
        EXPECT_GE(c.M_s, 1.0);
        for (int i = 0; i < 30; ++i) {
            const Field f = random_bandlimited(g, rng, Flavor::complex_shortwave);
            const NormReport n = hs_norm(f, s);
            const double r = n.hs_fourier / (n.l2 + n.frac_grad_l2);
            EXPECT_GE(r, c.m_s - 1e-12);
            EXPECT_LE(r, c.M_s + 1e-12);
        }
    }
}

TEST(Sobolev, SharpInequalitiesOnRandomFields) {
    const GridSpec g = make_grid(20.0, 128);
    std::mt19937_64 rng(21);
    for (double s : {0.55, 0.75, 0.95})
        for (int i = 0; i < 50; ++i) {
            const Field u = random_bandlimited(g, rng, Flavor::complex_shortwave);
            const Field v = random_bandlimited(g, rng, Flavor::real_longwave);
            EXPECT_TRUE(check_linf_interp(u, s).pass());
            EXPECT_TRUE(check_product_bound(u, s).pass());
            EXPECT_TRUE(check_chain_rule([](double x) { return std::tanh(x); }, 1.0, v, s).pass());
        }
}

TEST(Sobolev, LinfConstantRequiresSharpRange) {
    const GridSpec g = make_grid(20.0, 64);
    const Field f = sample(g, [](double x) { return std::exp(-x * x); });
    EXPECT_THROW((void)check_linf_interp(f, 0.5), DomainError);
    EXPECT_NEAR(linf_constant(0.75), 2.0 / std::sqrt(kPi * 0.5), 1e-15);
}

TEST(Sobolev, ChainRuleNeedsVanishingAtZero) {
    const GridSpec g = make_grid(20.0, 64);
    const Field f = sample_real(g, [](double x) { return std::exp(-x * x); });
    EXPECT_THROW((void)check_chain_rule([](double x) { return std::cos(x); }, 1.0, f, 0.6), DomainError);
}

TEST(Sobolev, AlgebraRatioBounded) {
    const GridSpec g = make_grid(20.0, 128);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 20; ++i) {
        const Field a = random_bandlimited(g, rng, Flavor::complex_shortwave);
        const Field b = random_bandlimited(g, rng, Flavor::complex_shortwave);
        EXPECT_TRUE(std::isfinite(algebra_ratio(a, b, 0.75)));
    }
    const Field one = sample(g, [](double) { return 1.0; });
    EXPECT_THROW((void)check_algebra(one, one, 0.4, 1.0), DomainError);
}

TEST(Coercivity, SharpConstantHolds) {
    const GridSpec g = make_grid(20.0, 128);
    std::mt19937_64 rng(13);
    const NonlinearityG G = g_tanh_blend(0.2, 1.0);
    for (int i = 0; i < 20; ++i) {
        const Field v = random_bandlimited(g, rng, Flavor::real_longwave);
        EXPECT_TRUE(check_coercivity(G.g, G.m, v, 0.75).pass());
    }
}

// For G(v) = m v the pairing equals m |(-D)^{s/4} v|^2, so the constant m / C_{1,s}
// (larger than m since C_{1,s} < 1 here) cannot hold.
TEST(Coercivity, StatedConstantFailsForLinearG) {
    const GridSpec g = make_grid(20.0, 128);
    const Field v = sample_real(g, [](double x) { return std::exp(-x * x); });
    const double m = 0.5;
    ASSERT_LT(cns_constant(0.75), 1.0);
    const InequalityReport sharp = check_coercivity([m](double x) { return m * x; }, m, v, 0.75);
    const InequalityReport stated =
        check_coercivity([m](double x) { return m * x; }, m, v, 0.75, CoercivityConstant::stated);
    EXPECT_TRUE(sharp.pass());
    EXPECT_NEAR(sharp.lhs, sharp.rhs, 1e-9 * sharp.rhs);
    EXPECT_FALSE(stated.pass());
}

TEST(Coercivity, BilinearFormMatchesSpectral) {
    const GridSpec g = make_grid(20.0, 256);
    const Field v = sample_real(g, [](double x) { return std::exp(-x * x); });
    const Field w = sample_real(g, [](double x) { return std::exp(-(x - 1) * (x - 1) / 2.0); });
    const double s = 0.4;
    const GagliardoResult b = bilinear_form(v, w, s);
    const double spec = 2.0 * inner(frac_power(v, s), frac_power(w, s)).real();
    EXPECT_NEAR(b.value / spec, 1.0, 1e-6);
}
