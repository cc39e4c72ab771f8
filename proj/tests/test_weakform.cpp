#include <gtest/gtest.h>

#include "fbenney/config.hpp"
#include "fbenney/weakform.hpp"

using namespace fbenney;

namespace {

Trajectory linear_run(int sample_every = 1) {
    RunConfig c = canonical_config();
    c.system.alpha = c.system.beta = c.system.gamma = 0.0;
    c.system.g = g_zero();
    c.run.sample_every = sample_every;
    auto [u0, v0] = initial_data(c);
    return solve_perturbed(u0, v0, c.system, c.run);
}

}  // namespace

TEST(TestFunctions, LibraryShape) {
    const auto lib = default_test_library(1.0, 20.0);
    ASSERT_EQ(lib.size(), 16u);
    const GridSpec g = make_grid(20.0, 512);
    for (const auto& f : lib) {
        EXPECT_EQ(f.complex_valued, f.id % 2 == 0);
        EXPECT_FALSE(f.check_support(g, 1.0));
        EXPECT_LT(f.spectral_tail(g), 1e-8) << "id " << f.id;
    }
    // fixed seed: same library twice
    const auto again = default_test_library(1.0, 20.0);
    for (std::size_t i = 0; i < lib.size(); ++i) EXPECT_EQ(lib[i].xc, again[i].xc);
}

TEST(TestFunctions, SimpsonWeightsExactOnCubics) {
    for (std::size_t n : {3u, 4u, 5u, 8u, 11u}) {
        const double h = 1.0 / static_cast<double>(n - 1);
        const rvec w = detail::simpson_weights(n, h);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = h * static_cast<double>(i);
            acc += w[i] * (t * t * t - 2.0 * t + 1.0);
        }
        EXPECT_NEAR(acc, 0.25 - 1.0 + 1.0, 1e-14) << n;
    }
}

TEST(TestFunctions, SupportRules) {
    const GridSpec g = make_grid(20.0, 256);
    TestFunction f;
    f.tc = 0.9;
    f.tw = 0.3;
    f.xw = 2.0;
    EXPECT_THROW((void)f.check_support(g, 1.0), SupportLeakageError);
    f.tc = 3.0;
    EXPECT_TRUE(f.check_support(g, 1.0));
    f.tc = 0.3;
    f.xc = 19.0;
    EXPECT_THROW((void)f.check_support(g, 1.0), SupportLeakageError);
}

TEST(WeakForm, ExactLinearFlows) {
    const Trajectory tr = linear_run();
    for (const auto& f : default_test_library(1.0, 20.0)) {
        EXPECT_LT(std::abs(weak_residual_u(tr, f)), 1e-8) << f.id;
        if (!f.complex_valued) {
            EXPECT_LT(std::abs(weak_residual_v(tr, f)), 1e-8) << f.id;
        }
    }
}

TEST(WeakForm, DisjointSupportIsZero) {
    const Trajectory tr = linear_run(10);
    TestFunction f;
    f.tc = 5.0;
    f.tw = 1.0;
    EXPECT_EQ(weak_residual_u(tr, f), cplx(0.0, 0.0));
    EXPECT_EQ(weak_residual_v(tr, f), 0.0);
}

// An extra factor i on the fractional pairing is not satisfied by solutions.
TEST(WeakForm, LiteralPhaseIsInconsistent) {
    const Trajectory tr = linear_run();
    TestFunction f;
    f.tc = 0.4;
    f.tw = 0.5;
    f.xc = -6.0;
    f.xw = 4.0;
    f.complex_valued = true;
    WeakOptions lit;
    lit.phase = FracTermPhase::literal;
    EXPECT_LT(std::abs(weak_residual_u(tr, f)), 1e-8);
    EXPECT_GT(std::abs(weak_residual_u(tr, f, lit)), 1e-3);
}

TEST(WeakForm, NonlinearResidualsShrinkAtSecondOrder) {
    RunConfig c = canonical_config();
    const auto lib = default_test_library(1.0, 20.0);
    double prev_u = 0.0, prev_v = 0.0;
    for (double dt : {4e-3, 2e-3}) {
        c.run.dt = dt;
        c.run.sample_every = 1;
        auto [u0, v0] = initial_data(c);
        const Trajectory tr = solve_perturbed(u0, v0, c.system, c.run);
        double mu = 0.0, mv = 0.0;
        for (const auto& f : lib) {
            mu = std::max(mu, std::abs(weak_residual_u(tr, f)));
            if (!f.complex_valued) mv = std::max(mv, std::abs(weak_residual_v(tr, f)));
        }
        if (prev_u > 0.0) {
            EXPECT_GT(std::log2(prev_u / mu), 1.8);
            EXPECT_GT(std::log2(prev_v / mv), 1.8);
        }
        prev_u = mu;
        prev_v = mv;
    }
}

TEST(WeakForm, RealTestFunctionRequiredForLongWave) {
    const Trajectory tr = linear_run(10);
    TestFunction f;
    f.tc = 0.4;
    f.tw = 0.3;
    f.complex_valued = true;
    f.kappa = 1.0;
    EXPECT_THROW((void)weak_residual_v(tr, f), DomainError);
}
