#include <gtest/gtest.h>

#include <random>

#include "fbenney/config.hpp"
#include "fbenney/diagnostics.hpp"
#include "fbenney/ensemble.hpp"

using namespace fbenney;

namespace {

Trajectory canonical_run(double dt, int sample_every) {
    RunConfig c = canonical_config();
    c.run.dt = dt;
    c.run.sample_every = sample_every;
    auto [u0, v0] = initial_data(c);
    return solve_perturbed(u0, v0, c.system, c.run);
}

}  // namespace

TEST(Diagnostics, StateNormsOfPlaneWave) {
    const GridSpec g = make_grid(kPi, 64);
    const double A = 0.7, k = 3.0;
    const Field u = sample(g, [=](double x) { return std::polar(A, k * x); });
    const Field v = sample_real(g, [](double) { return 2.0; });
    const StateNorms n = state_norms(u, v, 0.75);
    const double P = 2.0 * kPi;
    EXPECT_NEAR(n.mass, P * A * A, 1e-12);
    EXPECT_NEAR(n.fg, P * A * A * std::pow(k, 1.5), 1e-11);
    EXPECT_NEAR(n.ux, P * A * A * k * k, 1e-11);
    EXPECT_NEAR(n.u4, P * std::pow(A, 4), 1e-12);
    EXPECT_NEAR(n.u_sup, A, 1e-12);
    EXPECT_NEAR(n.cross, 2.0 * P * A * A, 1e-12);
    EXPECT_NEAR(n.v_sup, 2.0, 1e-12);
    EXPECT_NEAR(n.vx, 0.0, 1e-20);
}

// u1 - u0 = h cos(kx): |.|_{H^-1} / h = sqrt(L / (1 + k^2)).
TEST(Diagnostics, NegativeNormClosedForm) {
    const double L = 10.0, h = 0.01;
    const GridSpec g = make_grid(L, 128);
    for (int m : {1, 5}) {
        const double k = kPi * m / L;
        const Field z = sample(g, [](double) { return 0.0; });
        const Field u1 = sample(g, [=](double x) { return h * std::cos(k * x); });
        const Field v1 = sample_real(g, [=](double x) { return 2.0 * h * std::cos(k * x); });
        const auto [du, dv] = dt_negative_norm(z, real_field(g, rvec(g.N, 0.0)), u1, v1, h);
        EXPECT_NEAR(du, std::sqrt(L / (1.0 + k * k)), 1e-12);
        EXPECT_NEAR(dv, 2.0 * std::sqrt(L / (1.0 + k * k)), 1e-12);
    }
    EXPECT_THROW((void)dt_negative_norm(sample(g, [](double) { return 0.0; }), real_field(g, rvec(g.N, 0.0)),
                                        sample(g, [](double) { return 0.0; }), real_field(g, rvec(g.N, 0.0)), 0.0),
                 DomainError);
}

// Uncoupled: zero energy rate; the midpoint rule keeps the quartic energy only
// up to O(dt^2).
TEST(Diagnostics, EnergyConstantWhenUncoupled) {
    const GridSpec g = make_grid(20.0, 256);
    SystemParams p;
    p.s = 0.75;
    const Field u0 = sample(g, [](double x) { return 0.8 * std::exp(-x * x); });
    rvec drift;
    for (double dt : {2e-3, 1e-3}) {
        PerturbedRun r;
        r.T = 0.2;
        r.dt = dt;
        const Trajectory tr = solve_perturbed(u0, real_field(g, rvec(g.N, 0.0)), p, r);
        const TrajectoryDiagnostics d = diagnose(tr);
        double worst = 0.0;
        for (const auto& rec : d.records) worst = std::max(worst, std::abs(rec.energy / d.records.front().energy - 1.0));
        drift.push_back(worst);
        EXPECT_EQ(energy_rate(tr.u.back(), tr.v.back(), p, r), 0.0);
    }
    EXPECT_LT(drift[1], 1e-7);
    EXPECT_NEAR(std::log2(drift[0] / drift[1]), 2.0, 0.1);
}

TEST(Diagnostics, CanonicalInvariants) {
    const Trajectory tr = canonical_run(2e-3, 1);
    const TrajectoryDiagnostics d = diagnose(tr, 2);
    EXPECT_LE(d.mass_drift, 1e-8);
    EXPECT_LE(d.sup_excess, 1e-8);
    EXPECT_TRUE(d.theta.theta_holds());
    EXPECT_TRUE(d.theta.H_holds());
    EXPECT_TRUE(d.i15.holds());
    EXPECT_LT(d.max_energy_residual, 1e-6);
    EXPECT_LT(d.max_v_residual, 1e-5);
    EXPECT_GT(d.dtu_integral, 0.0);
    ASSERT_EQ(d.records.size(), tr.size());
    // theta(0) is the base value and exceeds 1 + h(0)
    EXPECT_GE(d.theta.theta.front(), d.theta.lhs.front());
}

TEST(Diagnostics, BalanceResidualsConvergeAtSecondOrder) {
    const TrajectoryDiagnostics a = diagnose(canonical_run(4e-3, 1));
    const TrajectoryDiagnostics b = diagnose(canonical_run(2e-3, 1));
    EXPECT_GT(std::log2(a.max_energy_residual / b.max_energy_residual), 1.8);
    EXPECT_GT(std::log2(a.max_v_residual / b.max_v_residual), 1.8);
}

TEST(Diagnostics, WindowResidualHelpers) {
    const Trajectory tr = canonical_run(2e-3, 1);
    const double h = tr.sample_dt();
    const std::size_t i = 100;
    const double e = energy_balance_residual(tr.u[i - 1], tr.v[i - 1], tr.u[i], tr.v[i], tr.u[i + 1], tr.v[i + 1], h,
                                             tr.params, tr.run);
    const double v = v_balance_residual(tr.v[i - 1], tr.u[i], tr.v[i], tr.v[i + 1], h, tr.params, tr.run);
    const TrajectoryDiagnostics d = diagnose(tr);
    EXPECT_NEAR(e, d.records[i].energy_balance_residual, 1e-12);
    EXPECT_NEAR(v, d.records[i].v_balance_residual, 1e-12);
}

TEST(Smallness, AlphaZeroAlwaysSatisfied) {
    const GridSpec g = make_grid(20.0, 256);
    std::mt19937_64 rng(31);
    SystemParams p;
    p.alpha = 0.0;
    p.beta = 5.0;
    p.s = 0.75;
    p.g = g_tanh_blend(0.0, 1.0);
    for (int i = 0; i < 5; ++i) {
        const Field u = scaled(random_bandlimited(g, rng, Flavor::complex_shortwave), 10.0);
        const Field v = random_bandlimited(g, rng, Flavor::real_longwave);
        const SmallnessReport r = smallness_condition(p, u, v, 1.0, 0.1);
        EXPECT_TRUE(r.satisfied);
        EXPECT_EQ(r.lhs, 0.0);
    }
}

TEST(Smallness, FrontierIsSharpAndMonotone) {
    const RunConfig c = canonical_config();
    auto [u0, v0] = initial_data(c);
    const SmallnessInputs in = smallness_inputs(u0, v0, c.system.s);
    const SmallnessReport r = smallness_condition(c.system, in, 1.0, 0.1);
    EXPECT_FALSE(r.satisfied);
    EXPECT_EQ(r.route, "none");
    ASSERT_GT(r.alpha0, 0.0);
    SystemParams p = c.system;
    p.alpha = r.alpha0;
    EXPECT_TRUE(smallness_condition(p, in, 1.0, 0.1).satisfied);
    p.alpha = r.alpha0 * 1.01;
    EXPECT_FALSE(smallness_condition(p, in, 1.0, 0.1).satisfied);
    double prev = -1.0;
    for (double a : {1e-70, 1e-60, 1e-40, 1e-10, 0.1, 1.0}) {
        p.alpha = a;
        const double lhs = smallness_condition(p, in, 1.0, 0.1).lhs;
        EXPECT_GE(lhs, prev);
        prev = lhs;
    }
}

TEST(Smallness, BetaZeroGivesUnboundedAlpha) {
    const RunConfig c = canonical_config();
    auto [u0, v0] = initial_data(c);
    SystemParams p = c.system;
    p.beta = 0.0;
    const SmallnessReport r = smallness_condition(p, u0, v0, 1.0, 0.1);
    EXPECT_TRUE(r.satisfied);
    EXPECT_TRUE(std::isinf(r.alpha0));
    EXPECT_EQ(r.C2, 0.0);
}
