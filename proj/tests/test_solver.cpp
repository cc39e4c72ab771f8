#include <gtest/gtest.h>

#include "fbenney/config.hpp"
#include "fbenney/diagnostics.hpp"

using namespace fbenney;

namespace {

GridSpec grid() { return make_grid(20.0, 256); }

Field gauss_u(const GridSpec& g, double a = 0.5, double c = -6.0) {
    return sample(g, [=](double x) { return a * std::exp(-(x - c) * (x - c)); });
}
Field gauss_v(const GridSpec& g, double a = 1.0, double c = 6.0) {
    return sample_real(g, [=](double x) { return a * std::exp(-(x - c) * (x - c)); });
}

SystemParams canonical_params() {
    SystemParams p;
    p.alpha = 0.1;
    p.beta = 0.1;
    p.s = 0.75;
    p.g = g_tanh_blend(0.0, 1.0);
    return p;
}

// Independent Strang splitting for i u_t - (-D)^s u + eps^a u_xx = gamma |u|^2 u.
Field split_step_nls(Field u, double T, double h, const PerturbedRun& r, double s, double gamma) {
    const GridSpec& g = u.grid;
    const long n = std::lround(T / h);
    const rvec mask = dealias_mask(g);
    cvec half(g.N);
    for (std::size_t j = 0; j < g.N; ++j) {
        const double k = std::abs(g.k(j));
        const double w = (g.is_nyquist(j) ? 0.0 : std::pow(k, 2.0 * s)) + std::pow(r.eps, r.a) * k * k;
        half[j] = std::polar(1.0, -0.5 * w * h) * mask[j];
    }
    cvec c = forward(project_band(u).samples);
    for (long step = 0; step < n; ++step) {
        for (std::size_t j = 0; j < g.N; ++j) c[j] *= half[j];
        cvec x = backward(c);
        for (auto& z : x) z *= std::polar(1.0, -gamma * std::norm(z) * h);
        c = forward(x);
        for (std::size_t j = 0; j < g.N; ++j) c[j] *= half[j];
    }
    return from_spectrum(g, c, Flavor::complex_shortwave);
}

}  // namespace

TEST(Solver, ParamsValidation) {
    SystemParams p = canonical_params();
    p.s = 0.5;
    EXPECT_THROW(p.validate(), DomainError);
    PerturbedRun r;
    r.dt = 0.003;
    EXPECT_THROW((void)r.steps(), DomainError);
    r.dt = 0.002;
    r.sample_every = 7;
    EXPECT_THROW((void)r.steps(), DomainError);
    r.sample_every = 10;
    EXPECT_EQ(r.steps(), 500);
    r.ball_factor = 2.0;
    EXPECT_THROW(r.validate(), DomainError);
}

TEST(Solver, ContractionBoundFormula) {
    const SystemParams p = canonical_params();
    const double R = 3.0, m = 0.4, C = 1.0;
    const double t1 = 1.0 / (4.0 * 3.0 * C * 3.0);
    const double q = std::max(0.1 * 3.0, 1.0);
    const double t2 = m / (8.0 * q), t3 = m * m / (64.0 * q * q);
    EXPECT_DOUBLE_EQ(contraction_time_bound(R, p, m, 0.1), std::min({t1, t2, t3}));
    EXPECT_THROW((void)contraction_time_bound(0.0, p, m, 0.1), DomainError);
}

// With alpha = beta = 0 the short wave solves a fractional NLS on its own.
TEST(Solver, AgreesWithSplitStepWhenDecoupled) {
    const GridSpec g = grid();
    SystemParams p = canonical_params();
    p.alpha = p.beta = 0.0;
    PerturbedRun r;
    r.T = 0.5;
    r.dt = 1e-3;
    const Field u0 = gauss_u(g, 1.0, 0.0);
    const Trajectory tr = solve_perturbed(u0, gauss_v(g), p, r);
    const Field ref = split_step_nls(u0, r.T, 2.5e-4, r, p.s, 1.0);
    EXPECT_LT(max_abs_diff(tr.u.back(), ref), 2e-6);
}

// g = 0, beta = 0: the long wave is the linear flow exp(-(eps^b k^2 + eps |k|^s) t).
TEST(Solver, LongWaveExactWhenLinear) {
    const GridSpec g = grid();
    SystemParams p = canonical_params();
    p.alpha = p.beta = 0.0;
    p.g = g_zero();
    PerturbedRun r;
    r.T = 0.4;
    r.dt = 4e-3;
    const Field v0 = gauss_v(g, 1.0, 0.0);
    const Trajectory tr = solve_perturbed(gauss_u(g), v0, p, r);
    cvec c = forward(project_band(v0).samples);
    for (std::size_t j = 0; j < g.N; ++j) {
        const double k = std::abs(g.k(j));
        const double sym = (g.is_nyquist(j) ? 0.0 : std::pow(k, p.s));
        c[j] *= std::exp(-(std::pow(r.eps, r.b) * k * k + r.eps * sym) * r.T);
    }
    const Field ref = from_spectrum(g, c, Flavor::real_longwave);
    EXPECT_LT(max_abs_diff(tr.v.back(), ref), 1e-12);
}

TEST(Solver, MassConservedAndPicardContracts) {
    const GridSpec g = grid();
    PerturbedRun r;
    r.T = 0.5;
    r.sample_every = 25;
    const Trajectory tr = solve_perturbed(gauss_u(g), gauss_v(g), canonical_params(), r);
    ASSERT_EQ(tr.size(), 11u);
    const double m0 = l2_sq(tr.u.front());
    for (const auto& u : tr.u) EXPECT_NEAR(l2_sq(u) / m0, 1.0, 1e-12);
    for (std::size_t i = 1; i < tr.size(); ++i) {
        EXPECT_GE(tr.stats[i].sweeps, 1);
        EXPECT_LT(tr.stats[i].contraction_ratio, 1.0);
        EXPECT_LE(tr.stats[i].distance, 1e-10);
    }
    EXPECT_GT(tr.dt_bound, 0.0);
}

TEST(Solver, Deterministic) {
    const GridSpec g = grid();
    PerturbedRun r;
    r.T = 0.2;
    const Trajectory a = solve_perturbed(gauss_u(g), gauss_v(g), canonical_params(), r);
    const Trajectory b = solve_perturbed(gauss_u(g), gauss_v(g), canonical_params(), r);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a.u[i].samples, b.u[i].samples);
        EXPECT_EQ(a.v[i].samples, b.v[i].samples);
    }
}

TEST(Solver, BlowUpCeilingRaises) {
    const GridSpec g = grid();
    PerturbedRun r;
    r.T = 0.1;
    r.blowup_factor = 0.5;
    EXPECT_THROW((void)solve_perturbed(gauss_u(g), gauss_v(g), canonical_params(), r), BlowUpError);
}

TEST(Solver, StepHalvingRecoversLargeSteps) {
    const GridSpec g = grid();
    PerturbedRun r;
    r.T = 0.2;
    r.dt = 0.1;
    const Trajectory tr = solve_perturbed(gauss_u(g, 2.0), gauss_v(g), canonical_params(), r);
    EXPECT_GT(tr.max_level, 0);
    EXPECT_LE(tr.dt_bound, r.dt);
}

TEST(Solver, PicardStepSingle) {
    const GridSpec g = grid();
    PerturbedRun r;
    const StepResult s = picard_step(gauss_u(g), gauss_v(g), 1e-3, r, canonical_params());
    EXPECT_TRUE(s.v.is_real());
    EXPECT_NEAR(l2_sq(s.u), l2_sq(project_band(gauss_u(g))), 1e-12);
}

TEST(Sweep, LadderCounting) {
    const GridSpec g = grid();
    PerturbedRun r;
    r.T = 0.2;
    r.sample_every = 10;
    const auto one = vanishing_viscosity_sweep(gauss_u(g), gauss_v(g), canonical_params(), r, {0.1});
    EXPECT_EQ(one.rows.size(), 0u);
    const auto four = vanishing_viscosity_sweep(gauss_u(g), gauss_v(g), canonical_params(), r, {0.2, 0.1, 0.05, 0.025}, 2);
    EXPECT_EQ(four.rows.size(), 3u);
    EXPECT_THROW((void)vanishing_viscosity_sweep(gauss_u(g), gauss_v(g), canonical_params(), r, {0.1, 0.2}),
                 DomainError);
}

TEST(Sweep, FailedRungIsRecorded) {
    const GridSpec g = grid();
    PerturbedRun r;
    r.T = 0.1;
    const auto t = vanishing_viscosity_sweep(gauss_u(g), gauss_v(g), canonical_params(), r, {1.5, 0.1});
    ASSERT_EQ(t.rungs.size(), 2u);
    EXPECT_FALSE(t.rungs[0].ok);
    EXPECT_FALSE(t.rungs[0].error.empty());
    EXPECT_TRUE(t.rungs[1].ok);
    EXPECT_TRUE(t.rows.empty());
}

TEST(Sweep, WorkerCountDoesNotChangeResults) {
    const GridSpec g = grid();
    PerturbedRun r;
    r.T = 0.2;
    const rvec ladder{0.2, 0.1, 0.05};
    const auto a = vanishing_viscosity_sweep(gauss_u(g), gauss_v(g), canonical_params(), r, ladder, 1);
    const auto b = vanishing_viscosity_sweep(gauss_u(g), gauss_v(g), canonical_params(), r, ladder, 3);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].du, b.rows[i].du);
        EXPECT_EQ(a.rows[i].dv, b.rows[i].dv);
    }
}
