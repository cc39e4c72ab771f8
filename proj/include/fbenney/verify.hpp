#pragma once

#include <array>
#include <chrono>
#include <functional>
#include <random>

#include "config.hpp"
#include "diagnostics.hpp"
#include "ensemble.hpp"
#include "entropy.hpp"
#include "gronwall.hpp"
#include "weakform.hpp"

namespace fbenney {

// One pass/fail line. `seconds` is wall time and stays out of serialized
// reports so they are reproducible byte for byte.
struct CheckResult {
    std::string id;
    std::string name;
    bool pass = false;
    double metric = 0.0;
    double threshold = 0.0;
    json detail = json::object();
    double seconds = 0.0;
};

inline json to_json(const CheckResult& c) {
    return json{{"id", c.id},         {"name", c.name},           {"pass", c.pass},
                {"metric", c.metric}, {"threshold", c.threshold}, {"detail", c.detail}};
}

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    }
};

namespace detail {

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

inline double finite_or(double x, double fallback) { return std::isfinite(x) ? x : fallback; }

// Per-index generator so results do not depend on thread scheduling.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

inline double observed_order(double coarse, double fine, double ratio = 2.0) {
    if (!(coarse > 0.0) || !(fine > 0.0)) return 0.0;
    return std::log(coarse / fine) / std::log(ratio);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Operators

inline CheckResult check_frac_laplacian_agreement(double L = 20.0, std::size_t N = 2048,
                                                  const rvec& orders = {0.55, 0.6, 0.75, 0.9},
                                                  double tol = 1e-5, double time_limit = 30.0) {
    detail::Stopwatch sw;
    const GridSpec g = make_grid(L, N);
    const Field f = sample_real(g, [](double x) { return std::exp(-x * x); });
    CheckResult r{"AC1", "fractional Laplacian: spectral vs singular integral"};
    double worst = 0.0;
    json rows = json::array();
    for (double s : orders) {
        const Field a = frac_laplacian_spectral(f, s);
        const SingularResult b = frac_laplacian_singular(f, s);
        const double d = max_abs_diff(a, b.value);
        worst = std::max(worst, d);
        rows.push_back({{"s", s}, {"max_abs_diff", d}, {"quad_error", b.quad_error}, {"order", b.order}});
    }
    r.seconds = sw.seconds();
    r.metric = worst;
    r.threshold = tol;
    r.pass = worst <= tol && r.seconds < time_limit;
    r.detail = {{"rows", rows}, {"time_limit_s", time_limit}};
    return r;
}

inline CheckResult check_norm_equivalence(double L = 20.0, std::size_t N = 1024, const rvec& orders = {0.3, 0.6, 0.75, 0.9},
                                          double rel_tol = 0.01, std::size_t workers = 1) {
    detail::Stopwatch sw;
    const GridSpec g = make_grid(L, N);
    const auto fam = decaying_family();
    CheckResult r{"AC2", "Gagliardo seminorm vs spectral seminorm"};
    const std::size_t n = fam.size() * orders.size();
    rvec rel(n);
    parallel_for(n, workers, [&](std::size_t i) {
        const auto& nf = fam[i / orders.size()];
        const double s = orders[i % orders.size()];
        const Field f = sample_real(g, nf.f);
        const double q = gagliardo_seminorm_sq(f, s).value;
        const double sp = 2.0 / cns_constant(s) * frac_grad_sq(f, s);
        rel[i] = std::abs(q - sp) / sp;
    });
    const double worst = *std::max_element(rel.begin(), rel.end());
    const double c_half = std::abs(cns_constant(0.5) - 1.0 / kPi);
    r.seconds = sw.seconds();
    r.metric = worst;
    r.threshold = rel_tol;
    r.pass = worst <= rel_tol && c_half <= 1e-8;
    r.detail = {{"functions", fam.size()}, {"orders", orders}, {"C_half_abs_err", c_half}};
    return r;
}

// ---------------------------------------------------------------------------
// Inequalities

inline CheckResult check_sharp_inequalities(std::uint64_t seed, std::size_t per_order = 1000,
                                            const rvec& orders = {0.6, 0.75, 0.9}, double slack = 1e-10,
                                            std::size_t workers = 1) {
    detail::Stopwatch sw;
    const GridSpec g = make_grid(20.0, 256);
    CheckResult r{"AC3", "L-infinity interpolation, product bound and chain rule"};
    const std::size_t n = per_order * orders.size();
    std::vector<std::array<double, 3>> margin(n);
    parallel_for(n, workers, [&](std::size_t i) {
        const double s = orders[i / per_order];
        auto rng = detail::stream(seed, i);
        const Field u = random_bandlimited(g, rng, Flavor::complex_shortwave);
        const Field v = random_bandlimited(g, rng, Flavor::real_longwave);
        auto rel = [](const InequalityReport& rep) { return rep.margin / std::max(1.0, std::abs(rep.rhs)); };
        margin[i] = {rel(check_linf_interp(u, s)), rel(check_product_bound(u, s)),
                     rel(check_chain_rule([](double x) { return std::sin(x); }, 1.0, v, s))};
    });
    std::array<std::size_t, 3> violations{0, 0, 0};
    std::array<double, 3> worst{1e300, 1e300, 1e300};
    for (const auto& m : margin)
        for (int k = 0; k < 3; ++k) {
            if (m[k] < -slack) ++violations[k];
            worst[k] = std::min(worst[k], m[k]);
        }
    r.seconds = sw.seconds();
    r.metric = static_cast<double>(violations[0] + violations[1] + violations[2]);
    r.threshold = 0.0;
    r.pass = r.metric == 0.0;
    r.detail = {{"fields_per_order", per_order},
                {"orders", orders},
                {"seed", seed},
                {"violations", {{"linf_interpolation", violations[0]}, {"product_bound", violations[1]},
                                {"chain_rule", violations[2]}}},
                {"min_relative_margin", {{"linf_interpolation", worst[0]}, {"product_bound", worst[1]},
                                         {"chain_rule", worst[2]}}}};
    return r;
}

// ---------------------------------------------------------------------------
// Propagators

inline CheckResult check_propagators(std::uint64_t seed, std::size_t fields = 40, double tol = 1e-12) {
    detail::Stopwatch sw;
    const GridSpec g = make_grid(20.0, 256);
    const PropagatorSpec p{0.1, 4, 7, 0.75};
    CheckResult r{"AC4", "short-wave group and long-wave semigroup"};
    rvec tgrid;
    for (int e = -8; e <= 1; ++e)
        for (double m : {1.0, 3.0}) tgrid.push_back(m * std::pow(10.0, e));
    double iso = 0.0, group = 0.0, contr = -1e300, smooth = -1e300, semigroup = 0.0;
    std::size_t violations = 0;
    for (std::size_t i = 0; i < fields; ++i) {
        auto rng = detail::stream(seed, i);
        const Field u = random_bandlimited(g, rng, Flavor::complex_shortwave);
        const Field v = random_bandlimited(g, rng, Flavor::real_longwave);
        const double nu = l2_norm(u), nv = l2_norm(v);
        std::uniform_real_distribution<double> U(-3.0, 3.0);
        const double t1 = U(rng), t2 = U(rng);
        const Field a = schrodinger_group_apply(schrodinger_group_apply(u, t1, p), t2, p);
        const Field b = schrodinger_group_apply(u, t1 + t2, p);
        const double gd = max_abs_diff(a, b) / sup_norm(u, 1);
        const double id = std::abs(l2_norm(schrodinger_group_apply(u, t1, p)) - nu) / nu;
        group = std::max(group, gd);
        iso = std::max(iso, id);
        if (gd > tol || id > tol) ++violations;
        const Field w1 = heat_semigroup_apply(heat_semigroup_apply(v, std::abs(t1), p), std::abs(t2), p);
        const Field w2 = heat_semigroup_apply(v, std::abs(t1) + std::abs(t2), p);
        semigroup = std::max(semigroup, max_abs_diff(w1, w2) / sup_norm(v, 1));
        for (double t : tgrid) {
            const double c = (l2_norm(heat_semigroup_apply(v, t, p)) - nv) / nv;
            contr = std::max(contr, c);
            if (c > tol) ++violations;
            const InequalityReport sm = check_heat_smoothing(v, t, p, tol);
            smooth = std::max(smooth, -sm.margin / std::max(1.0, sm.rhs));
            if (!sm.pass()) ++violations;
        }
    }
    if (semigroup > tol) ++violations;
    r.seconds = sw.seconds();
    r.metric = static_cast<double>(violations);
    r.threshold = 0.0;
    r.pass = violations == 0;
    r.detail = {{"fields", fields},
                {"t_grid", tgrid},
                {"isometry_rel_err", iso},
                {"group_law_err", group},
                {"semigroup_law_err", semigroup},
                {"max_contraction_excess", contr},
                {"max_smoothing_excess", smooth}};
    return r;
}

// ---------------------------------------------------------------------------
// Solver runs on a configuration

inline Trajectory run_config(const RunConfig& c) {
    auto [u0, v0] = initial_data(c);
    return solve_perturbed(u0, v0, c.system, c.run);
}

inline CheckResult check_conservation(const RunConfig& c, double tol = 1e-8, double time_limit = 120.0) {
    detail::Stopwatch sw;
    const Trajectory tr = run_config(c);
    const TrajectoryDiagnostics d = diagnose(tr, c.workers);
    CheckResult r{"AC5", "mass conservation and long-wave maximum principle"};
    r.seconds = sw.seconds();
    r.metric = std::max(d.mass_drift, d.sup_excess);
    r.threshold = tol;
    r.pass = d.mass_drift <= tol && d.sup_excess <= tol && r.seconds < time_limit;
    r.detail = {{"mass_drift", d.mass_drift},
                {"sup_excess", d.sup_excess},
                {"samples", tr.size()},
                {"max_level", tr.max_level},
                {"dt_bound", tr.dt_bound},
                {"time_limit_s", time_limit}};
    return r;
}

inline CheckResult check_balance_orders(const RunConfig& c, const rvec& dts = {4e-3, 2e-3, 1e-3},
                                        double min_order = 1.8, std::size_t workers = 1) {
    detail::Stopwatch sw;
    CheckResult r{"AC6", "energy and long-wave balance residual orders"};
    auto [u0, v0] = initial_data(c);
    rvec er(dts.size()), vr(dts.size());
    parallel_for(dts.size(), workers, [&](std::size_t i) {
        PerturbedRun run = c.run;
        run.dt = dts[i];
        run.sample_every = 1;
        const TrajectoryDiagnostics d = diagnose(solve_perturbed(u0, v0, c.system, run));
        er[i] = d.max_energy_residual;
        vr[i] = d.max_v_residual;
    });
    rvec eo, vo;
    double worst = 1e300;
    for (std::size_t i = 1; i < dts.size(); ++i) {
        const double ratio = dts[i - 1] / dts[i];
        eo.push_back(detail::observed_order(er[i - 1], er[i], ratio));
        vo.push_back(detail::observed_order(vr[i - 1], vr[i], ratio));
        worst = std::min({worst, eo.back(), vo.back()});
    }
    r.seconds = sw.seconds();
    r.metric = worst;
    r.threshold = min_order;
    r.pass = worst >= min_order;
    r.detail = {{"dt", dts}, {"energy_residual", er}, {"v_residual", vr}, {"energy_order", eo}, {"v_order", vo}};
    return r;
}

inline json convergence_json(const ConvergenceTable& t) {
    json rungs = json::array(), rows = json::array();
    for (const auto& g : t.rungs) rungs.push_back({{"eps", g.eps}, {"ok", g.ok}, {"error", g.error}});
    for (const auto& w : t.rows)
        rows.push_back({{"eps_coarse", w.eps_coarse}, {"eps_fine", w.eps_fine}, {"du", w.du}, {"dv", w.dv}});
    return {{"rungs", rungs}, {"rows", rows}};
}

inline CheckResult check_vanishing_viscosity(const RunConfig& c, rvec ladder = {}) {
    detail::Stopwatch sw;
    if (ladder.empty()) ladder = c.eps_ladder;
    CheckResult r{"AC9", "vanishing-viscosity Cauchy table"};
    auto [u0, v0] = initial_data(c);
    const ConvergenceTable t = vanishing_viscosity_sweep(u0, v0, c.system, c.run, ladder, c.workers);
    const bool all_ok = std::all_of(t.rungs.begin(), t.rungs.end(), [](const RungStatus& s) { return s.ok; });
    r.seconds = sw.seconds();
    r.pass = all_ok && t.rows.size() + 1 == ladder.size() && t.strictly_decreasing_u() && t.strictly_decreasing_v();
    r.metric = static_cast<double>(t.rows.size());
    r.threshold = static_cast<double>(ladder.size() - 1);
    r.detail = convergence_json(t);
    return r;
}

// ---------------------------------------------------------------------------
// Smallness frontier and the empirical stability map

struct MapCell {
    double alpha = 0.0;
    double scale = 1.0;
    double u0_l2 = 0.0;
    bool analytic = false;
    std::string status;  // ok, blowup, picard_failure, error
    double t_end = 0.0;
};

inline std::vector<MapCell> stability_map(const RunConfig& c) {
    const auto [u0, v0] = initial_data(c);
    const SmallnessInputs base = smallness_inputs(u0, v0, c.system.s);
    std::vector<MapCell> cells(c.alpha_grid.size() * c.amplitude_scales.size());
    parallel_for(cells.size(), c.workers, [&](std::size_t i) {
        MapCell& m = cells[i];
        m.alpha = c.alpha_grid[i / c.amplitude_scales.size()];
        m.scale = c.amplitude_scales[i % c.amplitude_scales.size()];
        SystemParams p = c.system;
        p.alpha = m.alpha;
        const Field u = scaled(u0, m.scale);
        SmallnessInputs in = base;
        in.fg *= m.scale * m.scale;
        in.ux *= m.scale * m.scale;
        in.u4 *= std::pow(m.scale, 4);
        in.u_sup *= m.scale;
        in.nu *= m.scale;
        m.u0_l2 = in.nu;
        m.analytic = smallness_condition(p, in, c.run.T, c.run.eps, c.run.a, c.run.b).satisfied;
        try {
            const Trajectory tr = solve_perturbed(u, v0, p, c.run);
            m.status = "ok";
            m.t_end = tr.t.back();
        } catch (const BlowUpError& e) {
            m.status = "blowup";
            m.t_end = e.t;
        } catch (const NonContractionError&) {
            m.status = "picard_failure";
        } catch (const PicardMaxIterError&) {
            m.status = "picard_failure";
        }
    });
    return cells;
}

inline json map_json(const std::vector<MapCell>& cells) {
    json a = json::array();
    for (const auto& m : cells)
        a.push_back({{"alpha", m.alpha}, {"scale", m.scale}, {"u0_l2", m.u0_l2}, {"analytic_satisfied", m.analytic},
                     {"status", m.status}, {"t_end", m.t_end}});
    return a;
}

inline CheckResult check_smallness_frontier(const RunConfig& c) {
    detail::Stopwatch sw;
    CheckResult r{"AC10", "smallness frontier and empirical stability map"};
    const auto [u0, v0] = initial_data(c);
    const double T = c.run.T, eps = c.run.eps;

    // alpha = 0 on several data sets, including large ones
    bool zero_ok = true;
    for (double lam : {0.0, 1.0, 10.0, 1000.0}) {
        SystemParams p = c.system;
        p.alpha = 0.0;
        zero_ok = zero_ok && smallness_condition(p, scaled(u0, lam), v0, T, eps, c.run.a, c.run.b).satisfied;
    }
    auto rng = detail::stream(c.seed, 0);
    for (int i = 0; i < 4; ++i) {
        SystemParams p = c.system;
        p.alpha = 0.0;
        const Field u = random_bandlimited(c.grid(), rng, Flavor::complex_shortwave);
        const Field v = random_bandlimited(c.grid(), rng, Flavor::real_longwave);
        zero_ok = zero_ok && smallness_condition(p, u, v, T, eps, c.run.a, c.run.b).satisfied;
    }

    // lhs nondecreasing and the satisfied set an interval around zero along |alpha|
    const SmallnessInputs in = smallness_inputs(u0, v0, c.system.s);
    rvec alphas{0.0};
    for (int e = -80; e <= 1; ++e) alphas.push_back(std::pow(10.0, e / 2.0));
    bool monotone = true, seen_fail = false;
    double prev = -1.0;
    for (double a : alphas) {
        SystemParams p = c.system;
        p.alpha = a;
        const SmallnessReport rep = smallness_condition(p, in, T, eps, c.run.a, c.run.b);
        if (rep.lhs < prev) monotone = false;
        if (seen_fail && rep.satisfied) monotone = false;
        seen_fail = seen_fail || !rep.satisfied;
        prev = rep.lhs;
    }
    const SmallnessReport canon = smallness_condition(c.system, in, T, eps, c.run.a, c.run.b);

    const std::vector<MapCell> cells = stability_map(c);
    std::size_t bad = 0;
    for (const auto& m : cells)
        if (m.analytic && m.status != "ok") ++bad;
    r.seconds = sw.seconds();
    r.pass = zero_ok && monotone && bad == 0 && !cells.empty();
    r.metric = static_cast<double>(bad);
    r.threshold = 0.0;
    r.detail = {{"alpha_zero_satisfied", zero_ok},
                {"frontier_monotone", monotone},
                {"alpha0", detail::finite_or(canon.alpha0, -1.0)},
                {"E0", detail::finite_or(canon.E0, -1.0)},
                {"canonical_lhs", canon.lhs},
                {"canonical_rhs", canon.rhs},
                {"canonical_satisfied", canon.satisfied},
                {"cells", map_json(cells)}};
    return r;
}

// ---------------------------------------------------------------------------
// Gronwall

inline CheckResult check_gronwall(double tol_sigma2 = 1e-6, double tol_sigma1 = 1e-10) {
    detail::Stopwatch sw;
    CheckResult r{"AC7", "generalized Gronwall bound in three regimes"};
    // eta' = eta^2, eta(0) = 1/2  ->  1/(2 - t)
    GronwallSpec quad;
    quad.C = 0.5;
    quad.sigma = 2.0;
    quad.b = [](double) { return 1.0; };
    quad.h = 0.9;
    double e2 = 0.0;
    for (int i = 0; i <= 90; ++i) {
        const double t = 0.01 * i;
        e2 = std::max(e2, std::abs(gronwall_bound(quad, t) - 1.0 / (2.0 - t)));
    }
    GronwallSpec lin;
    lin.C = 1.5;
    lin.sigma = 1.0;
    lin.a = [](double) { return 0.3; };
    lin.b = [](double) { return 0.7; };
    lin.h = 2.0;
    double e1 = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double t = 0.05 * i;
        const double ex = 1.5 * std::exp(t);
        e1 = std::max(e1, std::abs(gronwall_bound(lin, t) - ex) / ex);
    }
    GronwallSpec bad = quad;
    bad.h = 2.5;
    bool rejected = false;
    double tmax = 0.0;
    try {
        (void)gronwall_bound(bad, 2.2);
    } catch (const InadmissibleHorizonError& e) {
        rejected = true;
        tmax = e.max_admissible_t;
    }
    r.seconds = sw.seconds();
    r.metric = e2;
    r.threshold = tol_sigma2;
    r.pass = e2 <= tol_sigma2 && e1 <= tol_sigma1 && rejected;
    r.detail = {{"sigma2_max_abs_err", e2},
                {"sigma1_max_rel_err", e1},
                {"inadmissible_rejected", rejected},
                {"max_admissible_t", tmax}};
    return r;
}

// ---------------------------------------------------------------------------
// Entropy remainder

inline CheckResult check_entropy_remainder(std::size_t cases = 50, std::uint64_t seed = 77, double tol = 1e-6,
                                           std::size_t workers = 1) {
    detail::Stopwatch sw;
    CheckResult r{"AC8", "entropy remainder identity and sign"};
    const auto cs = remainder_cases(cases, seed);
    std::vector<RemainderCheck> out(cs.size());
    parallel_for(cs.size(), workers, [&](std::size_t i) { out[i] = check_remainder_identity(cs[i]); });
    double worst = 0.0, minR = 1e300;
    for (const auto& o : out) {
        worst = std::max(worst, o.diff());
        minR = std::min(minR, o.Rk);
    }
    r.seconds = sw.seconds();
    r.metric = worst;
    r.threshold = tol;
    r.pass = worst <= tol && minR >= -tol;
    r.detail = {{"cases", cases}, {"seed", seed}, {"max_identity_diff", worst}, {"min_Rk", minR}};
    return r;
}

// ---------------------------------------------------------------------------
// Weak residuals

struct WeakSweep {
    double u = 0.0;  // max |residual| over the library
    double v = 0.0;
};

inline WeakSweep weak_residual_max(const Trajectory& tr, const std::vector<TestFunction>& lib) {
    WeakSweep w;
    for (const auto& f : lib) {
        w.u = std::max(w.u, std::abs(weak_residual_u(tr, f)));
        if (!f.complex_valued) w.v = std::max(w.v, std::abs(weak_residual_v(tr, f)));
    }
    return w;
}

inline CheckResult check_weak_residuals(const RunConfig& c, const rvec& dts = {4e-3, 2e-3, 1e-3},
                                        double linear_tol = 1e-8, double min_order = 1.8) {
    detail::Stopwatch sw;
    CheckResult r{"AC11", "weak residuals: exact linear flows and refinement order"};
    const auto lib = default_test_library(c.run.T, c.L);
    auto [u0, v0] = initial_data(c);

    SystemParams lin = c.system;
    lin.alpha = lin.beta = lin.gamma = 0.0;
    lin.g = g_zero();
    PerturbedRun fine = c.run;
    fine.sample_every = 1;
    const WeakSweep wl = weak_residual_max(solve_perturbed(u0, v0, lin, fine), lib);

    std::vector<WeakSweep> ws(dts.size());
    parallel_for(dts.size(), c.workers, [&](std::size_t i) {
        PerturbedRun run = c.run;
        run.dt = dts[i];
        run.sample_every = 1;
        ws[i] = weak_residual_max(solve_perturbed(u0, v0, c.system, run), lib);
    });
    rvec ru, rv, ou, ov;
    double worst = 1e300;
    for (std::size_t i = 0; i < dts.size(); ++i) {
        ru.push_back(ws[i].u);
        rv.push_back(ws[i].v);
        if (i == 0) continue;
        const double ratio = dts[i - 1] / dts[i];
        ou.push_back(detail::observed_order(ws[i - 1].u, ws[i].u, ratio));
        ov.push_back(detail::observed_order(ws[i - 1].v, ws[i].v, ratio));
        worst = std::min({worst, ou.back(), ov.back()});
    }
    r.seconds = sw.seconds();
    r.metric = std::max(wl.u, wl.v);
    r.threshold = linear_tol;
    r.pass = wl.u <= linear_tol && wl.v <= linear_tol && worst >= min_order;
    r.detail = {{"linear_u", wl.u}, {"linear_v", wl.v}, {"dt", dts}, {"residual_u", ru},
                {"residual_v", rv}, {"order_u", ou}, {"order_v", ov}, {"min_order", min_order}};
    return r;
}

// ---------------------------------------------------------------------------
// Suites

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"operators", "inequalities", "propagators", "gronwall",
                                                "entropy",   "weakform",     "all"};
    return names;
}

inline SuiteReport run_suite(const std::string& name, const RunConfig& c) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw ConfigError("unknown suite '" + name + "'");
    SuiteReport rep{name, {}};
    const bool all = name == "all";
    if (all || name == "operators") {
        rep.checks.push_back(check_frac_laplacian_agreement());
        rep.checks.push_back(check_norm_equivalence(20.0, 1024, {0.3, 0.6, 0.75, 0.9}, 0.01, c.workers));
    }
    if (all || name == "inequalities") rep.checks.push_back(check_sharp_inequalities(c.seed, 1000, {0.6, 0.75, 0.9}, 1e-10, c.workers));
    if (all || name == "propagators") rep.checks.push_back(check_propagators(c.seed));
    if (all || name == "gronwall") rep.checks.push_back(check_gronwall());
    if (all || name == "entropy") rep.checks.push_back(check_entropy_remainder(50, 77, 1e-6, c.workers));
    if (all || name == "weakform") rep.checks.push_back(check_weak_residuals(c));
    return rep;
}

}  // namespace fbenney
