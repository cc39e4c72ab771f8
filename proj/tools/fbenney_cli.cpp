// fbenney: run, sweep and verify front end.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "fbenney/fbenney.hpp"

using namespace fbenney;

namespace {

enum Exit { kPass = 0, kInvariant = 1, kConfig = 2, kBlowUp = 3 };

struct Options {
    std::string config;
    std::string out;
    std::string suite = "all";
    long long seed = -1;
    long long workers = -1;
};

RunConfig resolve(const Options& o) {
    RunConfig c = o.config.empty() ? canonical_config() : load_config(o.config);
    if (!o.out.empty()) c.output = o.out;
    if (o.seed >= 0) c.seed = static_cast<std::uint64_t>(o.seed);
    if (o.workers == 0) throw ConfigError("--workers must be >= 1");
    if (o.workers > 0) c.workers = static_cast<std::size_t>(o.workers);
    validate(c);
    return c;
}

fs::path prepare(const RunConfig& c) {
    fs::path dir(c.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
    write_config_copy(dir, c);
    return dir;
}

json invariant(const std::string& name, bool pass, double value, double threshold) {
    return json{{"name", name}, {"pass", pass}, {"value", value}, {"threshold", threshold}};
}

// Solves one configuration and writes its artifacts into dir.
int run_one(const RunConfig& c, const fs::path& dir) {
    const std::string hash = config_hash(c);
    auto [u0, v0] = initial_data(c);
    const SmallnessReport sm = smallness_condition(c.system, u0, v0, c.run.T, c.run.eps, c.run.a, c.run.b);
    json smj{{"C", sm.C},   {"C1", sm.C1},   {"C2", sm.C2}, {"C3", sm.C3},
             {"lhs", sm.lhs}, {"rhs", sm.rhs}, {"satisfied", sm.satisfied},
             {"alpha0", detail::finite_or(sm.alpha0, -1.0)}, {"E0", detail::finite_or(sm.E0, -1.0)},
             {"route", sm.route}};

    Trajectory tr;
    try {
        tr = solve_perturbed(u0, v0, c.system, c.run);
    } catch (const BlowUpError& e) {
        write_json(dir / "summary.json", json{{"status", "blowup"}, {"t", e.t}, {"error", e.what()}, {"smallness", smj}},
                   hash);
        std::cerr << "fbenney: solver blow-up: " << e.what() << " (eps=" << c.run.eps << ", alpha=" << c.system.alpha
                  << ")\n";
        return kBlowUp;
    }
    const TrajectoryDiagnostics d = diagnose(tr, c.workers);
    write_trajectory_jsonl(dir / "trajectory.jsonl", tr, d, hash);
    write_diagnostics_jsonl(dir / "diagnostics.jsonl", d, hash);
    write_timeseries_csv(dir / "timeseries.csv", d, hash);

    json inv = json::array();
    inv.push_back(invariant("mass_drift", d.mass_drift <= c.mass_drift_tol, d.mass_drift, c.mass_drift_tol));
    inv.push_back(invariant("max_principle", d.sup_excess <= c.max_principle_tol, d.sup_excess, c.max_principle_tol));
    inv.push_back(invariant("theta_envelope", d.theta.theta_holds(), d.theta.theta_margin, 0.0));
    inv.push_back(invariant("long_wave_bound", d.theta.H_holds(), d.theta.H_margin, 0.0));
    if (tr.size() >= 2)
        inv.push_back(invariant("dissipation_bound", d.i15.holds(), d.i15.rhs - std::max(d.i15.lhs_literal, d.i15.lhs_derivation), 0.0));
    const bool finite = std::isfinite(d.max_energy_residual) && std::isfinite(d.max_v_residual);
    inv.push_back(invariant("residuals_finite", finite, std::max(d.max_energy_residual, d.max_v_residual), 0.0));
    bool ok = true;
    for (const auto& i : inv) ok = ok && i["pass"].get<bool>();

    json summary{{"status", ok ? "pass" : "fail"},
                 {"invariants", inv},
                 {"samples", tr.size()},
                 {"dt_bound", detail::finite_or(tr.dt_bound, -1.0)},
                 {"max_halving_level", tr.max_level},
                 {"max_energy_residual", d.max_energy_residual},
                 {"max_v_residual", d.max_v_residual},
                 {"dtu_hminus1_sq_integral", d.dtu_integral},
                 {"dtv_hminus1_sq_integral", d.dtv_integral},
                 {"dissipation", {{"lhs_literal", d.i15.lhs_literal}, {"lhs_derivation", d.i15.lhs_derivation},
                                  {"rhs", d.i15.rhs}}},
                 {"smallness", smj}};
    write_json(dir / "summary.json", summary, hash);
    for (const auto& i : inv)
        std::cout << (i["pass"].get<bool>() ? "PASS " : "FAIL ") << i["name"].get<std::string>()
                  << " value=" << i["value"].get<double>() << '\n';
    return ok ? kPass : kInvariant;
}

int cmd_run(const Options& o) {
    const RunConfig c = resolve(o);
    return run_one(c, prepare(c));
}

int cmd_sweep(const Options& o) {
    RunConfig c = resolve(o);
    const fs::path dir = prepare(c);
    const std::string hash = config_hash(c);
    if (c.eps_ladder.size() == 1) {
        c.run.eps = c.eps_ladder.front();
        return run_one(c, dir);
    }
    int status = kPass;
    json summary = json::object();
    if (c.eps_ladder.size() > 1) {
        auto [u0, v0] = initial_data(c);
        ConvergenceTable t = vanishing_viscosity_sweep(u0, v0, c.system, c.run, c.eps_ladder, c.workers, true);
        std::size_t k = 0;
        for (std::size_t i = 0; i < t.rungs.size(); ++i) {
            if (!t.rungs[i].ok) {
                std::cerr << "fbenney: rung eps=" << t.rungs[i].eps << " failed: " << t.rungs[i].error << '\n';
                status = kInvariant;
                continue;
            }
            const fs::path rd = dir / ("rung_" + std::to_string(i));
            fs::create_directories(rd);
            RunConfig rc = c;
            rc.run.eps = t.rungs[i].eps;
            write_timeseries_csv(rd / "timeseries.csv", diagnose(t.trajectories[k++], c.workers), config_hash(rc));
        }
        write_convergence_csv(dir / "convergence.csv", t, hash);
        const bool dec = t.strictly_decreasing_u() && t.strictly_decreasing_v();
        summary["cauchy"] = convergence_json(t);
        summary["cauchy"]["strictly_decreasing"] = dec;
        if (!dec) status = kInvariant;
        for (const auto& r : t.rows)
            std::cout << "eps " << r.eps_coarse << " -> " << r.eps_fine << "  du=" << r.du << "  dv=" << r.dv << '\n';
    }
    if (!c.alpha_grid.empty() && !c.amplitude_scales.empty()) {
        const auto cells = stability_map(c);
        auto out = detail::open_out(dir / "stability_map.csv");
        out << "# config_hash=" << hash << " artifact_version=" << kVersion << '\n';
        out << "alpha,scale,u0_l2,analytic_satisfied,status,t_end\n" << std::setprecision(17);
        std::size_t bad = 0;
        for (const auto& m : cells) {
            out << m.alpha << ',' << m.scale << ',' << m.u0_l2 << ',' << (m.analytic ? 1 : 0) << ',' << m.status << ','
                << m.t_end << '\n';
            if (m.analytic && m.status != "ok") ++bad;
        }
        auto [u0, v0] = initial_data(c);
        const SmallnessReport sm = smallness_condition(c.system, u0, v0, c.run.T, c.run.eps, c.run.a, c.run.b);
        summary["stability_map"] = {{"cells", map_json(cells)},
                                    {"alpha0", detail::finite_or(sm.alpha0, -1.0)},
                                    {"E0", detail::finite_or(sm.E0, -1.0)},
                                    {"inconsistent_cells", bad}};
        if (bad > 0) status = kInvariant;
        std::cout << "stability map: " << cells.size() << " cells, " << bad << " blow-ups inside the analytic region\n";
    }
    summary["status"] = status == kPass ? "pass" : "fail";
    write_json(dir / "sweep.json", summary, hash);
    return status;
}

int cmd_verify(const Options& o) {
    const RunConfig c = resolve(o);
    const SuiteReport rep = run_suite(o.suite, c);
    const fs::path dir = prepare(c);
    json checks = json::array();
    for (const auto& ch : rep.checks) {
        checks.push_back(to_json(ch));
        std::printf("%s %-5s %s  metric=%.3e threshold=%.3e  (%.2f s)\n", ch.pass ? "PASS" : "FAIL", ch.id.c_str(),
                    ch.name.c_str(), ch.metric, ch.threshold, ch.seconds);
    }
    write_json(dir / ("verify_" + o.suite + ".json"),
               json{{"suite", o.suite}, {"seed", c.seed}, {"pass", rep.pass()}, {"checks", checks}}, config_hash(c));
    return rep.pass() ? kPass : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral solver and verification suite for the fractional Benney system"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "configuration file (JSON)");
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--seed", o.seed, "random seed override");
        sub->add_option("--workers", o.workers, "worker threads");
    };
    auto* run = app.add_subcommand("run", "solve one configuration and write artifacts");
    auto* sweep = app.add_subcommand("sweep", "eps ladder and alpha x amplitude stability map");
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    for (auto* s : {run, sweep, verify}) add_common(s);
    verify->add_option("--suite", o.suite, "operators, inequalities, propagators, gronwall, entropy, weakform, all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kConfig;
    }
    try {
        if (*run) return cmd_run(o);
        if (*sweep) return cmd_sweep(o);
        return cmd_verify(o);
    } catch (const ConfigError& e) {
        std::cerr << "fbenney: config error: " << e.what() << '\n';
        return kConfig;
    } catch (const BlowUpError& e) {
        std::cerr << "fbenney: solver blow-up: " << e.what() << '\n';
        return kBlowUp;
    } catch (const Error& e) {
        std::cerr << "fbenney: " << e.what() << '\n';
        return kInvariant;
    }
}
