#pragma once

#include <limits>
#include <map>
#include <optional>

#include "nonlinearity.hpp"
#include "parallel.hpp"
#include "propagators.hpp"

namespace fbenney {

struct SystemParams {
    double alpha = 0.0;
    double beta = 0.0;
    // Coefficient of |u|^2 u. The system fixes it to 1; 0 switches the cubic
    // term off for checks against exact linear flows.
    double gamma = 1.0;
    double s = 0.75;
    NonlinearityG g;

    void validate() const {
        FracOrder::coupled(s);
        if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
            throw DomainError("SystemParams: coupling constants must be finite");
        g.validate();
    }
};

struct PerturbedRun {
    double eps = 0.1;
    int a = 4;
    int b = 7;
    double T = 1.0;
    double dt = 2e-3;
    int sample_every = 1;
    double picard_tol = 1e-10;
    int picard_max_iter = 50;
    double blowup_factor = 1e6;
    double algebra_constant = 1.0;
    double ball_factor = 2.5;
    int max_halvings = 12;

    PropagatorSpec propagator(double s) const { return PropagatorSpec{eps, a, b, s}; }

    void validate() const {
        if (!(eps > 0.0 && eps < 1.0)) throw DomainError("PerturbedRun: eps must lie in (0,1)");
        if (a < 0 || b < 0) throw DomainError("PerturbedRun: exponents must be nonnegative");
        if (!(T > 0.0) || !(dt > 0.0)) throw DomainError("PerturbedRun: T and dt must be positive");
        if (sample_every < 1) throw DomainError("PerturbedRun: sample_every must be >= 1");
        if (!(picard_tol > 0.0) || picard_max_iter < 1) throw DomainError("PerturbedRun: bad Picard settings");
        if (!(algebra_constant > 0.0)) throw DomainError("PerturbedRun: algebra_constant must be positive");
        if (!(ball_factor > 2.0)) throw DomainError("PerturbedRun: ball radius factor must exceed 2");
    }

    long steps() const {
        const long n = std::lround(T / dt);
        if (n < 1 || std::abs(static_cast<double>(n) * dt - T) > 1e-9 * T)
            throw DomainError("PerturbedRun: T must be an integer multiple of dt");
        if (n % sample_every != 0) throw DomainError("PerturbedRun: sample_every must divide the step count");
        return n;
    }
};

// min{ 1/(4 max(|alpha|,R) C R),  m_s/(8 max(|beta| R, M)),  m_s^2/(64 C^2 max(|beta| R, M)^2) }
inline double contraction_time_bound(double R, const SystemParams& p, double m_s, double eps,
                                     double algebra_constant = 1.0) {
    if (!(R > 0.0) || !(m_s > 0.0) || !(algebra_constant > 0.0))
        throw DomainError("contraction_time_bound: R, m_s and C must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("contraction_time_bound: eps must lie in (0,1)");
    const double inf = std::numeric_limits<double>::infinity();
    const double C = algebra_constant;
    const double t1 = 1.0 / (4.0 * std::max(std::abs(p.alpha), R) * C * R);
    const double q = std::max(std::abs(p.beta) * R, p.g.M);
    const double t2 = q > 0.0 ? m_s / (8.0 * q) : inf;
    const double t3 = q > 0.0 ? m_s * m_s / (64.0 * C * C * q * q) : inf;
    return std::min({t1, t2, t3});
}

struct StepStats {
    int sweeps = 0;
    double distance = 0.0;           // last H^1 distance between Picard iterates
    double contraction_ratio = 0.0;  // largest ratio of successive distances
};

namespace detail {

inline double h1_spec(const GridSpec& g, const cvec& c, const rvec& w) {
    double s = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) s += w[j] * std::norm(c[j]);
    return std::sqrt(s * g.length());
}

}  // namespace detail

// One exponential-midpoint step of the Duhamel equations, iterated to a fixed
// point. The eps*v part of g_eps is folded into the long-wave propagator.
class Stepper {
public:
    Stepper(const GridSpec& g, const SystemParams& p, const PerturbedRun& r) : g_(g), p_(p), r_(r) {
        const PropagatorSpec ps = r.propagator(p.s);
        omega_ = schrodinger_rate(g, ps);
        lambda_ = heat_rate(g, ps);
        half_ = frac_symbol(g, p.s);
        mask_ = dealias_mask(g);
        h1w_.resize(g.N);
        for (std::size_t j = 0; j < g.N; ++j) {
            lambda_[j] += r.eps * half_[j];
            h1w_[j] = 1.0 + g.k(j) * g.k(j);
        }
    }

    const GridSpec& grid() const { return g_; }
    const rvec& h1_weights() const { return h1w_; }

    StepStats step(cvec& uh, cvec& vh, double h) {
        const auto& fac = factors(0.5 * h);
        const cvec& Eu = fac.first;
        const rvec& Ev = fac.second;
        const std::size_t N = g_.N;
        cvec au(N), av(N);
        for (std::size_t j = 0; j < N; ++j) {
            au[j] = Eu[j] * uh[j];
            av[j] = Ev[j] * vh[j];
        }
        cvec mu = au, mv = av, fu, fv, du(N), dv(N);
        StepStats st;
        double prev = std::numeric_limits<double>::infinity();
        int rising = 0;
        for (int sweep = 1;; ++sweep) {
            rhs(mu, mv, fu, fv);
            for (std::size_t j = 0; j < N; ++j) {
                const cplx nu = au[j] - cplx(0.0, 0.5 * h) * fu[j];
                const cplx nv = av[j] + 0.5 * h * fv[j];
                du[j] = nu - mu[j];
                dv[j] = nv - mv[j];
                mu[j] = nu;
                mv[j] = nv;
            }
            const double dist =
                2.0 * std::max(detail::h1_spec(g_, du, h1w_), detail::h1_spec(g_, dv, h1w_));
            if (sweep > 1 && prev > 0.0) st.contraction_ratio = std::max(st.contraction_ratio, dist / prev);
            st.sweeps = sweep;
            st.distance = dist;
            if (dist < r_.picard_tol) break;
            rising = (dist >= prev) ? rising + 1 : 0;
            if (rising >= 3) throw NonContractionError("Picard iteration stopped contracting");
            if (sweep >= r_.picard_max_iter)
                throw PicardMaxIterError("Picard iteration exceeded " + std::to_string(r_.picard_max_iter) + " sweeps");
            prev = dist;
        }
        for (std::size_t j = 0; j < N; ++j) {
            uh[j] = Eu[j] * (2.0 * mu[j] - au[j]);
            vh[j] = Ev[j] * (2.0 * mv[j] - av[j]);
        }
        return st;
    }

private:
    // Spectral right-hand sides at the midpoint iterate:
    //   fu = P[(alpha v + gamma |u|^2) u],   fv = |k|^s P[beta |u|^2 - g(v)]
    void rhs(const cvec& mu, const cvec& mv, cvec& fu, cvec& fv) const {
        const std::size_t N = g_.N;
        const cvec pu = backward(mu), pv = backward(mv);
        cvec prod(N), mod(N);
        for (std::size_t i = 0; i < N; ++i) {
            const double v = pv[i].real();
            const double m2 = std::norm(pu[i]);
            prod[i] = (p_.alpha * v + p_.gamma * m2) * pu[i];
            mod[i] = cplx(p_.beta * m2 - p_.g(v), 0.0);
        }
        fu = forward(prod);
        fv = forward(mod);
        for (std::size_t j = 0; j < N; ++j) {
            fu[j] *= mask_[j];
            fv[j] *= mask_[j] * half_[j];
        }
    }

    const std::pair<cvec, rvec>& factors(double tau) {
        auto it = cache_.find(tau);
        if (it != cache_.end()) return it->second;
        cvec eu(g_.N);
        rvec ev(g_.N);
        for (std::size_t j = 0; j < g_.N; ++j) {
            eu[j] = std::polar(1.0, -omega_[j] * tau);
            ev[j] = std::exp(-lambda_[j] * tau);
        }
        return cache_.emplace(tau, std::make_pair(std::move(eu), std::move(ev))).first->second;
    }

    GridSpec g_;
    SystemParams p_;
    PerturbedRun r_;
    rvec omega_, lambda_, half_, mask_, h1w_;
    std::map<double, std::pair<cvec, rvec>> cache_;
};

struct StepResult {
    Field u;
    Field v;
    StepStats stats;
};

inline StepResult picard_step(const Field& u, const Field& v, double dt, const PerturbedRun& run,
                              const SystemParams& params) {
    require_same_grid(u, v, "picard_step");
    Stepper st(u.grid, params, run);
    cvec uh = forward(u.samples), vh = forward(v.samples);
    StepStats stats = st.step(uh, vh, dt);
    cvec vs = backward(vh);
    for (auto& z : vs) z = cplx(z.real(), 0.0);
    return {from_spectrum(u.grid, uh, Flavor::complex_shortwave), Field(u.grid, std::move(vs), Flavor::real_longwave),
            stats};
}

struct Trajectory {
    GridSpec grid;
    SystemParams params;
    PerturbedRun run;
    rvec t;
    std::vector<Field> u;
    std::vector<Field> v;
    std::vector<StepStats> stats;  // per stored sample, aggregated over the steps since the last one
    double dt_bound = 0.0;
    int max_level = 0;  // deepest step halving used

    std::size_t size() const { return t.size(); }
    double sample_dt() const { return t.size() > 1 ? t[1] - t[0] : 0.0; }
};

inline double h1_radius(const Field& u0, const Field& v0) { return std::max(h1_norm(u0), h1_norm(v0)); }

inline Trajectory solve_perturbed(const Field& u0_in, const Field& v0_in, const SystemParams& params,
                                  const PerturbedRun& run) {
    require_same_grid(u0_in, v0_in, "solve_perturbed");
    params.validate();
    run.validate();
    const GridSpec& g = u0_in.grid;
    const long n_steps = run.steps();

    // Mollified data: projection onto the resolved band.
    Field u0 = project_band(u0_in);
    u0.flavor = Flavor::complex_shortwave;
    Field v0 = project_band(v0_in.is_real() ? v0_in : real_field(g, v0_in.real_part()));
    const double vsup_in = sup_norm(v0_in), vsup = sup_norm(v0);
    if (vsup > vsup_in * (1.0 + 1e-10) + 1e-14)
        throw DomainError("solve_perturbed: band projection raised sup|v0| above the data");

    const double r0 = h1_radius(u0, v0);
    for (double x : {h1_norm(u0), h1_norm(v0)})
        if (!std::isfinite(x)) throw DomainError("solve_perturbed: initial data must have finite H^1 norm");

    Trajectory tr;
    tr.grid = g;
    tr.params = params;
    tr.run = run;
    const double m_s = norm_equivalence_constants(g, params.s).m_s;
    tr.dt_bound = r0 > 0.0 ? contraction_time_bound(run.ball_factor * r0, params, m_s, run.eps, run.algebra_constant)
                           : std::numeric_limits<double>::infinity();
    int min_level = 0;
    while (run.dt / std::ldexp(1.0, min_level) > tr.dt_bound) ++min_level;
    const double ceiling_u = run.blowup_factor * h1_norm(u0);
    const double ceiling_v = run.blowup_factor * h1_norm(v0);

    Stepper stepper(g, params, run);
    cvec uh = forward(u0.samples), vh = forward(v0.samples);
    auto store = [&](double t, const StepStats& agg) {
        tr.t.push_back(t);
        tr.u.push_back(from_spectrum(g, uh, Flavor::complex_shortwave));
        cvec vs = backward(vh);
        for (auto& z : vs) z = cplx(z.real(), 0.0);
        tr.v.emplace_back(g, std::move(vs), Flavor::real_longwave);
        tr.stats.push_back(agg);
    };
    store(0.0, StepStats{});

    int level = min_level;
    StepStats agg;
    for (long n = 0; n < n_steps; ++n) {
        for (;;) {
            cvec u_try = uh, v_try = vh;
            const long sub = 1L << level;
            const double h = run.dt / static_cast<double>(sub);
            StepStats local;
            try {
                for (long k = 0; k < sub; ++k) {
                    StepStats st = stepper.step(u_try, v_try, h);
                    local.sweeps = std::max(local.sweeps, st.sweeps);
                    local.distance = std::max(local.distance, st.distance);
                    local.contraction_ratio = std::max(local.contraction_ratio, st.contraction_ratio);
                }
            } catch (const NonContractionError&) {
                if (level - min_level >= run.max_halvings) throw;
                ++level;
                continue;
            } catch (const PicardMaxIterError&) {
                if (level - min_level >= run.max_halvings) throw;
                ++level;
                continue;
            }
            uh = std::move(u_try);
            vh = std::move(v_try);
            agg.sweeps = std::max(agg.sweeps, local.sweeps);
            agg.distance = std::max(agg.distance, local.distance);
            agg.contraction_ratio = std::max(agg.contraction_ratio, local.contraction_ratio);
            tr.max_level = std::max(tr.max_level, level);
            break;
        }
        if (level > min_level) --level;
        const double t = static_cast<double>(n + 1) * run.dt;
        const double nu = detail::h1_spec(g, uh, stepper.h1_weights());
        const double nv = detail::h1_spec(g, vh, stepper.h1_weights());
        if (!std::isfinite(nu) || !std::isfinite(nv) || nu > ceiling_u || nv > ceiling_v)
            throw BlowUpError("solution left the blow-up ceiling at t=" + std::to_string(t), t);
        if ((n + 1) % run.sample_every == 0) {
            store(t, agg);
            agg = StepStats{};
        }
    }
    return tr;
}

// L2((0,T) x grid) distance between two trajectories on the same time grid.
inline std::pair<double, double> trajectory_distance(const Trajectory& a, const Trajectory& b) {
    if (a.size() != b.size()) throw DomainError("trajectory_distance: time grids differ");
    auto integrate = [&](const std::vector<Field>& x, const std::vector<Field>& y) {
        double acc = 0.0;
        for (std::size_t n = 0; n < x.size(); ++n) {
            const double w = (n == 0 || n + 1 == x.size()) ? 0.5 : 1.0;
            acc += w * l2_sq(add(x[n], y[n], -1.0));
        }
        return std::sqrt(acc * a.sample_dt());
    };
    return {integrate(a.u, b.u), integrate(a.v, b.v)};
}

struct ConvergenceRow {
    double eps_coarse = 0.0;
    double eps_fine = 0.0;
    double du = 0.0;
    double dv = 0.0;
};

struct RungStatus {
    double eps = 0.0;
    bool ok = false;
    std::string error;
};

struct ConvergenceTable {
    std::vector<RungStatus> rungs;
    std::vector<ConvergenceRow> rows;
    std::vector<Trajectory> trajectories;  // kept only when requested

    bool strictly_decreasing_u() const {
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (!(rows[i].du < rows[i - 1].du)) return false;
        return !rows.empty();
    }
    bool strictly_decreasing_v() const {
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (!(rows[i].dv < rows[i - 1].dv)) return false;
        return !rows.empty();
    }
};

inline ConvergenceTable vanishing_viscosity_sweep(const Field& u0, const Field& v0, const SystemParams& params,
                                                  const PerturbedRun& base, const rvec& ladder,
                                                  std::size_t workers = 1, bool keep_trajectories = false) {
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (!(ladder[i] < ladder[i - 1])) throw DomainError("vanishing_viscosity_sweep: ladder must strictly decrease");
    std::vector<std::optional<Trajectory>> runs(ladder.size());
    ConvergenceTable table;
    table.rungs.resize(ladder.size());
    parallel_for(ladder.size(), workers, [&](std::size_t i) {
        PerturbedRun r = base;
        r.eps = ladder[i];
        table.rungs[i].eps = ladder[i];
        try {
            runs[i] = solve_perturbed(u0, v0, params, r);
            table.rungs[i].ok = true;
        } catch (const Error& e) {
            table.rungs[i].error = e.what();
        }
    });
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        if (!runs[i - 1] || !runs[i]) continue;
        auto [du, dv] = trajectory_distance(*runs[i - 1], *runs[i]);
        table.rows.push_back({ladder[i - 1], ladder[i], du, dv});
    }
    if (keep_trajectories)
        for (auto& r : runs)
            if (r) table.trajectories.push_back(std::move(*r));
    return table;
}

}  // namespace fbenney
