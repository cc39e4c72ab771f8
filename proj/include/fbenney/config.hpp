#pragma once

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>

#include "solver.hpp"

namespace fbenney {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kTrajectoryFormat = 1;

using json = nlohmann::json;

// Initial profile  A * shape((x - c) / w) * exp(i k x).
struct ProfileSpec {
    std::string kind = "gaussian";  // gaussian, sech, zero, plane_wave
    double amplitude = 1.0;
    double center = 0.0;
    double width = 1.0;
    double wavenumber = 0.0;  // for plane_wave this is the integer mode index j
};

struct RunConfig {
    double L = 20.0;
    std::size_t N = 512;
    SystemParams system;
    std::string g_kind = "tanh_blend";
    double g_m = 0.0;
    double g_M = 1.0;
    ProfileSpec u0{"gaussian", 0.5, -6.0, 1.0, 0.0};
    ProfileSpec v0{"gaussian", 1.0, 6.0, 1.0, 0.0};
    PerturbedRun run;
    rvec eps_ladder;
    double mass_drift_tol = 1e-8;
    double max_principle_tol = 1e-8;
    rvec alpha_grid;
    rvec amplitude_scales;
    std::uint64_t seed = 12345;
    std::size_t workers = 1;
    std::string output = "out";

    GridSpec grid() const { return make_grid(L, N); }
};

namespace detail {

template <class T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

inline ProfileSpec read_profile(const json& j, ProfileSpec p) {
    read_opt(j, "kind", p.kind);
    read_opt(j, "amplitude", p.amplitude);
    read_opt(j, "center", p.center);
    read_opt(j, "width", p.width);
    read_opt(j, "wavenumber", p.wavenumber);
    return p;
}

inline json write_profile(const ProfileSpec& p) {
    return json{{"kind", p.kind}, {"amplitude", p.amplitude}, {"center", p.center}, {"width", p.width},
                {"wavenumber", p.wavenumber}};
}

}  // namespace detail

inline json to_json(const RunConfig& c) {
    json j;
    j["grid"] = {{"L", c.L}, {"N", c.N}};
    j["system"] = {{"alpha", c.system.alpha},
                   {"beta", c.system.beta},
                   {"gamma", c.system.gamma},
                   {"s", c.system.s},
                   {"g", {{"kind", c.g_kind}, {"m", c.g_m}, {"M", c.g_M}}}};
    j["initial"] = {{"u", detail::write_profile(c.u0)}, {"v", detail::write_profile(c.v0)}};
    j["perturbation"] = {{"eps", c.run.eps}, {"a", c.run.a}, {"b", c.run.b}, {"ladder", c.eps_ladder}};
    j["time"] = {{"T", c.run.T},
                 {"dt", c.run.dt},
                 {"sample_every", c.run.sample_every},
                 {"picard_tol", c.run.picard_tol},
                 {"picard_max_iter", c.run.picard_max_iter},
                 {"blowup_factor", c.run.blowup_factor},
                 {"max_halvings", c.run.max_halvings}};
    j["diagnostics"] = {{"mass_drift_tol", c.mass_drift_tol}, {"max_principle_tol", c.max_principle_tol}};
    j["sweep"] = {{"alpha_grid", c.alpha_grid}, {"amplitude_scales", c.amplitude_scales}};
    j["seed"] = c.seed;
    j["workers"] = c.workers;
    j["output"] = c.output;
    return j;
}

inline void validate(RunConfig& c) {
    try {
        (void)c.grid();
        c.system.g = make_nonlinearity(c.g_kind, c.g_m, c.g_M);
        c.system.validate();
        c.run.validate();
        (void)c.run.steps();
        for (std::size_t i = 1; i < c.eps_ladder.size(); ++i)
            if (!(c.eps_ladder[i] < c.eps_ladder[i - 1])) throw DomainError("eps ladder must strictly decrease");
        for (double e : c.eps_ladder)
            if (!(e > 0.0 && e < 1.0)) throw DomainError("eps ladder entries must lie in (0,1)");
        for (const auto* p : {&c.u0, &c.v0}) {
            if (p->kind != "gaussian" && p->kind != "sech" && p->kind != "zero" && p->kind != "plane_wave")
                throw DomainError("unknown initial profile '" + p->kind + "'");
            if (!(p->width > 0.0)) throw DomainError("initial profile width must be positive");
        }
        if (c.v0.kind == "plane_wave" && c.v0.wavenumber != 0.0)
            throw DomainError("the long-wave datum must be real; use a real profile");
        if (!(c.mass_drift_tol > 0.0) || !(c.max_principle_tol >= 0.0))
            throw DomainError("diagnostic thresholds must be positive");
        if (c.workers == 0) throw DomainError("workers must be >= 1");
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
}

inline RunConfig from_json(const json& j) {
    RunConfig c;
    try {
        if (j.contains("grid")) {
            detail::read_opt(j["grid"], "L", c.L);
            detail::read_opt(j["grid"], "N", c.N);
        }
        if (j.contains("system")) {
            const json& s = j["system"];
            detail::read_opt(s, "alpha", c.system.alpha);
            detail::read_opt(s, "beta", c.system.beta);
            detail::read_opt(s, "gamma", c.system.gamma);
            detail::read_opt(s, "s", c.system.s);
            if (s.contains("g")) {
                detail::read_opt(s["g"], "kind", c.g_kind);
                detail::read_opt(s["g"], "m", c.g_m);
                detail::read_opt(s["g"], "M", c.g_M);
            }
        }
        if (j.contains("initial")) {
            if (j["initial"].contains("u")) c.u0 = detail::read_profile(j["initial"]["u"], c.u0);
            if (j["initial"].contains("v")) c.v0 = detail::read_profile(j["initial"]["v"], c.v0);
        }
        if (j.contains("perturbation")) {
            const json& p = j["perturbation"];
            detail::read_opt(p, "eps", c.run.eps);
            detail::read_opt(p, "a", c.run.a);
            detail::read_opt(p, "b", c.run.b);
            detail::read_opt(p, "ladder", c.eps_ladder);
        }
        if (j.contains("time")) {
            const json& t = j["time"];
            detail::read_opt(t, "T", c.run.T);
            detail::read_opt(t, "dt", c.run.dt);
            detail::read_opt(t, "sample_every", c.run.sample_every);
            detail::read_opt(t, "picard_tol", c.run.picard_tol);
            detail::read_opt(t, "picard_max_iter", c.run.picard_max_iter);
            detail::read_opt(t, "blowup_factor", c.run.blowup_factor);
            detail::read_opt(t, "max_halvings", c.run.max_halvings);
        }
        if (j.contains("diagnostics")) {
            detail::read_opt(j["diagnostics"], "mass_drift_tol", c.mass_drift_tol);
            detail::read_opt(j["diagnostics"], "max_principle_tol", c.max_principle_tol);
        }
        if (j.contains("sweep")) {
            detail::read_opt(j["sweep"], "alpha_grid", c.alpha_grid);
            detail::read_opt(j["sweep"], "amplitude_scales", c.amplitude_scales);
        }
        detail::read_opt(j, "seed", c.seed);
        detail::read_opt(j, "workers", c.workers);
        detail::read_opt(j, "output", c.output);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    validate(c);
    return c;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::exception& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j);
}

// 64-bit FNV-1a of the canonical serialization, as 16 hex digits. Output path
// and worker count do not change results and are left out.
inline std::string config_hash(const RunConfig& c) {
    json j = to_json(c);
    j.erase("output");
    j.erase("workers");
    const std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

inline Field build_profile(const GridSpec& g, const ProfileSpec& p, Flavor flavor) {
    if (p.kind == "zero") return Field(g, flavor);
    if (p.kind == "plane_wave") {
        const double k = kPi * p.wavenumber / g.L;
        return sample(g, [&](double x) { return p.amplitude * std::polar(1.0, k * x); }, flavor);
    }
    const bool gauss = p.kind == "gaussian";
    const double k = p.wavenumber;
    return sample(
        g,
        [&](double x) {
            const double z = (x - p.center) / p.width;
            const double shape = gauss ? std::exp(-z * z) : 1.0 / std::cosh(z);
            return p.amplitude * shape * (k != 0.0 ? std::polar(1.0, k * x) : cplx(1.0, 0.0));
        },
        flavor);
}

inline std::pair<Field, Field> initial_data(const RunConfig& c) {
    const GridSpec g = c.grid();
    return {build_profile(g, c.u0, Flavor::complex_shortwave), build_profile(g, c.v0, Flavor::real_longwave)};
}

// The bundled canonical configuration.
inline RunConfig canonical_config() {
    RunConfig c;
    c.system.alpha = 0.1;
    c.system.beta = 0.1;
    c.system.s = 0.75;
    c.run.sample_every = 10;
    c.eps_ladder = {0.2, 0.1, 0.05, 0.025};
    c.alpha_grid = {0.0, 0.05, 0.1, 0.5, 1.0, 2.0};
    c.amplitude_scales = {0.5, 1.0, 2.0, 4.0};
    validate(c);
    return c;
}

}  // namespace fbenney
