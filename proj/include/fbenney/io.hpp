#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>

#include "config.hpp"
#include "diagnostics.hpp"

namespace fbenney {

namespace fs = std::filesystem;

// Trajectory JSON-lines, format version 1:
//   line 1   {"record":"header", "format":"fbenney-trajectory", "format_version", "artifact_version",
//             "config_hash", "L", "N", "samples", "coefficients":"fft/N, fftw order"}
//   line 2.. {"record":"sample", "index", "t", "u_re", "u_im", "v_re", "v_im", "diagnostics":{...}}
// u_* and v_* are Fourier coefficients of the stored samples.

inline json provenance(const std::string& hash) {
    return json{{"config_hash", hash}, {"artifact_version", kVersion}};
}

inline json to_json(const DiagnosticsRecord& d) {
    return json{{"t", d.t},
                {"mass", d.mass},
                {"energy", d.energy},
                {"v_l2", d.v_l2},
                {"v_sup", d.v_sup},
                {"energy_balance_residual", d.energy_balance_residual},
                {"v_balance_residual", d.v_balance_residual},
                {"theta", d.theta},
                {"H_bound", d.H_bound},
                {"dtu_hminus1", d.dtu_hminus1},
                {"dtv_hminus1", d.dtv_hminus1}};
}

namespace detail {

inline std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + p.string() + "'");
    return out;
}

inline void split(const cvec& c, json& re, json& im) {
    re = json::array();
    im = json::array();
    for (const auto& z : c) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
}

}  // namespace detail

inline void write_trajectory_jsonl(const fs::path& path, const Trajectory& tr, const TrajectoryDiagnostics& d,
                                   const std::string& hash) {
    auto out = detail::open_out(path);
    json h = provenance(hash);
    h["record"] = "header";
    h["format"] = "fbenney-trajectory";
    h["format_version"] = kTrajectoryFormat;
    h["L"] = tr.grid.L;
    h["N"] = tr.grid.N;
    h["samples"] = tr.size();
    h["coefficients"] = "fft/N, fftw order";
    out << h.dump() << '\n';
    for (std::size_t i = 0; i < tr.size(); ++i) {
        json r;
        r["record"] = "sample";
        r["index"] = i;
        r["t"] = tr.t[i];
        detail::split(forward(tr.u[i].samples), r["u_re"], r["u_im"]);
        detail::split(forward(tr.v[i].samples), r["v_re"], r["v_im"]);
        r["diagnostics"] = to_json(d.records[i]);
        out << r.dump() << '\n';
    }
}

struct StoredTrajectory {
    json header;
    rvec t;
    std::vector<cvec> u_hat, v_hat;
};

inline StoredTrajectory read_trajectory_jsonl(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read '" + path.string() + "'");
    StoredTrajectory st;
    std::string line;
    if (!std::getline(in, line)) throw Error("empty trajectory file");
    st.header = json::parse(line);
    if (st.header.value("format", "") != "fbenney-trajectory" ||
        st.header.value("format_version", 0) != kTrajectoryFormat)
        throw Error("unsupported trajectory format");
    auto join = [](const json& re, const json& im) {
        cvec c(re.size());
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = cplx(re[j].get<double>(), im[j].get<double>());
        return c;
    };
    while (std::getline(in, line)) {
        const json r = json::parse(line);
        st.t.push_back(r.at("t").get<double>());
        st.u_hat.push_back(join(r.at("u_re"), r.at("u_im")));
        st.v_hat.push_back(join(r.at("v_re"), r.at("v_im")));
    }
    return st;
}

inline void write_diagnostics_jsonl(const fs::path& path, const TrajectoryDiagnostics& d, const std::string& hash) {
    auto out = detail::open_out(path);
    json h = provenance(hash);
    h["record"] = "header";
    h["format"] = "fbenney-diagnostics";
    out << h.dump() << '\n';
    for (const auto& r : d.records) {
        json j = to_json(r);
        j["record"] = "diagnostics";
        out << j.dump() << '\n';
    }
}

// Plot data: one row per stored sample.
inline void write_timeseries_csv(const fs::path& path, const TrajectoryDiagnostics& d, const std::string& hash) {
    auto out = detail::open_out(path);
    out << "# config_hash=" << hash << " artifact_version=" << kVersion << '\n';
    out << "t,mass,energy,u_sup,v_sup,v_l2,energy_residual,v_residual,theta,H_bound\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < d.records.size(); ++i) {
        const auto& r = d.records[i];
        out << r.t << ',' << r.mass << ',' << r.energy << ',' << d.norms[i].u_sup << ',' << r.v_sup << ',' << r.v_l2
            << ',' << r.energy_balance_residual << ',' << r.v_balance_residual << ',' << r.theta << ','
            << r.H_bound << '\n';
    }
}

inline void write_json(const fs::path& path, json j, const std::string& hash) {
    j["config_hash"] = hash;
    j["artifact_version"] = kVersion;
    auto out = detail::open_out(path);
    out << j.dump(2) << '\n';
}

inline void write_convergence_csv(const fs::path& path, const ConvergenceTable& t, const std::string& hash) {
    auto out = detail::open_out(path);
    out << "# config_hash=" << hash << " artifact_version=" << kVersion << '\n';
    out << "eps_coarse,eps_fine,du_l2,dv_l2\n" << std::setprecision(17);
    for (const auto& r : t.rows) out << r.eps_coarse << ',' << r.eps_fine << ',' << r.du << ',' << r.dv << '\n';
}

inline void write_config_copy(const fs::path& dir, const RunConfig& c) {
    write_json(dir / "config.json", to_json(c), config_hash(c));
}

}  // namespace fbenney
