// aircov: ground-to-air coverage planning for terrestrial cellular networks
//
// SPDX-License-Identifier: MIT
// Copyright (c) 2026 aircov contributors

#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "aircov/pipeline.hpp"
#include "aircov/prism_overlap.hpp"
#include "aircov/scenario.hpp"

namespace aircov {

/// One row of the prism-structure overlap table: analytic ratio next to its
/// Monte-Carlo check.
struct zeta_row {
    std::string structure;  // "triangular" / "square" / "hexagonal"
    double r = 0.0;
    double h = 0.0;
    double zeta_analytic = 0.0;
    double zeta_mc = 0.0;
    double mc_std_error = 0.0;
    std::size_t n_samples = 0;
};

inline const char* to_string(prism_kind k) {
    switch (k) {
        case prism_kind::tp: return "triangular";
        case prism_kind::sp: return "square";
        case prism_kind::hp: return "hexagonal";
    }
    return "triangular";
}

/// Analytic + Monte-Carlo overlap ratios for all three structures at each
/// r/H ratio (H fixed at 100 m).
inline std::vector<zeta_row> compute_zeta_table(const std::vector<double>& r_over_h,
                                                std::size_t n_samples, std::uint64_t seed,
                                                int partitions = 8, int threads = 1) {
    std::vector<zeta_row> rows;
    const double h = 100.0;
    int idx = 0;
    for (double ratio : r_over_h)
        for (prism_kind k : {prism_kind::tp, prism_kind::sp, prism_kind::hp}) {
            prism_structure ps{k, ratio * h, h};
            zeta_row row;
            row.structure = to_string(k);
            row.r = ps.r;
            row.h = ps.h;
            row.zeta_analytic = analytic_overlap(ps).zeta;
            const auto mc = monte_carlo_overlap(ps, n_samples, derive_seed(seed, idx++),
                                                partitions, threads);
            row.zeta_mc = mc.zeta;
            row.mc_std_error = mc.std_error;
            row.n_samples = mc.sample_count;
            rows.push_back(row);
        }
    return rows;
}

namespace detail {

/// Shortest exact decimal for a double; keeps CSV re-parses bit-faithful.
inline std::string fmt(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path.string());
    return out;
}

}  // namespace detail

/// Canonical manifest serialization. Deliberately carries no wall-clock
/// fields: equal runs must dump to equal bytes.
inline json manifest_to_json(const run_manifest& mf) {
    json j;
    j["toolkit"] = "aircov";
    j["version"] = mf.toolkit_version;
    j["scenario"] = mf.scenario_name;
    j["scenario_hash"] = mf.scenario_hash;
    j["algorithm"] = to_string(mf.algorithm);
    j["triangulation"] = to_string(mf.triangulation);
    j["seed"] = mf.seed;
    json net;
    net["triangles"] = mf.triangles.size();
    net["optimized"] = mf.ok_count;
    net["average_gcr"] = mf.network_gcr;
    j["network"] = std::move(net);
    json wn;
    wn["n_total"] = mf.whole_network.n_total;
    wn["n_covered"] = mf.whole_network.n_covered;
    wn["n_overlapped"] = mf.whole_network.n_overlapped;
    wn["gcr"] = mf.whole_network.gcr;
    wn["cor"] = mf.whole_network.cor;
    j["whole_network"] = std::move(wn);
    json tris = json::array();
    for (const auto& tr : mf.triangles) {
        json jt;
        jt["tbs_set"] = tr.tbs_set;
        jt["vertex_ids"] = tr.vertex_ids;
        jt["angles_deg"] = tr.metrics.angles_deg;
        jt["area_m2"] = tr.metrics.area;
        jt["longest_edge_m"] = tr.metrics.longest_edge;
        jt["n_voxels"] = tr.n_voxels;
        jt["seed"] = tr.seed;
        jt["status"] = tr.ok ? "ok" : "error";
        if (!tr.ok) {
            jt["error"] = tr.error;
        } else {
            const auto& rep = tr.sol.report;
            jt["gcr"] = rep.gcr;
            jt["cor"] = rep.cor;
            jt["n_covered"] = rep.n_covered;
            jt["n_overlapped"] = rep.n_overlapped;
            jt["feasible"] = tr.sol.feasible;
            json beams = json::array();
            for (const auto& [sid, b] : tr.sol.beams) {
                json jb;
                jb["station_id"] = sid;
                jb["h_hpbw_deg"] = b.h_hpbw_deg;
                jb["v_hpbw_deg"] = b.v_hpbw_deg;
                jb["tilt_deg"] = b.tilt_deg;
                jb["azimuth_deg"] = b.azimuth_deg;
                beams.push_back(std::move(jb));
            }
            jt["beams"] = std::move(beams);
            json layers = json::array();
            for (const auto& ls : rep.per_layer) {
                json jl;
                jl["z_low_m"] = ls.z_low;
                jl["z_high_m"] = ls.z_high;
                jl["n_total"] = ls.n_total;
                jl["n_covered"] = ls.n_covered;
                jl["gcr"] = ls.gcr;
                layers.push_back(std::move(jl));
            }
            jt["layers"] = std::move(layers);
        }
        tris.push_back(std::move(jt));
    }
    j["triangles"] = std::move(tris);
    return j;
}

/// Per-triangle summary table: cooperation set, inner angles, area, GCR.
inline void write_triangles_csv(const run_manifest& mf, const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    out << "tbs_set,a1_deg,a2_deg,a3_deg,area_km2,gcr\n";
    for (const auto& tr : mf.triangles) {
        if (!tr.ok) continue;
        out << tr.tbs_set;
        for (double a : tr.metrics.angles_deg) out << "," << detail::fmt(a);
        out << "," << detail::fmt(tr.metrics.area / 1e6) << ","
            << detail::fmt(tr.sol.report.gcr) << "\n";
    }
}

/// Per-layer GCR rows for every optimized triangle.
inline void write_layers_csv(const run_manifest& mf, const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    out << "tbs_set,z_low_m,z_high_m,n_total,n_covered,gcr\n";
    for (const auto& tr : mf.triangles) {
        if (!tr.ok) continue;
        for (const auto& ls : tr.sol.report.per_layer)
            out << tr.tbs_set << "," << detail::fmt(ls.z_low) << "," << detail::fmt(ls.z_high)
                << "," << ls.n_total << "," << ls.n_covered << "," << detail::fmt(ls.gcr)
                << "\n";
    }
}

inline void write_convergence_csv(const triangle_run& tr, const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    out << "iteration,best_gcr,best_cor\n";
    for (const auto& p : tr.trace)
        out << p.iteration << "," << detail::fmt(p.best_gcr) << "," << detail::fmt(p.best_cor)
            << "\n";
}

inline void write_zeta_table_csv(const std::vector<zeta_row>& rows,
                                 const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    out << "structure,r_m,h_m,r_over_h,zeta_analytic,zeta_mc,mc_std_error,n_samples\n";
    for (const auto& z : rows)
        out << z.structure << "," << detail::fmt(z.r) << "," << detail::fmt(z.h) << ","
            << detail::fmt(z.r / z.h) << "," << detail::fmt(z.zeta_analytic) << ","
            << detail::fmt(z.zeta_mc) << "," << detail::fmt(z.mc_std_error) << ","
            << z.n_samples << "\n";
}

/// Wall-clock record, kept out of manifest.json so manifests stay
/// byte-comparable across runs.
inline void write_timings_json(const run_manifest& mf, const std::filesystem::path& path) {
    auto out = detail::open_out(path);
    json j;
    j["total_seconds"] = mf.total_seconds;
    json tris = json::array();
    for (const auto& tr : mf.triangles) {
        json jt;
        jt["tbs_set"] = tr.tbs_set;
        jt["seconds"] = tr.seconds;
        tris.push_back(std::move(jt));
    }
    j["triangles"] = std::move(tris);
    out << j.dump(2) << "\n";
}

/// Writes the full report bundle into `out_dir` (created if needed):
/// manifest.json, timings.json, triangles.csv, layers.csv, zeta_table.csv,
/// and one convergence CSV per triangle that recorded a trace. An empty
/// manifest yields headers-only CSVs.
inline void export_reports(const run_manifest& mf, const std::filesystem::path& out_dir,
                           const std::vector<zeta_row>& zeta = {}) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec && !std::filesystem::is_directory(out_dir))
        throw io_error("cannot create output directory " + out_dir.string());
    {
        auto out = detail::open_out(out_dir / "manifest.json");
        out << manifest_to_json(mf).dump(2) << "\n";
    }
    write_timings_json(mf, out_dir / "timings.json");
    write_triangles_csv(mf, out_dir / "triangles.csv");
    write_layers_csv(mf, out_dir / "layers.csv");
    write_zeta_table_csv(zeta, out_dir / "zeta_table.csv");
    for (const auto& tr : mf.triangles)
        if (!tr.trace.empty())
            write_convergence_csv(tr, out_dir / ("convergence_" + tr.tbs_set + ".csv"));
}

}  // namespace aircov
