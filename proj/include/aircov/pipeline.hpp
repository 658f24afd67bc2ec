// aircov: ground-to-air coverage planning for terrestrial cellular networks
//
// SPDX-License-Identifier: MIT
// Copyright (c) 2026 aircov contributors

#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "aircov/common.hpp"
#include "aircov/coverage.hpp"
#include "aircov/geometry.hpp"
#include "aircov/optimizer.hpp"
#include "aircov/rng.hpp"
#include "aircov/scenario.hpp"

namespace aircov {

inline constexpr const char* aircov_version = "0.1.0";

/// Outcome for one cooperation-set prism. Failed triangles keep their error
/// text and leave the rest of the run intact. `seconds` is wall clock and is
/// excluded from the canonical manifest serialization.
struct triangle_run {
    std::string tbs_set;  // "X2X3X4": the sorted station ids
    std::array<int, 3> vertex_ids{};
    triangle_metrics_t metrics{};
    std::size_t n_voxels = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    solution sol;             // valid when ok
    convergence_trace trace;  // swarm algorithms only
    double seconds = 0.0;
};

/// Union-of-all-beams diagnostic over every optimized prism: the same grids,
/// but each voxel sees power from every station's beam, including the ones
/// assigned to adjacent triangles.
struct network_summary {
    std::size_t n_total = 0;
    std::size_t n_covered = 0;
    std::size_t n_overlapped = 0;
    double gcr = 0.0;
    double cor = 0.0;
};

struct run_manifest {
    std::string toolkit_version = aircov_version;
    std::string scenario_name;
    std::string scenario_hash;
    algorithm_kind algorithm = algorithm_kind::slbc;
    triangulation_mode triangulation = triangulation_mode::delaunay;
    std::uint64_t seed = 0;
    std::vector<triangle_run> triangles;  // ordered by sorted id triple
    std::size_t ok_count = 0;
    double network_gcr = 0.0;  // area-weighted average over ok triangles
    network_summary whole_network;
    double total_seconds = 0.0;
};

namespace detail {

inline std::string tbs_set_name(const std::array<int, 3>& ids) {
    std::string s;
    for (int id : ids) s += "X" + std::to_string(id);
    return s;
}

inline std::vector<base_station> stations_for(const std::vector<base_station>& all,
                                              const std::array<int, 3>& ids) {
    std::vector<base_station> out;
    for (int id : ids)
        for (const auto& s : all)
            if (s.id == id) {
                out.push_back(s);
                break;
            }
    if (out.size() != 3) throw validation_error("triangle references an unknown station id");
    return out;
}

/// Contiguous reporting bands of `band` metres; the top band is clipped to
/// h_max and absorbs the upper boundary.
inline std::vector<std::pair<double, double>> reporting_bands(double h_max, double band) {
    std::vector<std::pair<double, double>> out;
    for (double lo = 0.0; lo < h_max; lo += band)
        out.push_back({lo, std::min(lo + band, h_max)});
    return out;
}

}  // namespace detail

/// Optimizes one triangle: builds the prism and grid, runs the requested
/// algorithm, then re-evaluates the winner with the reporting bands attached
/// so the manifest carries per-layer statistics.
inline triangle_run run_triangle(const scenario& sc, const triangle_region& tri,
                                 algorithm_kind alg, std::uint64_t tri_seed) {
    triangle_run tr;
    tr.tbs_set = detail::tbs_set_name(tri.vertex_ids);
    tr.vertex_ids = tri.vertex_ids;
    tr.seed = tri_seed;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        tr.metrics = triangle_metrics(tri);
        const auto prism = make_prism(tri, sc.h_max, sc.layer_bounds);
        const auto grid = build_voxel_grid(prism, sc.voxel_resolution);
        tr.n_voxels = grid.size();
        const auto st = detail::stations_for(sc.stations, tri.vertex_ids);
        swarm_config cfg = sc.swarm;
        cfg.seed = tri_seed;
        solution sol;
        switch (alg) {
            case algorithm_kind::slbc:
                sol = slbc_optimize(prism, grid, st, sc.codebook, cfg, sc.rf, sc.domain,
                                    &tr.trace);
                break;
            case algorithm_kind::abc:
                sol = abc_optimize(prism, grid, st, cfg, sc.rf, sc.domain, &tr.trace);
                break;
            case algorithm_kind::es:
                sol = exhaustive_search(prism, grid, st, sc.codebook, resolve_es(sc), sc.rf,
                                        cfg.threads);
                break;
            case algorithm_kind::downtilt:
                sol = downtilt_baseline(prism, grid, st, sc.codebook, sc.baseline, sc.rf, {},
                                        cfg.threads);
                break;
        }
        const auto bands = detail::reporting_bands(sc.h_max, sc.report_band_m);
        coverage_evaluator ev(grid, st, sc.rf, bands, cfg.threads);
        sol.report = ev.evaluate(sol.beams);
        sol.feasible = sol.report.cor <= sc.rf.overlap_cap;
        tr.sol = std::move(sol);
        tr.ok = true;
    } catch (const error& e) {
        tr.error = e.what();
    }
    tr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return tr;
}

/// Runs the full planning pipeline: triangulate, optimize every triangle
/// independently (per-triangle seeds derived from the master seed), then
/// aggregate the area-weighted network GCR and the union-of-beams overlap
/// diagnostic. Per-triangle failures are recorded, not fatal.
inline run_manifest run_network(const scenario& sc, algorithm_kind alg,
                                triangulation_mode mode) {
    sc.validate();
    const auto t0 = std::chrono::steady_clock::now();
    run_manifest mf;
    mf.scenario_name = sc.name;
    mf.scenario_hash = scenario_hash_hex(sc);
    mf.algorithm = alg;
    mf.triangulation = mode;
    mf.seed = sc.swarm.seed;

    const auto tris = mode == triangulation_mode::delaunay
                          ? delaunay_triangulate(sc.stations)
                          : random_triangulate(sc.stations, sc.swarm.seed);
    for (std::size_t i = 0; i < tris.size(); ++i)
        mf.triangles.push_back(
            run_triangle(sc, tris[i], alg, derive_seed(sc.swarm.seed, i)));

    std::vector<network_entry> entries;
    for (const auto& tr : mf.triangles)
        if (tr.ok) {
            ++mf.ok_count;
            entries.push_back({tr.metrics.area, tr.sol.report.gcr});
        }
    if (!entries.empty()) mf.network_gcr = average_gcr(entries);

    // whole-network diagnostic: every optimized beam against every prism
    if (mf.ok_count > 0 && sc.stations.size() <= 64) {
        std::vector<std::pair<int, beam_config>> all_beams;
        for (const auto& tr : mf.triangles)
            if (tr.ok)
                all_beams.insert(all_beams.end(), tr.sol.beams.begin(), tr.sol.beams.end());
        for (std::size_t i = 0; i < tris.size(); ++i) {
            if (!mf.triangles[i].ok) continue;
            const auto prism = make_prism(tris[i], sc.h_max, sc.layer_bounds);
            const auto grid = build_voxel_grid(prism, sc.voxel_resolution);
            coverage_evaluator ev(grid, sc.stations, sc.rf, {}, sc.swarm.threads);
            const auto rep = ev.evaluate(all_beams);
            mf.whole_network.n_total += rep.n_total;
            mf.whole_network.n_covered += rep.n_covered;
            mf.whole_network.n_overlapped += rep.n_overlapped;
        }
        if (mf.whole_network.n_total > 0) {
            mf.whole_network.gcr = static_cast<double>(mf.whole_network.n_covered) /
                                   static_cast<double>(mf.whole_network.n_total);
            mf.whole_network.cor = static_cast<double>(mf.whole_network.n_overlapped) /
                                   static_cast<double>(mf.whole_network.n_total);
        }
    }
    mf.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return mf;
}

inline run_manifest run_network(const scenario& sc) {
    return run_network(sc, sc.algorithm, sc.triangulation);
}

}  // namespace aircov
