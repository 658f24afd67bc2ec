// aircov: ground-to-air coverage planning for terrestrial cellular networks
// SPDX-License-Identifier: MIT
// Copyright (c) 2026 aircov contributors
//
// Swarm solvers for the constrained coverage problem: a dual-swarm search
// over discrete beam patterns plus continuous tilts, a 9-dimensional
// continuous beam search, an exhaustive-search oracle, and a fixed
// down-tilted baseline. Best updates are feasibility gated (cor <= cap).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "aircov/common.hpp"
#include "aircov/coverage.hpp"
#include "aircov/geometry.hpp"
#include "aircov/parallel.hpp"
#include "aircov/rf_model.hpp"
#include "aircov/rng.hpp"

namespace aircov {

struct swarm_config {
    int particle_count = 30;   // N
    int iterations = 100;      // N_iter
    double local_coeff = 1.5;  // c1 (d1 for the discrete swarm)
    double global_coeff = 2.5; // c2 (d2)
    double w_min = 0.4;
    double w_max = 0.9;
    std::uint64_t seed = 1;
    int threads = 1;

    void validate() const {
        if (particle_count < 1) throw validation_error("particle count must be >= 1");
        if (iterations < 1) throw validation_error("iteration count must be >= 1");
        if (!(w_min > 0.0 && w_min <= w_max))
            throw validation_error("inertia bounds need 0 < w_min <= w_max");
        if (!(local_coeff > 0.0 && global_coeff > 0.0))
            throw validation_error("acceleration coefficients must be positive");
    }
};

/// Search box for the continuous dimensions; the pattern menu bounds the
/// discrete ones.
struct search_domain {
    double tilt_min_deg = -90.0;
    double tilt_max_deg = 90.0;
    double hpbw_min_deg = 1.0;
    double hpbw_max_deg = 179.0;

    void validate() const {
        if (!(tilt_min_deg >= -90.0 && tilt_max_deg <= 90.0 && tilt_min_deg <= tilt_max_deg))
            throw validation_error("tilt box must lie inside [-90, 90] degrees");
        if (!(hpbw_min_deg > 0.0 && hpbw_max_deg < 180.0 && hpbw_min_deg <= hpbw_max_deg))
            throw validation_error("beamwidth box must lie inside (0, 180) degrees");
    }
};

struct trace_point {
    int iteration = 0;
    double best_gcr = 0.0;
    double best_cor = 0.0;
};

using convergence_trace = std::vector<trace_point>;

/// Linear inertia schedule: w(1) = w_max, w(N_iter) = w_min; a single
/// iteration degenerates to w_max.
inline double inertia_weight(int l, const swarm_config& cfg) {
    if (l < 1 || l > cfg.iterations) throw validation_error("iteration index out of range");
    if (cfg.iterations == 1) return cfg.w_max;
    return cfg.w_max - (l - 1) * (cfg.w_max - cfg.w_min) /
                           static_cast<double>(cfg.iterations - 1);
}

struct particle {
    std::vector<double> position;
    std::vector<double> velocity;
};

/// V' = w V + c1 F1 (S_L* - B) + c2 F2 (S_G* - B); B' = B + V'. F1, F2 are
/// scalar per update, drawn from rng01; velocity is clamped to half the box
/// width per dimension and the position to the box itself.
template <class Rng01>
void update_continuous(particle& p, const std::vector<double>& local_best,
                       const std::vector<double>& global_best, double w,
                       const swarm_config& cfg, const std::vector<double>& box_lo,
                       const std::vector<double>& box_hi, Rng01&& rng01) {
    const double f1 = rng01();
    const double f2 = rng01();
    for (std::size_t d = 0; d < p.position.size(); ++d) {
        double v = w * p.velocity[d] +
                   cfg.local_coeff * f1 * (local_best[d] - p.position[d]) +
                   cfg.global_coeff * f2 * (global_best[d] - p.position[d]);
        const double v_cap = (box_hi[d] - box_lo[d]) / 2.0;
        v = std::clamp(v, -v_cap, v_cap);
        p.velocity[d] = v;
        p.position[d] = std::clamp(p.position[d] + v, box_lo[d], box_hi[d]);
    }
}

/// Discrete variant over codebook indices: same velocity form with
/// coefficients (g, d1, d2), position floored to an integer and clamped to
/// [1, codebook_size].
template <class Rng01>
void update_discrete(particle& p, const std::vector<double>& local_best,
                     const std::vector<double>& global_best, double g,
                     const swarm_config& cfg, int codebook_size, Rng01&& rng01) {
    const double f1 = rng01();
    const double f2 = rng01();
    const double v_cap = (codebook_size - 1) / 2.0;
    for (std::size_t d = 0; d < p.position.size(); ++d) {
        double v = g * p.velocity[d] +
                   cfg.local_coeff * f1 * (local_best[d] - p.position[d]) +
                   cfg.global_coeff * f2 * (global_best[d] - p.position[d]);
        v = std::clamp(v, -v_cap, v_cap);
        p.velocity[d] = v;
        const double moved = std::floor(p.position[d] + v);
        p.position[d] = std::clamp(moved, 1.0, static_cast<double>(codebook_size));
    }
}

/// Boresight headings: each station aims at the centroid of the prism base.
inline std::vector<double> centroid_azimuths(const prism_airspace& prism,
                                             const std::vector<base_station>& stations) {
    const auto& v = prism.base.vertices;
    const double cx = (v[0].x + v[1].x + v[2].x) / 3.0;
    const double cy = (v[0].y + v[1].y + v[2].y) / 3.0;
    std::vector<double> az;
    az.reserve(stations.size());
    for (const auto& s : stations) {
        double a = rad2deg(std::atan2(cy - s.y, cx - s.x));
        if (a < 0.0) a += 360.0;
        az.push_back(a);
    }
    return az;
}

namespace detail {

struct best_record {
    bool set = false;
    double gcr = -1.0;
    double cor = 0.0;
    std::vector<double> discrete_pos;  // empty for pure-continuous swarms
    std::vector<double> continuous_pos;
};

struct swarm_problem {
    const voxel_grid* grid = nullptr;
    std::vector<base_station> stations;
    rf_params rf;
    std::vector<double> azimuths;
};

inline solution finish(const swarm_problem& prob,
                       const std::vector<std::pair<int, beam_config>>& beams,
                       int threads) {
    // the returned report is a fresh post-hoc evaluation, not search state
    coverage_evaluator ev(*prob.grid, prob.stations, prob.rf, {}, threads);
    solution sol;
    sol.beams = beams;
    sol.report = ev.evaluate(beams);
    sol.feasible = sol.report.cor <= prob.rf.overlap_cap;
    return sol;
}

}  // namespace detail

/// Dual-swarm search: one discrete swarm over per-station pattern ids, one
/// continuous swarm over per-station tilts, paired by particle index and
/// sharing the fitness. Deterministic for a fixed (seed, config) pair.
inline solution slbc_optimize(const prism_airspace& prism, const voxel_grid& grid,
                              const std::vector<base_station>& stations,
                              const beam_pattern_codebook& codebook,
                              const swarm_config& cfg, const rf_params& rf,
                              const search_domain& domain = {},
                              convergence_trace* trace = nullptr) {
    cfg.validate();
    domain.validate();
    codebook.validate();
    if (stations.size() != 3)
        throw validation_error("slbc_optimize needs exactly 3 cooperating stations");

    detail::swarm_problem prob{&grid, stations, rf, centroid_azimuths(prism, stations)};
    coverage_evaluator ev(grid, stations, rf, {}, 1);

    const int n = cfg.particle_count;
    const int k = codebook.size();
    const double idx_width = static_cast<double>(k - 1);
    const double tilt_lo = domain.tilt_min_deg, tilt_hi = domain.tilt_max_deg;

    std::vector<particle> disc(static_cast<std::size_t>(n)), cont(static_cast<std::size_t>(n));
    std::vector<rng> disc_rng, cont_rng;
    disc_rng.reserve(static_cast<std::size_t>(n));
    cont_rng.reserve(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        disc_rng.emplace_back(derive_seed(cfg.seed, static_cast<std::uint64_t>(m), 0));
        cont_rng.emplace_back(derive_seed(cfg.seed, static_cast<std::uint64_t>(m), 1));
        auto& dp = disc[static_cast<std::size_t>(m)];
        auto& cp = cont[static_cast<std::size_t>(m)];
        for (int d = 0; d < 3; ++d)
            dp.position.push_back(static_cast<double>(disc_rng.back().uniform_int(1, k)));
        for (int d = 0; d < 3; ++d)
            dp.velocity.push_back(disc_rng.back().uniform(-0.1 * idx_width, 0.1 * idx_width));
        for (int d = 0; d < 3; ++d)
            cp.position.push_back(cont_rng.back().uniform(tilt_lo, tilt_hi));
        for (int d = 0; d < 3; ++d)
            cp.velocity.push_back(
                cont_rng.back().uniform(-0.1 * (tilt_hi - tilt_lo), 0.1 * (tilt_hi - tilt_lo)));
    }

    auto beams_of = [&](int m) {
        std::vector<std::pair<int, beam_config>> beams;
        const auto& dp = disc[static_cast<std::size_t>(m)];
        const auto& cp = cont[static_cast<std::size_t>(m)];
        for (int i = 0; i < 3; ++i) {
            const auto& pat = codebook.at(static_cast<int>(dp.position[static_cast<std::size_t>(i)]));
            beams.emplace_back(stations[static_cast<std::size_t>(i)].id,
                               beam_config(pat.h_hpbw_deg, pat.v_hpbw_deg,
                                           cp.position[static_cast<std::size_t>(i)],
                                           prob.azimuths[static_cast<std::size_t>(i)]));
        }
        return beams;
    };

    std::vector<detail::best_record> local(static_cast<std::size_t>(n));
    detail::best_record global;
    double lowest_cor = std::numeric_limits<double>::infinity();
    std::vector<objective_value> fitness(static_cast<std::size_t>(n));

    const std::vector<double> tilt_box_lo(3, tilt_lo), tilt_box_hi(3, tilt_hi);

    for (int l = 1; l <= cfg.iterations; ++l) {
        parallel_chunks(static_cast<std::size_t>(n), cfg.threads,
                        [&](std::size_t, std::size_t lo, std::size_t hi) {
                            for (std::size_t m = lo; m < hi; ++m)
                                fitness[m] = ev.objective(beams_of(static_cast<int>(m)));
                        });

        for (int m = 0; m < n; ++m) {
            const auto& f = fitness[static_cast<std::size_t>(m)];
            lowest_cor = std::min(lowest_cor, f.cor);
            auto& lb = local[static_cast<std::size_t>(m)];
            if (f.feasible && (!lb.set || f.gcr > lb.gcr)) {
                lb.set = true;
                lb.gcr = f.gcr;
                lb.cor = f.cor;
                lb.discrete_pos = disc[static_cast<std::size_t>(m)].position;
                lb.continuous_pos = cont[static_cast<std::size_t>(m)].position;
            }
        }
        for (int m = 0; m < n; ++m) {
            const auto& lb = local[static_cast<std::size_t>(m)];
            if (lb.set && (!global.set || lb.gcr > global.gcr)) global = lb;
        }

        if (trace)
            trace->push_back({l, global.set ? global.gcr : 0.0,
                              global.set ? global.cor
                                         : (std::isfinite(lowest_cor) ? lowest_cor : 0.0)});

        if (l == cfg.iterations) break;
        const double w = inertia_weight(l, cfg);
        for (int m = 0; m < n; ++m) {
            auto& dp = disc[static_cast<std::size_t>(m)];
            auto& cp = cont[static_cast<std::size_t>(m)];
            const auto& lb = local[static_cast<std::size_t>(m)];
            const auto& dl = lb.set ? lb.discrete_pos : dp.position;
            const auto& dg = global.set ? global.discrete_pos : dp.position;
            const auto& cl = lb.set ? lb.continuous_pos : cp.position;
            const auto& cg = global.set ? global.continuous_pos : cp.position;
            auto& drng = disc_rng[static_cast<std::size_t>(m)];
            auto& crng = cont_rng[static_cast<std::size_t>(m)];
            update_discrete(dp, dl, dg, w, cfg, k, [&] { return drng.uniform01(); });
            update_continuous(cp, cl, cg, w, cfg, tilt_box_lo, tilt_box_hi,
                              [&] { return crng.uniform01(); });
        }
    }

    if (!global.set)
        throw infeasible_run("no feasible beam assignment found by slbc_optimize",
                             std::isfinite(lowest_cor) ? lowest_cor : 1.0);

    std::vector<std::pair<int, beam_config>> beams;
    for (int i = 0; i < 3; ++i) {
        const auto& pat =
            codebook.at(static_cast<int>(global.discrete_pos[static_cast<std::size_t>(i)]));
        beams.emplace_back(stations[static_cast<std::size_t>(i)].id,
                           beam_config(pat.h_hpbw_deg, pat.v_hpbw_deg,
                                       global.continuous_pos[static_cast<std::size_t>(i)],
                                       prob.azimuths[static_cast<std::size_t>(i)]));
    }
    return detail::finish(prob, beams, cfg.threads);
}

/// Single continuous swarm over the 9-dimensional per-station
/// (h_hpbw, v_hpbw, tilt) space; same schedule and feasibility gating.
inline solution abc_optimize(const prism_airspace& prism, const voxel_grid& grid,
                             const std::vector<base_station>& stations,
                             const swarm_config& cfg, const rf_params& rf,
                             const search_domain& domain = {},
                             convergence_trace* trace = nullptr) {
    cfg.validate();
    domain.validate();
    if (stations.size() != 3)
        throw validation_error("abc_optimize needs exactly 3 cooperating stations");

    detail::swarm_problem prob{&grid, stations, rf, centroid_azimuths(prism, stations)};
    coverage_evaluator ev(grid, stations, rf, {}, 1);

    const int n = cfg.particle_count;
    // dimension order: three h-hpbw, three v-hpbw, three tilts
    std::vector<double> box_lo(9, domain.hpbw_min_deg), box_hi(9, domain.hpbw_max_deg);
    for (int d = 6; d < 9; ++d) {
        box_lo[static_cast<std::size_t>(d)] = domain.tilt_min_deg;
        box_hi[static_cast<std::size_t>(d)] = domain.tilt_max_deg;
    }

    std::vector<particle> swarm(static_cast<std::size_t>(n));
    std::vector<rng> streams;
    streams.reserve(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        streams.emplace_back(derive_seed(cfg.seed, static_cast<std::uint64_t>(m), 2));
        auto& p = swarm[static_cast<std::size_t>(m)];
        for (int d = 0; d < 9; ++d)
            p.position.push_back(streams.back().uniform(box_lo[static_cast<std::size_t>(d)],
                                                        box_hi[static_cast<std::size_t>(d)]));
        for (int d = 0; d < 9; ++d) {
            const double width =
                box_hi[static_cast<std::size_t>(d)] - box_lo[static_cast<std::size_t>(d)];
            p.velocity.push_back(streams.back().uniform(-0.1 * width, 0.1 * width));
        }
    }

    auto beams_of = [&](int m) {
        std::vector<std::pair<int, beam_config>> beams;
        const auto& pos = swarm[static_cast<std::size_t>(m)].position;
        for (std::size_t i = 0; i < 3; ++i)
            beams.emplace_back(stations[i].id,
                               beam_config(pos[i], pos[3 + i], pos[6 + i], prob.azimuths[i]));
        return beams;
    };

    std::vector<detail::best_record> local(static_cast<std::size_t>(n));
    detail::best_record global;
    double lowest_cor = std::numeric_limits<double>::infinity();
    std::vector<objective_value> fitness(static_cast<std::size_t>(n));

    for (int l = 1; l <= cfg.iterations; ++l) {
        parallel_chunks(static_cast<std::size_t>(n), cfg.threads,
                        [&](std::size_t, std::size_t lo, std::size_t hi) {
                            for (std::size_t m = lo; m < hi; ++m)
                                fitness[m] = ev.objective(beams_of(static_cast<int>(m)));
                        });

        for (int m = 0; m < n; ++m) {
            const auto& f = fitness[static_cast<std::size_t>(m)];
            lowest_cor = std::min(lowest_cor, f.cor);
            auto& lb = local[static_cast<std::size_t>(m)];
            if (f.feasible && (!lb.set || f.gcr > lb.gcr)) {
                lb.set = true;
                lb.gcr = f.gcr;
                lb.cor = f.cor;
                lb.continuous_pos = swarm[static_cast<std::size_t>(m)].position;
            }
        }
        for (int m = 0; m < n; ++m) {
            const auto& lb = local[static_cast<std::size_t>(m)];
            if (lb.set && (!global.set || lb.gcr > global.gcr)) global = lb;
        }

        if (trace)
            trace->push_back({l, global.set ? global.gcr : 0.0,
                              global.set ? global.cor
                                         : (std::isfinite(lowest_cor) ? lowest_cor : 0.0)});

        if (l == cfg.iterations) break;
        const double w = inertia_weight(l, cfg);
        for (int m = 0; m < n; ++m) {
            auto& p = swarm[static_cast<std::size_t>(m)];
            const auto& lb = local[static_cast<std::size_t>(m)];
            const auto& pl = lb.set ? lb.continuous_pos : p.position;
            const auto& pg = global.set ? global.continuous_pos : p.position;
            auto& st = streams[static_cast<std::size_t>(m)];
            update_continuous(p, pl, pg, w, cfg, box_lo, box_hi,
                              [&] { return st.uniform01(); });
        }
    }

    if (!global.set)
        throw infeasible_run("no feasible beam assignment found by abc_optimize",
                             std::isfinite(lowest_cor) ? lowest_cor : 1.0);

    std::vector<std::pair<int, beam_config>> beams;
    for (std::size_t i = 0; i < 3; ++i)
        beams.emplace_back(stations[i].id,
                           beam_config(global.continuous_pos[i], global.continuous_pos[3 + i],
                                       global.continuous_pos[6 + i], prob.azimuths[i]));
    return detail::finish(prob, beams, cfg.threads);
}

/// Finite per-station menu for the exhaustive oracle.
struct es_discretization {
    std::vector<int> pattern_ids;    // subset of codebook ids
    std::vector<double> tilts_deg;
    std::size_t budget = 5000000;    // max total combinations

    void validate(const beam_pattern_codebook& cb) const {
        if (pattern_ids.empty() || tilts_deg.empty())
            throw validation_error("exhaustive search needs patterns and tilts");
        for (int id : pattern_ids) cb.at(id);
        for (double t : tilts_deg)
            if (!(t >= -90.0 && t <= 90.0))
                throw validation_error("tilt must lie in [-90, 90] degrees");
    }
};

/// Exact maximizer of the coverage ratio over the feasible grid of
/// (pattern, tilt) combinations; ties break to the earliest combination in
/// station-major, pattern-major, tilt-minor enumeration order.
inline solution exhaustive_search(const prism_airspace& prism, const voxel_grid& grid,
                                  const std::vector<base_station>& stations,
                                  const beam_pattern_codebook& codebook,
                                  const es_discretization& disc, const rf_params& rf,
                                  int threads = 1) {
    codebook.validate();
    disc.validate(codebook);
    if (stations.empty()) throw validation_error("exhaustive_search needs stations");

    const std::size_t options = disc.pattern_ids.size() * disc.tilts_deg.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < stations.size(); ++i) {
        if (total > disc.budget / options + 1)
            throw budget_exceeded("combination count exceeds the configured budget");
        total *= options;
    }
    if (total > disc.budget)
        throw budget_exceeded("combination count exceeds the configured budget");

    const auto azimuths = centroid_azimuths(prism, stations);
    coverage_evaluator ev(grid, stations, rf, {}, 1);

    auto beams_of = [&](std::size_t combo) {
        std::vector<std::pair<int, beam_config>> beams;
        std::size_t rest = combo;
        for (std::size_t i = 0; i < stations.size(); ++i) {
            const std::size_t opt = rest % options;
            rest /= options;
            const int pat_id = disc.pattern_ids[opt / disc.tilts_deg.size()];
            const double tilt = disc.tilts_deg[opt % disc.tilts_deg.size()];
            const auto& pat = codebook.at(pat_id);
            beams.emplace_back(stations[i].id,
                               beam_config(pat.h_hpbw_deg, pat.v_hpbw_deg, tilt, azimuths[i]));
        }
        return beams;
    };

    struct chunk_best {
        bool set = false;
        double gcr = -1.0;
        std::size_t combo = 0;
        double lowest_cor = std::numeric_limits<double>::infinity();
    };
    const int workers = threads < 1 ? 1 : threads;
    std::vector<chunk_best> bests(static_cast<std::size_t>(workers));

    parallel_chunks(total, workers, [&](std::size_t ci, std::size_t lo, std::size_t hi) {
        auto& cb = bests[ci];
        for (std::size_t c = lo; c < hi; ++c) {
            const auto f = ev.objective(beams_of(c));
            cb.lowest_cor = std::min(cb.lowest_cor, f.cor);
            if (f.feasible && (!cb.set || f.gcr > cb.gcr)) {
                cb.set = true;
                cb.gcr = f.gcr;
                cb.combo = c;
            }
        }
    });

    chunk_best overall;
    for (const auto& cb : bests) {
        overall.lowest_cor = std::min(overall.lowest_cor, cb.lowest_cor);
        // chunks cover ascending ranges, so first strict improvement wins ties
        if (cb.set && (!overall.set || cb.gcr > overall.gcr)) {
            overall.set = true;
            overall.gcr = cb.gcr;
            overall.combo = cb.combo;
        }
    }
    if (!overall.set)
        throw infeasible_run("no feasible combination in the exhaustive grid",
                             std::isfinite(overall.lowest_cor) ? overall.lowest_cor : 1.0);

    detail::swarm_problem prob{&grid, stations, rf, azimuths};
    return detail::finish(prob, beams_of(overall.combo), threads);
}

struct baseline_config {
    int pattern_id = 2;       // mid-width menu entry
    double tilt_deg = -3.0;   // conventional terrestrial down-tilt
};

/// Evaluates the fixed down-tilted configuration; no search.
inline solution downtilt_baseline(const prism_airspace& prism, const voxel_grid& grid,
                                  const std::vector<base_station>& stations,
                                  const beam_pattern_codebook& codebook,
                                  const baseline_config& base, const rf_params& rf,
                                  std::vector<std::pair<double, double>> layers = {},
                                  int threads = 1) {
    codebook.validate();
    if (stations.empty()) throw validation_error("downtilt_baseline needs stations");
    const auto& pat = codebook.at(base.pattern_id);
    const auto azimuths = centroid_azimuths(prism, stations);

    std::vector<std::pair<int, beam_config>> beams;
    for (std::size_t i = 0; i < stations.size(); ++i)
        beams.emplace_back(stations[i].id, beam_config(pat.h_hpbw_deg, pat.v_hpbw_deg,
                                                       base.tilt_deg, azimuths[i]));
    coverage_evaluator ev(grid, stations, rf, std::move(layers), threads);
    solution sol;
    sol.beams = beams;
    sol.report = ev.evaluate(beams);
    sol.feasible = sol.report.cor <= rf.overlap_cap;
    return sol;
}

}  // namespace aircov
