// aircov: ground-to-air coverage planning for terrestrial cellular networks
// SPDX-License-Identifier: MIT
// Copyright (c) 2026 aircov contributors
//
// Voxel-wise coverage/overlap indicators, GCR/COR metrics, the constrained
// coverage objective, and network-level GCR aggregation.

#pragma once

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "aircov/common.hpp"
#include "aircov/geometry.hpp"
#include "aircov/parallel.hpp"
#include "aircov/rf_model.hpp"

namespace aircov {

/// RF-side scenario constants shared by every coverage evaluation.
struct rf_params {
    double tx_power_dbm = 46.0;
    double tau_dbm = -90.0;   // coverage threshold
    double overlap_cap = 1.0; // T in the overlap constraint 0 <= cor <= T
    channel_model channel = rma_av_channel();
};

/// One station carrying one beam; a beam set may repeat a station id when a
/// station serves several cooperation sets at once.
struct station_beam {
    base_station station;
    beam_config beam;
};

using beam_set = std::vector<station_beam>;

struct layer_stat {
    double z_low = 0.0;
    double z_high = 0.0;
    std::size_t n_total = 0;
    std::size_t n_covered = 0;
    double gcr = 0.0;
};

struct coverage_report {
    std::size_t n_total = 0;
    std::size_t n_covered = 0;
    std::size_t n_overlapped = 0;
    double gcr = 0.0;
    double cor = 0.0;
    std::vector<layer_stat> per_layer;
};

/// Beam map plus its evaluation; feasible <=> report.cor <= overlap cap.
struct solution {
    std::vector<std::pair<int, beam_config>> beams;  // station id -> beam
    coverage_report report;
    bool feasible = false;
};

struct objective_value {
    double gcr = 0.0;
    double cor = 0.0;
    bool feasible = false;
};

// ---------------------------------------------------------------------------
// brute-force per-voxel indicators (the oracle path)
// ---------------------------------------------------------------------------

inline bool is_covered(const vec3& voxel, const beam_set& beams, const rf_params& rf) {
    for (const auto& sb : beams)
        if (received_power_dbm(sb.station, sb.beam, voxel, rf.tx_power_dbm, rf.channel) >=
            rf.tau_dbm)
            return true;
    return false;
}

inline bool is_overlapped(const vec3& voxel, const beam_set& beams, const rf_params& rf) {
    // overlap requires >= 2 distinct stations, not two beams of one station
    std::vector<int> covering;
    for (const auto& sb : beams) {
        if (received_power_dbm(sb.station, sb.beam, voxel, rf.tx_power_dbm, rf.channel) <
            rf.tau_dbm)
            continue;
        bool seen = false;
        for (int id : covering) seen = seen || id == sb.station.id;
        if (!seen) covering.push_back(sb.station.id);
        if (covering.size() >= 2) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// cached evaluator (the production path)
// ---------------------------------------------------------------------------

/// Precomputes per-(station, voxel) path loss and ray angles once, then
/// evaluates arbitrary beam assignments with the exact arithmetic of
/// received_power_dbm. Supports at most 64 distinct stations (the per-voxel
/// covering-station set is a bitmask).
class coverage_evaluator {
  public:
    coverage_evaluator(const voxel_grid& grid, std::vector<base_station> stations,
                       rf_params rf, std::vector<std::pair<double, double>> layers = {},
                       int threads = 1)
        : grid_(&grid),
          stations_(std::move(stations)),
          rf_(std::move(rf)),
          layers_(std::move(layers)),
          threads_(threads < 1 ? 1 : threads) {
        if (grid_->size() == 0) throw empty_grid("cannot evaluate an empty voxel grid");
        if (stations_.empty()) throw validation_error("evaluator needs at least one station");
        if (stations_.size() > 64) throw validation_error("evaluator supports at most 64 stations");
        rf_.channel.validate();

        const std::size_t n = grid_->size();
        links_.resize(stations_.size());
        for (std::size_t si = 0; si < stations_.size(); ++si) {
            auto& row = links_[si];
            row.resize(n);
            const auto& s = stations_[si];
            parallel_chunks(n, threads_, [&](std::size_t, std::size_t lo, std::size_t hi) {
                for (std::size_t k = lo; k < hi; ++k) {
                    const auto& v = grid_->centers[k];
                    const double dx = v.x - s.x, dy = v.y - s.y, dz = v.z - s.z;
                    const double d_2d = std::hypot(dx, dy);
                    if (d_2d == 0.0 && dz == 0.0)
                        throw singular_geometry("voxel center coincides with a station");
                    row[k] = {path_loss_db(rf_.channel, d_2d, std::abs(dz)),
                              std::atan2(dy, dx), std::atan2(dz, d_2d)};
                }
            });
        }

        if (!layers_.empty()) {
            layer_of_.resize(n);
            for (std::size_t k = 0; k < n; ++k) layer_of_[k] = find_layer(grid_->centers[k].z);
        }
    }

    const std::vector<base_station>& stations() const { return stations_; }
    const rf_params& rf() const { return rf_; }

    int station_index(int station_id) const {
        for (std::size_t i = 0; i < stations_.size(); ++i)
            if (stations_[i].id == station_id) return static_cast<int>(i);
        throw validation_error("beam references a station unknown to the evaluator");
    }

    coverage_report evaluate(const std::vector<std::pair<int, beam_config>>& beams) const {
        struct prepared {
            std::size_t station = 0;
            double gain_main_dbi = 0.0;
            double gain_side_dbi = 0.0;
            double az_rad = 0.0;
            double tilt_rad = 0.0;
            double psi_rad = 0.0;
            double phi_rad = 0.0;
        };
        std::vector<prepared> prep;
        prep.reserve(beams.size());
        for (const auto& [sid, beam] : beams) {
            prepared p;
            p.station = static_cast<std::size_t>(station_index(sid));
            const double psi = deg2rad(beam.h_hpbw_deg), phi = deg2rad(beam.v_hpbw_deg);
            // same expression trees as antenna_gain_dbi, evaluated once per beam
            p.gain_main_dbi = 10.0 * std::log10(main_lobe_constant / (psi * phi));
            p.gain_side_dbi = 10.0 * std::log10(side_lobe_gain);
            p.az_rad = deg2rad(beam.azimuth_deg);
            p.tilt_rad = deg2rad(beam.tilt_deg);
            p.psi_rad = psi;
            p.phi_rad = phi;
            prep.push_back(p);
        }

        const std::size_t n = grid_->size();
        const std::size_t n_layers = layers_.size();
        struct chunk_counts {
            std::size_t covered = 0, overlapped = 0;
            std::vector<std::size_t> layer_total, layer_covered;
        };
        std::vector<chunk_counts> per_chunk(
            static_cast<std::size_t>(threads_ < 1 ? 1 : threads_));

        parallel_chunks(n, threads_, [&](std::size_t ci, std::size_t lo, std::size_t hi) {
            auto& cc = per_chunk[ci];
            cc.layer_total.assign(n_layers, 0);
            cc.layer_covered.assign(n_layers, 0);
            for (std::size_t k = lo; k < hi; ++k) {
                std::uint64_t covering = 0;
                for (const auto& p : prep) {
                    const auto& lk = links_[p.station][k];
                    const double az_off = wrap_pi(lk.heading - p.az_rad);
                    const double el_off = wrap_pi(lk.elevation - p.tilt_rad);
                    const bool in_lobe =
                        std::abs(az_off) <= p.psi_rad && std::abs(el_off) <= p.phi_rad;
                    const double g = in_lobe ? p.gain_main_dbi : p.gain_side_dbi;
                    if (rf_.tx_power_dbm + g - lk.pl_db >= rf_.tau_dbm)
                        covering |= std::uint64_t{1} << p.station;
                }
                const bool cov = covering != 0;
                if (cov) ++cc.covered;
                if (std::popcount(covering) >= 2) ++cc.overlapped;
                if (!layer_of_.empty() && layer_of_[k] >= 0) {
                    const auto li = static_cast<std::size_t>(layer_of_[k]);
                    ++cc.layer_total[li];
                    if (cov) ++cc.layer_covered[li];
                }
            }
        });

        coverage_report rep;
        rep.n_total = n;
        std::vector<std::size_t> lt(n_layers, 0), lc(n_layers, 0);
        for (const auto& cc : per_chunk) {
            rep.n_covered += cc.covered;
            rep.n_overlapped += cc.overlapped;
            for (std::size_t i = 0; i < cc.layer_total.size(); ++i) {
                lt[i] += cc.layer_total[i];
                lc[i] += cc.layer_covered[i];
            }
        }
        rep.gcr = static_cast<double>(rep.n_covered) / static_cast<double>(n);
        rep.cor = static_cast<double>(rep.n_overlapped) / static_cast<double>(n);
        for (std::size_t i = 0; i < n_layers; ++i) {
            layer_stat ls;
            ls.z_low = layers_[i].first;
            ls.z_high = layers_[i].second;
            ls.n_total = lt[i];
            ls.n_covered = lc[i];
            ls.gcr = lt[i] == 0 ? 0.0
                                : static_cast<double>(lc[i]) / static_cast<double>(lt[i]);
            rep.per_layer.push_back(ls);
        }
        return rep;
    }

    objective_value objective(const std::vector<std::pair<int, beam_config>>& beams) const {
        const auto rep = evaluate(beams);
        return {rep.gcr, rep.cor, rep.cor <= rf_.overlap_cap};
    }

  private:
    struct link {
        double pl_db = 0.0;
        double heading = 0.0;
        double elevation = 0.0;
    };

    int find_layer(double z) const {
        for (std::size_t i = 0; i < layers_.size(); ++i) {
            const bool top = i + 1 == layers_.size();
            if (z >= layers_[i].first && (z < layers_[i].second || (top && z <= layers_[i].second)))
                return static_cast<int>(i);
        }
        return -1;
    }

    const voxel_grid* grid_;
    std::vector<base_station> stations_;
    rf_params rf_;
    std::vector<std::pair<double, double>> layers_;
    int threads_;
    std::vector<std::vector<link>> links_;
    std::vector<int> layer_of_;
};

// ---------------------------------------------------------------------------
// free-function entry points
// ---------------------------------------------------------------------------

inline coverage_report evaluate(const voxel_grid& grid, const beam_set& beams,
                                const rf_params& rf,
                                std::vector<std::pair<double, double>> layers = {},
                                int threads = 1) {
    if (grid.size() == 0) throw empty_grid("cannot evaluate an empty voxel grid");
    std::vector<base_station> stations;
    std::vector<std::pair<int, beam_config>> assignment;
    for (const auto& sb : beams) {
        bool seen = false;
        for (const auto& s : stations) seen = seen || s.id == sb.station.id;
        if (!seen) stations.push_back(sb.station);
        assignment.emplace_back(sb.station.id, sb.beam);
    }
    if (beams.empty()) {
        // zero beams: nothing covered, but totals and layers still reported
        coverage_report rep;
        rep.n_total = grid.size();
        for (std::size_t i = 0; i < layers.size(); ++i) {
            layer_stat ls;
            ls.z_low = layers[i].first;
            ls.z_high = layers[i].second;
            const bool top = i + 1 == layers.size();
            for (const auto& v : grid.centers) {
                // first matching layer wins, top bound inclusive
                bool earlier = false;
                for (std::size_t j = 0; j < i; ++j)
                    earlier = earlier || (v.z >= layers[j].first && v.z < layers[j].second);
                if (earlier) continue;
                if (v.z >= ls.z_low && (v.z < ls.z_high || (top && v.z <= ls.z_high)))
                    ++ls.n_total;
            }
            rep.per_layer.push_back(ls);
        }
        return rep;
    }
    coverage_evaluator ev(grid, std::move(stations), rf, std::move(layers), threads);
    return ev.evaluate(assignment);
}

inline objective_value objective(const voxel_grid& grid, const beam_set& beams,
                                 const rf_params& rf, int threads = 1) {
    const auto rep = evaluate(grid, beams, rf, {}, threads);
    return {rep.gcr, rep.cor, rep.cor <= rf.overlap_cap};
}

// ---------------------------------------------------------------------------
// network-level aggregation
// ---------------------------------------------------------------------------

struct network_entry {
    double area = 0.0;  // triangle area, any consistent unit
    double gcr = 0.0;   // optimal per-triangle GCR
};

/// Area-weighted mean GCR over cooperation sets.
inline double average_gcr(const std::vector<network_entry>& entries) {
    if (entries.empty()) throw empty_input("average_gcr needs at least one entry");
    double num = 0.0, den = 0.0;
    for (const auto& e : entries) {
        if (!(e.area > 0.0)) throw validation_error("entry areas must be positive");
        num += e.area * e.gcr;
        den += e.area;
    }
    return num / den;
}

}  // namespace aircov
