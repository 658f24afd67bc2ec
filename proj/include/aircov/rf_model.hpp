// aircov: ground-to-air coverage planning for terrestrial cellular networks
// SPDX-License-Identifier: MIT
// Copyright (c) 2026 aircov contributors
//
// G2A channel model (mixed LOS/NLOS path loss over banded coefficient
// tables), two-level directional antenna gain, and per-voxel received power.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "aircov/common.hpp"
#include "aircov/geometry.hpp"

namespace aircov {

// ---------------------------------------------------------------------------
// channel coefficient tables
// ---------------------------------------------------------------------------

/// max(log_coeff * log10(h) + offset, floor); coefficients are data, not code.
struct log_linear {
    double log_coeff = 0.0;
    double offset = 0.0;
    double floor = -std::numeric_limits<double>::infinity();

    double operator()(double h) const {
        double v = offset;
        if (log_coeff != 0.0) v += log_coeff * std::log10(h);
        return std::max(v, floor);
    }

    static log_linear constant(double c) { return {0.0, c, c}; }
};

enum class los_form { all_los, ratio_exp, exp_decay };

/// One height band of the LOS-probability table; applies for h <= h_high
/// (bands are ordered by h_high, first match wins).
struct los_band {
    double h_high = 0.0;
    los_form form = los_form::all_los;
    log_linear d1;  // near-in distance, m
    log_linear p1;  // decay scale, m
};

enum class freq_term {
    forty_pi_f_over_3,  // 20*log10(40*pi*f/3), f in GHz
    f_ghz               // 20*log10(f), f in GHz
};

/// PL = slope(h) * log10(d_3D) + intercept(h) + 20*log10(frequency term).
struct path_loss_record {
    log_linear slope;
    log_linear intercept;
    freq_term freq = freq_term::forty_pi_f_over_3;
};

struct channel_model {
    std::string name;
    double carrier_ghz = 2.6;
    std::vector<los_band> los_bands;
    path_loss_record los_pl;
    path_loss_record nlos_pl;
    bool nlos_floor_at_los = false;  // NLOS never below LOS when set
    double h_eval_min = 1.5;         // clamp window for coefficient evaluation
    double h_eval_max = 300.0;

    void validate() const {
        if (!(carrier_ghz > 0.0)) throw validation_error("carrier frequency must be positive");
        if (los_bands.empty()) throw validation_error("channel model has no LOS bands");
        for (std::size_t i = 1; i < los_bands.size(); ++i)
            if (!(los_bands[i].h_high > los_bands[i - 1].h_high))
                throw validation_error("LOS bands must be ordered by ascending height");
        if (!(h_eval_min > 0.0 && h_eval_max > h_eval_min))
            throw validation_error("bad coefficient clamp window");
    }
};

namespace detail {

inline double clamp_height(const channel_model& m, double h) {
    return std::clamp(h, m.h_eval_min, m.h_eval_max);
}

inline double freq_log_term(const channel_model& m, freq_term t) {
    switch (t) {
        case freq_term::forty_pi_f_over_3:
            return 20.0 * std::log10(40.0 * pi * m.carrier_ghz / 3.0);
        case freq_term::f_ghz:
            return 20.0 * std::log10(m.carrier_ghz);
    }
    return 0.0;
}

inline const los_band& pick_band(const channel_model& m, double h_eval) {
    for (const auto& b : m.los_bands)
        if (h_eval <= b.h_high) return b;
    return m.los_bands.back();
}

}  // namespace detail

/// Rural/suburban aerial coefficient set (the default environment).
inline channel_model rma_av_channel(double carrier_ghz = 2.6) {
    channel_model m;
    m.name = "rma_av";
    m.carrier_ghz = carrier_ghz;
    m.los_bands = {
        {10.0, los_form::exp_decay, log_linear::constant(10.0), log_linear::constant(1000.0)},
        {40.0, los_form::ratio_exp, {1350.8, -8838.0, 18.0}, {15021.0, -16053.0, 1000.0}},
        {300.0, los_form::all_los, {}, {}},
    };
    m.los_pl = {{-1.8, 23.9, 20.0}, log_linear::constant(0.0), freq_term::forty_pi_f_over_3};
    m.nlos_pl = {{-5.3, 35.0}, log_linear::constant(-12.0), freq_term::forty_pi_f_over_3};
    m.nlos_floor_at_los = true;
    return m;
}

/// Urban-macro aerial coefficient set.
inline channel_model uma_av_channel(double carrier_ghz = 2.6) {
    channel_model m;
    m.name = "uma_av";
    m.carrier_ghz = carrier_ghz;
    m.los_bands = {
        {22.5, los_form::ratio_exp, log_linear::constant(18.0), log_linear::constant(63.0)},
        {100.0, los_form::ratio_exp, {460.0, -700.0, 18.0}, {4300.0, -3800.0, 1.0}},
        {300.0, los_form::all_los, {}, {}},
    };
    m.los_pl = {log_linear::constant(22.0), log_linear::constant(28.0), freq_term::f_ghz};
    m.nlos_pl = {{-7.0, 46.0}, log_linear::constant(-17.5), freq_term::forty_pi_f_over_3};
    m.nlos_floor_at_los = false;
    return m;
}

// ---------------------------------------------------------------------------
// channel operations; d_2d is horizontal separation, h_t vertical separation
// (both meters, non-negative); the 3D link distance is hypot(d_2d, h_t)
// ---------------------------------------------------------------------------

inline double los_probability(const channel_model& m, double d_2d, double h_t) {
    const double h = detail::clamp_height(m, h_t);
    const auto& band = detail::pick_band(m, h);
    switch (band.form) {
        case los_form::all_los:
            return 1.0;
        case los_form::exp_decay: {
            const double d1 = band.d1(h), p1 = band.p1(h);
            return d_2d <= d1 ? 1.0 : std::exp(-(d_2d - d1) / p1);
        }
        case los_form::ratio_exp: {
            const double d1 = band.d1(h), p1 = band.p1(h);
            if (d_2d <= d1) return 1.0;
            return d1 / d_2d + std::exp(-d_2d / p1) * (1.0 - d1 / d_2d);
        }
    }
    return 1.0;
}

namespace detail {

inline double eval_pl(const channel_model& m, const path_loss_record& rec, double d_3d,
                      double h_eval) {
    return rec.slope(h_eval) * std::log10(d_3d) + rec.intercept(h_eval) +
           freq_log_term(m, rec.freq);
}

}  // namespace detail

inline double path_loss_los_db(const channel_model& m, double d_2d, double h_t) {
    const double d_3d = std::hypot(d_2d, h_t);
    if (d_3d == 0.0) throw singular_geometry("path loss undefined at zero distance");
    return detail::eval_pl(m, m.los_pl, d_3d, detail::clamp_height(m, h_t));
}

inline double path_loss_nlos_db(const channel_model& m, double d_2d, double h_t) {
    const double d_3d = std::hypot(d_2d, h_t);
    if (d_3d == 0.0) throw singular_geometry("path loss undefined at zero distance");
    const double h = detail::clamp_height(m, h_t);
    const double raw = detail::eval_pl(m, m.nlos_pl, d_3d, h);
    if (!m.nlos_floor_at_los) return raw;
    return std::max(raw, detail::eval_pl(m, m.los_pl, d_3d, h));
}

/// Mixed path loss: PL = p_L * PL_L + p_N * PL_N with p_N = 1 - p_L.
inline double path_loss_db(const channel_model& m, double d_2d, double h_t) {
    const double p = los_probability(m, d_2d, h_t);
    if (p >= 1.0) return path_loss_los_db(m, d_2d, h_t);
    if (p <= 0.0) return path_loss_nlos_db(m, d_2d, h_t);
    return p * path_loss_los_db(m, d_2d, h_t) + (1.0 - p) * path_loss_nlos_db(m, d_2d, h_t);
}

// ---------------------------------------------------------------------------
// antenna model: two-level gain, main lobe G0/(psi*phi) inside the beam box
// ---------------------------------------------------------------------------

inline constexpr double main_lobe_constant = 2.2864;  // G0, linear
inline constexpr double side_lobe_gain = 0.03;        // S0, linear

/// Antenna parameter triple plus boresight heading. Construction enforces the
/// admissible box: 0 < h_hpbw < 180, 0 < v_hpbw < 180, -90 <= tilt <= 90.
struct beam_config {
    double h_hpbw_deg = 90.0;   // horizontal half-power beamwidth Psi
    double v_hpbw_deg = 25.0;   // vertical half-power beamwidth Phi
    double tilt_deg = 0.0;      // boresight elevation; > 0 is up-tilt
    double azimuth_deg = 0.0;   // boresight heading, CCW from +x, in [0, 360)

    beam_config() = default;

    beam_config(double h_hpbw, double v_hpbw, double tilt, double azimuth)
        : h_hpbw_deg(h_hpbw), v_hpbw_deg(v_hpbw), tilt_deg(tilt) {
        if (!(h_hpbw > 0.0 && h_hpbw < 180.0))
            throw validation_error("h_hpbw must lie in (0, 180) degrees");
        if (!(v_hpbw > 0.0 && v_hpbw < 180.0))
            throw validation_error("v_hpbw must lie in (0, 180) degrees");
        if (!(tilt >= -90.0 && tilt <= 90.0))
            throw validation_error("tilt must lie in [-90, 90] degrees");
        if (!std::isfinite(azimuth)) throw validation_error("azimuth must be finite");
        azimuth_deg = std::fmod(azimuth, 360.0);
        if (azimuth_deg < 0.0) azimuth_deg += 360.0;
    }
};

struct beam_pattern {
    int id = 0;
    double h_hpbw_deg = 0.0;
    double v_hpbw_deg = 0.0;
};

/// Ordered (h_hpbw, v_hpbw) menu for the discrete pattern search; ids are
/// contiguous from 1.
struct beam_pattern_codebook {
    std::vector<beam_pattern> patterns;

    static beam_pattern_codebook default_codebook() {
        beam_pattern_codebook cb;
        cb.patterns = {{1, 110.0, 25.0}, {2, 90.0, 25.0}, {3, 65.0, 25.0},
                       {4, 45.0, 25.0},  {5, 25.0, 25.0}, {6, 110.0, 15.0},
                       {7, 90.0, 15.0},  {8, 65.0, 15.0}, {9, 65.0, 8.0}};
        return cb;
    }

    int size() const { return static_cast<int>(patterns.size()); }

    const beam_pattern& at(int id) const {
        if (id < 1 || id > size()) throw validation_error("pattern id out of range");
        return patterns[static_cast<std::size_t>(id - 1)];
    }

    void validate() const {
        if (patterns.empty()) throw validation_error("codebook is empty");
        for (int i = 0; i < size(); ++i) {
            const auto& p = patterns[static_cast<std::size_t>(i)];
            if (p.id != i + 1) throw validation_error("codebook ids must be contiguous from 1");
            if (!(p.h_hpbw_deg > 0.0 && p.h_hpbw_deg < 180.0 && p.v_hpbw_deg > 0.0 &&
                  p.v_hpbw_deg < 180.0))
                throw validation_error("codebook beamwidths must lie in (0, 180) degrees");
        }
    }
};

/// Linear gain: G0/(psi*phi) when both offsets sit inside the (inclusive)
/// main-lobe box, S0 otherwise; psi, phi are the beamwidths in radians.
inline double antenna_gain_linear(const beam_config& b, double az_offset_rad,
                                  double el_offset_rad) {
    const double psi = deg2rad(b.h_hpbw_deg);
    const double phi = deg2rad(b.v_hpbw_deg);
    const bool in_lobe = std::abs(az_offset_rad) <= psi && std::abs(el_offset_rad) <= phi;
    return in_lobe ? main_lobe_constant / (psi * phi) : side_lobe_gain;
}

inline double antenna_gain_dbi(const beam_config& b, double az_offset_rad,
                               double el_offset_rad) {
    return 10.0 * std::log10(antenna_gain_linear(b, az_offset_rad, el_offset_rad));
}

/// Signed (azimuth, elevation) offsets of the station->point ray from the
/// beam boresight, both wrapped to (-pi, pi].
struct boresight_offset {
    double azimuth_rad = 0.0;
    double elevation_rad = 0.0;
};

inline boresight_offset boresight_offsets(const base_station& s, const beam_config& b,
                                          const vec3& p) {
    const double dx = p.x - s.x, dy = p.y - s.y, dz = p.z - s.z;
    const double d_2d = std::hypot(dx, dy);
    if (d_2d == 0.0 && dz == 0.0)
        throw singular_geometry("boresight offsets undefined for coincident points");
    const double heading = std::atan2(dy, dx);
    const double elevation = std::atan2(dz, d_2d);
    return {wrap_pi(heading - deg2rad(b.azimuth_deg)),
            wrap_pi(elevation - deg2rad(b.tilt_deg))};
}

/// Link budget: P = P_T + G - PL, all in dB units.
inline double received_power_dbm(const base_station& s, const beam_config& b, const vec3& p,
                                 double tx_power_dbm, const channel_model& m) {
    const auto off = boresight_offsets(s, b, p);
    const double g = antenna_gain_dbi(b, off.azimuth_rad, off.elevation_rad);
    const double d_2d = std::hypot(p.x - s.x, p.y - s.y);
    const double pl = path_loss_db(m, d_2d, std::abs(p.z - s.z));
    return tx_power_dbm + g - pl;
}

}  // namespace aircov
