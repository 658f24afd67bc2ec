// aircov: ground-to-air coverage planning for terrestrial cellular networks
//
// SPDX-License-Identifier: MIT
// Copyright (c) 2026 aircov contributors

#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "aircov/common.hpp"
#include "aircov/coverage.hpp"
#include "aircov/geometry.hpp"
#include "aircov/optimizer.hpp"
#include "aircov/rf_model.hpp"

namespace aircov {

using json = nlohmann::ordered_json;

enum class algorithm_kind { slbc, abc, es, downtilt };
enum class triangulation_mode { delaunay, random };

inline const char* to_string(algorithm_kind a) {
    switch (a) {
        case algorithm_kind::slbc: return "slbc";
        case algorithm_kind::abc: return "abc";
        case algorithm_kind::es: return "es";
        case algorithm_kind::downtilt: return "downtilt";
    }
    return "slbc";
}

inline const char* to_string(triangulation_mode m) {
    return m == triangulation_mode::delaunay ? "delaunay" : "random";
}

inline algorithm_kind parse_algorithm(const std::string& s) {
    if (s == "slbc") return algorithm_kind::slbc;
    if (s == "abc") return algorithm_kind::abc;
    if (s == "es") return algorithm_kind::es;
    if (s == "downtilt") return algorithm_kind::downtilt;
    throw validation_error("algorithm: unknown value '" + s +
                           "' (expected slbc, abc, es, or downtilt)");
}

inline triangulation_mode parse_triangulation(const std::string& s) {
    if (s == "delaunay") return triangulation_mode::delaunay;
    if (s == "random") return triangulation_mode::random;
    throw validation_error("triangulation: unknown value '" + s +
                           "' (expected delaunay or random)");
}

/// Complete description of one planning run: the station topology, the
/// airspace discretization, the radio model, and the search settings.
/// Everything a run needs is in here, so runs are reproducible from the
/// file alone plus the master seed.
struct scenario {
    std::string name = "scenario";
    std::vector<base_station> stations;
    double h_max = 300.0;
    double voxel_resolution = 10.0;
    rf_params rf;  // tau = -90 dBm, P_T = 46 dBm, T = 1, RMa-AV @ 2.6 GHz
    beam_pattern_codebook codebook = beam_pattern_codebook::default_codebook();
    search_domain domain;
    std::vector<double> layer_bounds;  // interior z cuts; empty -> equal thirds
    double report_band_m = 50.0;       // per-layer reporting band height
    swarm_config swarm;
    es_discretization es{};  // empty lists -> resolved to defaults at run time
    baseline_config baseline;
    algorithm_kind algorithm = algorithm_kind::slbc;
    triangulation_mode triangulation = triangulation_mode::delaunay;

    void validate() const {
        if (stations.empty()) throw validation_error("stations: list is empty");
        for (const auto& s : stations)
            if (!(std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.z)))
                throw validation_error("stations: station " + std::to_string(s.id) +
                                       " has a non-finite coordinate");
        for (const auto& s : stations)
            if (s.z < 0.0)
                throw validation_error("stations: station " + std::to_string(s.id) +
                                       " has negative antenna height");
        for (std::size_t i = 0; i < stations.size(); ++i)
            for (std::size_t j = i + 1; j < stations.size(); ++j) {
                if (stations[i].id == stations[j].id)
                    throw validation_error("stations: duplicate id " +
                                           std::to_string(stations[i].id));
                if (stations[i].x == stations[j].x && stations[i].y == stations[j].y)
                    throw degenerate_topology(
                        "stations " + std::to_string(stations[i].id) + " and " +
                        std::to_string(stations[j].id) + " share position (" +
                        std::to_string(stations[i].x) + ", " + std::to_string(stations[i].y) +
                        ")");
            }
        if (!(h_max > 0.0) || !std::isfinite(h_max))
            throw validation_error("h_max: must be positive and finite");
        if (!(voxel_resolution > 0.0) || !std::isfinite(voxel_resolution))
            throw validation_error("voxel_resolution: must be positive and finite");
        if (!std::isfinite(rf.tau_dbm)) throw validation_error("tau_dbm: must be finite");
        if (!std::isfinite(rf.tx_power_dbm))
            throw validation_error("tx_power_dbm: must be finite");
        if (!(rf.overlap_cap >= 0.0 && rf.overlap_cap <= 1.0))
            throw validation_error("overlap_cap: must lie in [0, 1], got " +
                                   std::to_string(rf.overlap_cap));
        rf.channel.validate();
        codebook.validate();
        domain.validate();
        double prev = 0.0;
        for (double b : layer_bounds) {
            if (!(b > prev && b < h_max))
                throw validation_error(
                    "layer_bounds: must be strictly increasing inside (0, h_max)");
            prev = b;
        }
        if (!(report_band_m > 0.0))
            throw validation_error("report_band_m: must be positive");
        swarm.validate();
        try {
            codebook.at(baseline.pattern_id);
        } catch (const error&) {
            throw validation_error("baseline.pattern_id: not in the codebook, got " +
                                   std::to_string(baseline.pattern_id));
        }
        if (!(baseline.tilt_deg >= -90.0 && baseline.tilt_deg <= 90.0))
            throw validation_error("baseline.tilt_deg: must lie in [-90, 90]");
        for (int id : es.pattern_ids)
            try {
                codebook.at(id);
            } catch (const error&) {
                throw validation_error("es.pattern_ids: not in the codebook, got " +
                                       std::to_string(id));
            }
        for (double t : es.tilts_deg)
            if (!(t >= domain.tilt_min_deg && t <= domain.tilt_max_deg))
                throw validation_error("es.tilts_deg: tilt outside the tilt box");
    }
};

/// Fills in the exhaustive-search menu when the scenario leaves it open:
/// every codebook pattern, and a coarse five-step tilt ladder.
inline es_discretization resolve_es(const scenario& sc) {
    es_discretization d = sc.es;
    if (d.pattern_ids.empty())
        for (std::size_t i = 1; i <= sc.codebook.patterns.size(); ++i)
            d.pattern_ids.push_back(static_cast<int>(i));
    if (d.tilts_deg.empty()) d.tilts_deg = {-15.0, 0.0, 10.0, 20.0, 35.0};
    return d;
}

// ---------------------------------------------------------------------------
// JSON serialization (canonical form: every field resolved and present)
// ---------------------------------------------------------------------------

namespace detail {

inline const char* to_string(los_form f) {
    switch (f) {
        case los_form::exp_decay: return "exp_decay";
        case los_form::ratio_exp: return "ratio_exp";
        case los_form::all_los: return "all_los";
    }
    return "all_los";
}

inline los_form parse_los_form(const std::string& s) {
    if (s == "exp_decay") return los_form::exp_decay;
    if (s == "ratio_exp") return los_form::ratio_exp;
    if (s == "all_los") return los_form::all_los;
    throw validation_error("channel.los_bands.form: unknown value '" + s + "'");
}

inline const char* to_string(freq_term f) {
    return f == freq_term::forty_pi_f_over_3 ? "forty_pi_f_over_3" : "f_ghz";
}

inline freq_term parse_freq_term(const std::string& s) {
    if (s == "forty_pi_f_over_3") return freq_term::forty_pi_f_over_3;
    if (s == "f_ghz") return freq_term::f_ghz;
    throw validation_error("channel.freq: unknown value '" + s + "'");
}

inline json log_linear_to_json(const log_linear& r) {
    json j;
    j["log_coeff"] = r.log_coeff;
    j["offset"] = r.offset;
    if (std::isfinite(r.floor)) j["floor"] = r.floor;
    return j;
}

inline log_linear log_linear_from_json(const json& j, const std::string& field) {
    if (!j.is_object()) throw validation_error(field + ": expected an object");
    log_linear r;
    r.log_coeff = j.value("log_coeff", 0.0);
    r.offset = j.value("offset", 0.0);
    r.floor = j.value("floor", -std::numeric_limits<double>::infinity());
    return r;
}

inline json channel_to_json(const channel_model& m) {
    json j;
    j["name"] = m.name;
    j["carrier_ghz"] = m.carrier_ghz;
    j["h_eval_min"] = m.h_eval_min;
    j["h_eval_max"] = m.h_eval_max;
    j["nlos_floor_at_los"] = m.nlos_floor_at_los;
    json bands = json::array();
    for (const auto& b : m.los_bands) {
        json jb;
        jb["h_high"] = b.h_high;
        jb["form"] = to_string(b.form);
        if (b.form != los_form::all_los) {
            jb["d1"] = log_linear_to_json(b.d1);
            jb["p1"] = log_linear_to_json(b.p1);
        }
        bands.push_back(std::move(jb));
    }
    j["los_bands"] = std::move(bands);
    auto record = [](const path_loss_record& r) {
        json jr;
        jr["slope"] = log_linear_to_json(r.slope);
        jr["intercept"] = log_linear_to_json(r.intercept);
        jr["freq"] = to_string(r.freq);
        return jr;
    };
    j["los_pl"] = record(m.los_pl);
    j["nlos_pl"] = record(m.nlos_pl);
    return j;
}

inline channel_model channel_from_record(const json& j) {
    if (!j.is_object()) throw validation_error("channel: expected an object");
    channel_model m;
    m.name = j.value("name", std::string("custom"));
    m.carrier_ghz = j.value("carrier_ghz", 2.6);
    m.h_eval_min = j.value("h_eval_min", 1.5);
    m.h_eval_max = j.value("h_eval_max", 300.0);
    m.nlos_floor_at_los = j.value("nlos_floor_at_los", false);
    if (!j.contains("los_bands") || !j.at("los_bands").is_array())
        throw validation_error("channel.los_bands: expected an array");
    for (const auto& jb : j.at("los_bands")) {
        los_band b;
        if (!jb.contains("h_high"))
            throw validation_error("channel.los_bands: band is missing h_high");
        b.h_high = jb.at("h_high").get<double>();
        b.form = parse_los_form(jb.value("form", std::string("all_los")));
        if (jb.contains("d1")) b.d1 = log_linear_from_json(jb.at("d1"), "channel.los_bands.d1");
        if (jb.contains("p1")) b.p1 = log_linear_from_json(jb.at("p1"), "channel.los_bands.p1");
        m.los_bands.push_back(b);
    }
    auto record = [](const json& jr, const std::string& field) {
        if (!jr.is_object()) throw validation_error(field + ": expected an object");
        path_loss_record r;
        if (jr.contains("slope")) r.slope = log_linear_from_json(jr.at("slope"), field + ".slope");
        if (jr.contains("intercept"))
            r.intercept = log_linear_from_json(jr.at("intercept"), field + ".intercept");
        r.freq = parse_freq_term(jr.value("freq", std::string("forty_pi_f_over_3")));
        return r;
    };
    if (!j.contains("los_pl")) throw validation_error("channel.los_pl: missing");
    if (!j.contains("nlos_pl")) throw validation_error("channel.nlos_pl: missing");
    m.los_pl = record(j.at("los_pl"), "channel.los_pl");
    m.nlos_pl = record(j.at("nlos_pl"), "channel.nlos_pl");
    return m;
}

/// Reads one channel record from a models file: { "<name>": {record}, ... }.
inline channel_model channel_from_table_file(const std::filesystem::path& file,
                                             const std::string& environment) {
    std::ifstream in(file);
    if (!in) throw io_error("cannot open channel table file " + file.string());
    json tab;
    try {
        tab = json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_failure(file.string() + ": " + e.what());
    }
    if (!tab.is_object() || !tab.contains(environment))
        throw validation_error("channel.environment: '" + environment +
                               "' not found in " + file.string());
    channel_model m = channel_from_record(tab.at(environment));
    if (m.name == "custom") m.name = environment;
    return m;
}

/// Accepts either a preset reference ({"environment": "rma_av" | "uma_av",
/// "carrier_ghz": f}, optionally with "table_file") or a full inline record.
inline channel_model channel_from_json(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw validation_error("channel: expected an object");
    if (j.contains("los_bands")) return channel_from_record(j);
    const std::string env = j.value("environment", std::string("rma_av"));
    const double f = j.value("carrier_ghz", 2.6);
    if (j.contains("table_file")) {
        std::filesystem::path p = j.at("table_file").get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        channel_model m = channel_from_table_file(p, env);
        if (j.contains("carrier_ghz")) m.carrier_ghz = f;
        return m;
    }
    if (env == "rma_av") return rma_av_channel(f);
    if (env == "uma_av") return uma_av_channel(f);
    throw validation_error("channel.environment: unknown preset '" + env +
                           "' (expected rma_av or uma_av, or provide table_file)");
}

/// Station CSV side-file: one "id,x,y,z" row per station; a header row is
/// allowed and skipped.
inline std::vector<base_station> stations_from_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw io_error("cannot open stations file " + file.string());
    std::vector<base_station> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
        if (trimmed.empty()) continue;
        base_station s;
        char comma = ',';
        std::istringstream row(trimmed);
        if (!(row >> s.id >> comma >> s.x >> comma >> s.y >> comma >> s.z)) {
            if (line_no == 1) continue;  // header row
            throw parse_failure(file.string() + ":" + std::to_string(line_no) +
                                ": expected 'id,x,y,z'");
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace detail

/// Canonical JSON form of a scenario: every field resolved and present, in a
/// fixed key order, so equal scenarios dump to equal bytes.
inline json scenario_to_json(const scenario& sc) {
    json j;
    j["name"] = sc.name;
    j["algorithm"] = to_string(sc.algorithm);
    j["triangulation"] = to_string(sc.triangulation);
    j["h_max"] = sc.h_max;
    j["voxel_resolution"] = sc.voxel_resolution;
    j["tau_dbm"] = sc.rf.tau_dbm;
    j["tx_power_dbm"] = sc.rf.tx_power_dbm;
    j["overlap_cap"] = sc.rf.overlap_cap;
    j["channel"] = detail::channel_to_json(sc.rf.channel);
    json cb = json::array();
    for (const auto& p : sc.codebook.patterns)
        cb.push_back(json::array({p.h_hpbw_deg, p.v_hpbw_deg}));
    j["codebook"] = std::move(cb);
    j["tilt_box"] = json::array({sc.domain.tilt_min_deg, sc.domain.tilt_max_deg});
    j["hpbw_box"] = json::array({sc.domain.hpbw_min_deg, sc.domain.hpbw_max_deg});
    j["layer_bounds"] = sc.layer_bounds;
    j["report_band_m"] = sc.report_band_m;
    json sw;
    sw["particles"] = sc.swarm.particle_count;
    sw["iterations"] = sc.swarm.iterations;
    sw["local_coeff"] = sc.swarm.local_coeff;
    sw["global_coeff"] = sc.swarm.global_coeff;
    sw["w_min"] = sc.swarm.w_min;
    sw["w_max"] = sc.swarm.w_max;
    sw["seed"] = sc.swarm.seed;
    // threads is an execution knob, not scenario semantics: keeping it out of
    // the canonical form keeps hashes and manifests thread-count invariant
    j["optimizer"] = std::move(sw);
    json es;
    es["pattern_ids"] = sc.es.pattern_ids;
    es["tilts_deg"] = sc.es.tilts_deg;
    es["budget"] = sc.es.budget;
    j["es"] = std::move(es);
    json bl;
    bl["pattern_id"] = sc.baseline.pattern_id;
    bl["tilt_deg"] = sc.baseline.tilt_deg;
    j["baseline"] = std::move(bl);
    json st = json::array();
    for (const auto& s : sc.stations) {
        json js;
        js["id"] = s.id;
        js["x"] = s.x;
        js["y"] = s.y;
        js["z"] = s.z;
        st.push_back(std::move(js));
    }
    j["stations"] = std::move(st);
    return j;
}

/// Builds a scenario from parsed JSON. `base_dir` anchors relative side-file
/// paths (stations_csv, channel.table_file).
inline scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir = ".") {
    if (!j.is_object()) throw validation_error("scenario: expected a JSON object");
    scenario sc;
    auto num = [&j](const char* key, double def) {
        if (!j.contains(key)) return def;
        if (!j.at(key).is_number())
            throw validation_error(std::string(key) + ": expected a number");
        return j.at(key).get<double>();
    };
    sc.name = j.value("name", std::string("scenario"));
    if (j.contains("algorithm"))
        sc.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    if (j.contains("triangulation"))
        sc.triangulation = parse_triangulation(j.at("triangulation").get<std::string>());
    sc.h_max = num("h_max", sc.h_max);
    sc.voxel_resolution = num("voxel_resolution", sc.voxel_resolution);
    sc.rf.tau_dbm = num("tau_dbm", sc.rf.tau_dbm);
    sc.rf.tx_power_dbm = num("tx_power_dbm", sc.rf.tx_power_dbm);
    sc.rf.overlap_cap = num("overlap_cap", sc.rf.overlap_cap);
    if (j.contains("channel"))
        sc.rf.channel = detail::channel_from_json(j.at("channel"), base_dir);
    if (j.contains("codebook")) {
        if (!j.at("codebook").is_array())
            throw validation_error("codebook: expected an array of [h_hpbw, v_hpbw] pairs");
        sc.codebook.patterns.clear();
        int id = 0;
        for (const auto& jp : j.at("codebook")) {
            if (!jp.is_array() || jp.size() != 2)
                throw validation_error("codebook: expected [h_hpbw, v_hpbw] pairs");
            ++id;
            sc.codebook.patterns.push_back(
                {id, jp.at(0).get<double>(), jp.at(1).get<double>()});
        }
    }
    auto pair_field = [&j](const char* key, double& lo, double& hi) {
        if (!j.contains(key)) return;
        const auto& ja = j.at(key);
        if (!ja.is_array() || ja.size() != 2)
            throw validation_error(std::string(key) + ": expected [lo, hi]");
        lo = ja.at(0).get<double>();
        hi = ja.at(1).get<double>();
    };
    pair_field("tilt_box", sc.domain.tilt_min_deg, sc.domain.tilt_max_deg);
    pair_field("hpbw_box", sc.domain.hpbw_min_deg, sc.domain.hpbw_max_deg);
    if (j.contains("layer_bounds")) {
        if (!j.at("layer_bounds").is_array())
            throw validation_error("layer_bounds: expected an array");
        sc.layer_bounds = j.at("layer_bounds").get<std::vector<double>>();
    }
    sc.report_band_m = num("report_band_m", sc.report_band_m);
    if (j.contains("optimizer")) {
        const auto& jo = j.at("optimizer");
        if (!jo.is_object()) throw validation_error("optimizer: expected an object");
        sc.swarm.particle_count = jo.value("particles", sc.swarm.particle_count);
        sc.swarm.iterations = jo.value("iterations", sc.swarm.iterations);
        sc.swarm.local_coeff = jo.value("local_coeff", sc.swarm.local_coeff);
        sc.swarm.global_coeff = jo.value("global_coeff", sc.swarm.global_coeff);
        sc.swarm.w_min = jo.value("w_min", sc.swarm.w_min);
        sc.swarm.w_max = jo.value("w_max", sc.swarm.w_max);
        sc.swarm.seed = jo.value("seed", sc.swarm.seed);
        sc.swarm.threads = jo.value("threads", sc.swarm.threads);
    }
    if (j.contains("es")) {
        const auto& je = j.at("es");
        if (!je.is_object()) throw validation_error("es: expected an object");
        if (je.contains("pattern_ids"))
            sc.es.pattern_ids = je.at("pattern_ids").get<std::vector<int>>();
        if (je.contains("tilts_deg"))
            sc.es.tilts_deg = je.at("tilts_deg").get<std::vector<double>>();
        sc.es.budget = je.value("budget", sc.es.budget);
    }
    if (j.contains("baseline")) {
        const auto& jb = j.at("baseline");
        if (!jb.is_object()) throw validation_error("baseline: expected an object");
        sc.baseline.pattern_id = jb.value("pattern_id", sc.baseline.pattern_id);
        sc.baseline.tilt_deg = jb.value("tilt_deg", sc.baseline.tilt_deg);
    }
    if (j.contains("stations")) {
        if (!j.at("stations").is_array())
            throw validation_error("stations: expected an array");
        for (const auto& js : j.at("stations")) {
            base_station s;
            if (!js.is_object() || !js.contains("x") || !js.contains("y"))
                throw validation_error("stations: each entry needs id, x, y (z optional)");
            s.id = js.value("id", static_cast<int>(sc.stations.size()) + 1);
            s.x = js.at("x").get<double>();
            s.y = js.at("y").get<double>();
            s.z = js.value("z", 30.0);
            sc.stations.push_back(s);
        }
    }
    if (j.contains("stations_csv")) {
        std::filesystem::path p = j.at("stations_csv").get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        auto extra = detail::stations_from_csv(p);
        sc.stations.insert(sc.stations.end(), extra.begin(), extra.end());
    }
    return sc;
}

/// Loads and validates a scenario file. Distinct failure modes: io_error for
/// a missing/unreadable file, parse_failure for malformed JSON or CSV, and
/// validation_error / degenerate_topology (naming the offending field or
/// stations) for well-formed but invalid content.
inline scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open scenario file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_failure(path.string() + ": " + e.what());
    }
    scenario sc = scenario_from_json(j, path.parent_path().empty()
                                            ? std::filesystem::path(".")
                                            : path.parent_path());
    sc.validate();
    return sc;
}

/// Writes the canonical JSON form; load_scenario on the result round-trips
/// to an equivalent scenario.
inline void save_scenario(const scenario& sc, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write scenario file " + path.string());
    out << scenario_to_json(sc).dump(2) << "\n";
    if (!out) throw io_error("failed writing scenario file " + path.string());
}

/// FNV-1a over the canonical serialization; stable across platforms, so the
/// manifest can prove which scenario produced it.
inline std::uint64_t scenario_hash(const scenario& sc) {
    const std::string bytes = scenario_to_json(sc).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string scenario_hash_hex(const scenario& sc) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(scenario_hash(sc)));
    return std::string(buf);
}

}  // namespace aircov
