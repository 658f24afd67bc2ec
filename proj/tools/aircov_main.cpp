// aircov command-line front end: triangulate a station file, optimize beam
// plans, evaluate the down-tilt baseline, tabulate prism overlap ratios, and
// re-print resolved scenarios.
//
// SPDX-License-Identifier: MIT
// Copyright (c) 2026 aircov contributors

#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "aircov/pipeline.hpp"
#include "aircov/reports.hpp"
#include "aircov/scenario.hpp"

namespace {

// Exit codes: 0 success, 1 internal error, 2 validation error, 3 no feasible
// solution, 4 I/O or file-format error.
int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const aircov::infeasible_run& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const aircov::parse_failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const aircov::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const aircov::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

struct run_options {
    std::string scenario_path;
    std::string algorithm;
    std::string triangulation;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    double overlap_cap = 1.0;
    int iterations = 0;
    int particles = 0;
    int threads = 0;
};

void add_common(CLI::App* cmd, run_options& opt, CLI::Option*& seed_opt,
                CLI::Option*& cap_opt) {
    cmd->add_option("--scenario", opt.scenario_path, "scenario JSON file")->required();
    cmd->add_option("--triangulation", opt.triangulation,
                    "plane division: delaunay or random");
    seed_opt = cmd->add_option("--seed", opt.seed, "master seed (overrides the scenario)");
    cmd->add_option("--out", opt.out_dir, "report directory (default: out)");
    cap_opt = cmd->add_option("--overlap-cap", opt.overlap_cap,
                              "overlap constraint T in [0, 1]");
    cmd->add_option("--iterations", opt.iterations, "swarm iterations");
    cmd->add_option("--particles", opt.particles, "swarm particle count");
    cmd->add_option("--threads", opt.threads, "worker threads for evaluation");
}

aircov::scenario load_with_overrides(const run_options& opt, const CLI::Option* seed_opt,
                                     const CLI::Option* cap_opt) {
    aircov::scenario sc = aircov::load_scenario(opt.scenario_path);
    if (seed_opt && seed_opt->count() > 0) sc.swarm.seed = opt.seed;
    if (cap_opt && cap_opt->count() > 0) sc.rf.overlap_cap = opt.overlap_cap;
    if (opt.iterations > 0) sc.swarm.iterations = opt.iterations;
    if (opt.particles > 0) sc.swarm.particle_count = opt.particles;
    if (opt.threads > 0) sc.swarm.threads = opt.threads;
    sc.validate();
    return sc;
}

int run_and_report(const aircov::scenario& sc, aircov::algorithm_kind alg,
                   aircov::triangulation_mode mode, const std::string& out_dir) {
    const auto mf = aircov::run_network(sc, alg, mode);
    aircov::export_reports(mf, out_dir);
    std::printf("scenario %s  hash %s  algorithm %s  triangulation %s  seed %llu\n",
                mf.scenario_name.c_str(), mf.scenario_hash.c_str(), to_string(mf.algorithm),
                to_string(mf.triangulation), static_cast<unsigned long long>(mf.seed));
    for (const auto& tr : mf.triangles) {
        if (tr.ok)
            std::printf("  %-12s gcr %.4f  cor %.4f  %s\n", tr.tbs_set.c_str(),
                        tr.sol.report.gcr, tr.sol.report.cor,
                        tr.sol.feasible ? "feasible" : "infeasible");
        else
            std::printf("  %-12s error: %s\n", tr.tbs_set.c_str(), tr.error.c_str());
    }
    std::printf("network average gcr %.4f (%zu/%zu cooperation sets optimized)\n",
                mf.network_gcr, mf.ok_count, mf.triangles.size());
    std::printf("reports written to %s\n", out_dir.c_str());
    if (mf.ok_count == 0 && !mf.triangles.empty()) {
        std::cerr << "error: no cooperation set produced a feasible solution\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aircov: ground-to-air coverage planning over triangular-prism airspaces"};
    app.require_subcommand(1);

    run_options opt;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* cap_opt = nullptr;

    auto* cmd_tri = app.add_subcommand("triangulate", "print the cooperation-set triangles");
    std::string tri_scenario, tri_mode_str;
    std::uint64_t tri_seed = 1;
    cmd_tri->add_option("--scenario", tri_scenario, "scenario JSON file")->required();
    cmd_tri->add_option("--triangulation", tri_mode_str, "delaunay or random");
    cmd_tri->add_option("--seed", tri_seed, "seed for the random mode");

    auto* cmd_opt = app.add_subcommand("optimize", "optimize beams for every cooperation set");
    cmd_opt->add_option("--algorithm", opt.algorithm, "slbc, abc, es, or downtilt");
    add_common(cmd_opt, opt, seed_opt, cap_opt);

    auto* cmd_base = app.add_subcommand("baseline", "evaluate the fixed down-tilt baseline");
    run_options base_opt;
    CLI::Option* base_seed_opt = nullptr;
    CLI::Option* base_cap_opt = nullptr;
    add_common(cmd_base, base_opt, base_seed_opt, base_cap_opt);

    auto* cmd_prisms = app.add_subcommand("prisms", "prism-structure overlap ratio table");
    std::vector<double> ratios{1.0, 1.5, 2.0, 5.0};
    std::size_t samples = 1000000;
    std::uint64_t prism_seed = 1;
    int partitions = 8, prism_threads = 4;
    std::string prism_out;
    cmd_prisms->add_option("--ratios", ratios, "r/H ratios to tabulate")->expected(-1);
    cmd_prisms->add_option("--samples", samples, "Monte-Carlo samples per solid");
    cmd_prisms->add_option("--seed", prism_seed, "Monte-Carlo seed");
    cmd_prisms->add_option("--partitions", partitions, "sample partitions");
    cmd_prisms->add_option("--threads", prism_threads, "worker threads");
    cmd_prisms->add_option("--out", prism_out, "directory for zeta_table.csv");

    auto* cmd_report = app.add_subcommand("report", "print the resolved scenario");
    std::string report_scenario;
    cmd_report->add_option("--scenario", report_scenario, "scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (cmd_tri->parsed())
        return guarded([&] {
            const auto sc = aircov::load_scenario(tri_scenario);
            const auto mode = tri_mode_str.empty() ? sc.triangulation
                                                   : aircov::parse_triangulation(tri_mode_str);
            const auto tris = mode == aircov::triangulation_mode::delaunay
                                  ? aircov::delaunay_triangulate(sc.stations)
                                  : aircov::random_triangulate(sc.stations, tri_seed);
            aircov::json j;
            j["scenario"] = sc.name;
            j["triangulation"] = to_string(mode);
            aircov::json arr = aircov::json::array();
            for (const auto& t : tris) {
                const auto m = aircov::triangle_metrics(t);
                aircov::json jt;
                jt["tbs_set"] = aircov::detail::tbs_set_name(t.vertex_ids);
                jt["vertex_ids"] = t.vertex_ids;
                jt["angles_deg"] = m.angles_deg;
                jt["area_m2"] = m.area;
                jt["longest_edge_m"] = m.longest_edge;
                arr.push_back(std::move(jt));
            }
            j["triangles"] = std::move(arr);
            std::cout << j.dump(2) << "\n";
            return 0;
        });

    if (cmd_opt->parsed())
        return guarded([&] {
            const auto sc = load_with_overrides(opt, seed_opt, cap_opt);
            const auto alg = opt.algorithm.empty() ? sc.algorithm
                                                   : aircov::parse_algorithm(opt.algorithm);
            const auto mode = opt.triangulation.empty()
                                  ? sc.triangulation
                                  : aircov::parse_triangulation(opt.triangulation);
            return run_and_report(sc, alg, mode, opt.out_dir);
        });

    if (cmd_base->parsed())
        return guarded([&] {
            const auto sc = load_with_overrides(base_opt, base_seed_opt, base_cap_opt);
            const auto mode = base_opt.triangulation.empty()
                                  ? sc.triangulation
                                  : aircov::parse_triangulation(base_opt.triangulation);
            return run_and_report(sc, aircov::algorithm_kind::downtilt, mode,
                                  base_opt.out_dir);
        });

    if (cmd_prisms->parsed())
        return guarded([&] {
            const auto rows =
                aircov::compute_zeta_table(ratios, samples, prism_seed, partitions,
                                           prism_threads);
            std::printf("%-12s %8s %8s %10s %12s %12s %12s\n", "structure", "r_m", "h_m",
                        "r_over_h", "analytic", "monte_carlo", "std_error");
            for (const auto& z : rows)
                std::printf("%-12s %8.1f %8.1f %10.3f %12.6f %12.6f %12.6f\n",
                            z.structure.c_str(), z.r, z.h, z.r / z.h, z.zeta_analytic,
                            z.zeta_mc, z.mc_std_error);
            if (!prism_out.empty()) {
                std::error_code ec;
                std::filesystem::create_directories(prism_out, ec);
                aircov::write_zeta_table_csv(
                    rows, std::filesystem::path(prism_out) / "zeta_table.csv");
                std::printf("table written to %s/zeta_table.csv\n", prism_out.c_str());
            }
            return 0;
        });

    return guarded([&] {
        const auto sc = aircov::load_scenario(report_scenario);
        aircov::json j = aircov::scenario_to_json(sc);
        j["scenario_hash"] = aircov::scenario_hash_hex(sc);
        std::cout << j.dump(2) << "\n";
        return 0;
    });
}
