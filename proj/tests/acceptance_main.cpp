// End-to-end acceptance checks for the aircov toolkit. Exercises the real
// library and the installed CLI binary against the shipped scenario files.
//
//   usage: aircov_acceptance <cli-binary> <scenarios-dir>
//
// Each criterion prints exactly one PASS / FAIL line. A failure that is
// documented as an upstream inconsistency (the reference table whose own rows
// blend outside its stated band) is printed as "FAIL (expected)" and does not
// fail the run; any other failure does.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "aircov/pipeline.hpp"
#include "aircov/reports.hpp"
#include "aircov/scenario.hpp"

using namespace aircov;
namespace fs = std::filesystem;

namespace {

int unexpected_failures = 0;
int expected_failures = 0;
int passes = 0;

void report(int idx, bool ok, const std::string& msg, bool expected_fail = false) {
    if (ok) {
        ++passes;
        std::printf("PASS criterion %d: %s\n", idx, msg.c_str());
    } else if (expected_fail) {
        ++expected_failures;
        std::printf("FAIL (expected) criterion %d: %s\n", idx, msg.c_str());
    } else {
        ++unexpected_failures;
        std::printf("FAIL criterion %d: %s\n", idx, msg.c_str());
    }
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

scenario load_from(const fs::path& dir, const char* name) {
    return load_scenario(dir / name);
}

// single-triangle scenarios: the network GCR is that triangle's GCR
double run_xi(scenario sc, algorithm_kind alg, std::uint64_t seed) {
    sc.algorithm = alg;
    sc.swarm.seed = seed;
    const run_manifest mf = run_network(sc);
    if (mf.ok_count != mf.triangles.size() || mf.triangles.empty())
        throw error("acceptance run failed: " +
                    (mf.triangles.empty() ? std::string("no triangles")
                                          : mf.triangles[0].error));
    return mf.network_gcr;
}

// --- criterion 1: prism overlap closed forms and their Monte-Carlo check ----

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const double want[3] = {0.37, 1.74, 4.23};
    bool ok = true;
    std::string detail;
    const prism_kind kinds[3] = {prism_kind::tp, prism_kind::sp, prism_kind::hp};

    double zeta_eq[3];
    for (int k = 0; k < 3; ++k) {
        prism_structure ps{kinds[k], 100.0, 100.0};
        zeta_eq[k] = analytic_overlap(ps).zeta;
        if (std::abs(zeta_eq[k] - want[k]) > 0.01) {
            ok = false;
            detail += fmt(" analytic[%d]=%.6f off %.2f;", k, zeta_eq[k], want[k]);
        }
        const auto mc = monte_carlo_overlap(ps, 1000000, derive_seed(20260822u, k), 8, 1);
        if (!(mc.std_error > 0.0) ||
            std::abs(mc.zeta - zeta_eq[k]) > 3.0 * mc.std_error) {
            ok = false;
            detail += fmt(" mc[%d]=%.6f vs %.6f se %.6f;", k, mc.zeta, zeta_eq[k],
                          mc.std_error);
        }
    }
    for (double ratio : {1.1, 2.0, 5.0}) {
        double z[3];
        for (int k = 0; k < 3; ++k)
            z[k] = analytic_overlap({kinds[k], ratio * 100.0, 100.0}).zeta;
        if (!(z[0] < z[1] && z[1] < z[2])) {
            ok = false;
            detail += fmt(" ordering broken at r/H=%.1f;", ratio);
        }
    }
    const double secs = seconds_since(t0);
    if (secs >= 30.0) {
        ok = false;
        detail += fmt(" took %.1f s (bound 30);", secs);
    }
    report(1, ok,
           fmt("overlap ratios at r=H {%.6f, %.6f, %.6f} within 0.01 of {0.37, 1.74, "
               "4.23}; 1e6-sample Monte-Carlo within 3 standard errors; ordering holds "
               "at r/H in {1.1, 2, 5}; %.1f s%s",
               zeta_eq[0], zeta_eq[1], zeta_eq[2], secs, detail.c_str()));
}

// --- criterion 2: area-weighted network GCR against the reference tables ----

void criterion_2() {
    const std::vector<double> b1{0.61, 0.67, 0.66, 2.22, 0.97, 1.36, 1.56, 4.62, 2.5};
    const std::vector<double> v1{0.51, 0.85, 0.80, 0.88, 0.90, 0.91, 0.87, 0.87, 0.90};
    const std::vector<double> v2{0.84, 0.95, 0.98, 0.95, 0.95, 0.94, 0.94, 0.92, 0.93};
    const std::vector<double> b2{0.43, 2.14, 0.61, 1.31, 0.67, 0.66, 3.47, 4.89, 0.99};
    const std::vector<double> w1{0.55, 0.81, 0.51, 0.90, 0.85, 0.80, 0.80, 0.79, 0.75};
    auto blend = [](const std::vector<double>& a, const std::vector<double>& g) {
        std::vector<network_entry> e;
        for (std::size_t i = 0; i < a.size(); ++i) e.push_back({a[i], g[i]});
        return average_gcr(e);
    };
    const double s1 = blend(b1, v1), s2 = blend(b1, v2), s3 = blend(b2, w1);
    const bool a_ok = std::abs(s1 - 0.86) <= 0.005;
    const bool b_ok = s2 >= 0.93;
    const bool c_ok = std::abs(s3 - 0.78) <= 0.005;
    const bool ok = a_ok && b_ok && c_ok;
    // the third reference band is unreachable: the blend of its own rows is
    // exactly 119391/151700 = 0.787020..., outside 0.78 +/- 0.005. Reported
    // honestly rather than widening the tolerance.
    const bool only_documented_miss = a_ok && b_ok && !c_ok;
    report(2, ok,
           fmt("reference blends %.6f (in 0.86+/-0.005: %s), %.6f (>= 0.93: %s), %.6f "
               "(in 0.78+/-0.005: %s; the stated band excludes the blend of its own "
               "rows, a documented inconsistency)",
               s1, a_ok ? "yes" : "NO", s2, b_ok ? "yes" : "NO", s3,
               c_ok ? "yes" : "no"),
           only_documented_miss);
}

// --- criterion 3: swarms against the exhaustive-search oracle ---------------

void criterion_3(const fs::path& dir) {
    const auto t0 = std::chrono::steady_clock::now();
    scenario sc = load_from(dir, "benchmark3.json");
    const double xi_es = run_xi(sc, algorithm_kind::es, sc.swarm.seed);
    int slbc_ok = 0, abc_ok = 0;
    double slbc_min = 1.0, abc_min = 1.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const double xs = run_xi(sc, algorithm_kind::slbc, seed);
        const double xa = run_xi(sc, algorithm_kind::abc, seed);
        slbc_ok += xs >= 0.95 * xi_es;
        abc_ok += xa >= xi_es - 0.02;
        slbc_min = std::min(slbc_min, xs);
        abc_min = std::min(abc_min, xa);
    }
    const double secs = seconds_since(t0);
    const bool ok = slbc_ok >= 18 && abc_ok >= 18 && secs < 300.0;
    report(3, ok,
           fmt("exhaustive search xi=%.6f over 3375 combinations; slbc >= 0.95*xi in "
               "%d/20 seeds (min %.6f), abc >= xi-0.02 in %d/20 seeds (min %.6f); "
               "%.0f s (bound 300)",
               xi_es, slbc_ok, slbc_min, abc_ok, abc_min, secs));
}

// --- criterion 4: constrained pairing at a tight overlap cap ----------------

void criterion_4(const fs::path& dir) {
    scenario sc = load_from(dir, "benchmark3.json");
    sc.rf.overlap_cap = 0.0001;
    int pairs_ok = 0;
    double worst_gap = 1.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const double xs = run_xi(sc, algorithm_kind::slbc, seed);
        const double xa = run_xi(sc, algorithm_kind::abc, seed);
        pairs_ok += xa >= xs - 0.02;
        worst_gap = std::min(worst_gap, xa - xs);
    }
    report(4, pairs_ok >= 18,
           fmt("overlap cap 1e-4: abc >= slbc - 0.02 in %d/20 paired seeds (worst "
               "abc-slbc gap %.4f)",
               pairs_ok, worst_gap));
}

// --- criterion 5: nine-station network against the downtilt baseline --------

struct band_counts {
    std::size_t total = 0, covered = 0;
};

band_counts low_band(const run_manifest& mf) {
    band_counts bc;
    for (const auto& tr : mf.triangles) {
        if (!tr.ok) continue;
        for (const auto& ls : tr.sol.report.per_layer)
            if (ls.z_low == 0.0) {
                bc.total += ls.n_total;
                bc.covered += ls.n_covered;
            }
    }
    return bc;
}

void criterion_5(const fs::path& dir) {
    scenario sc = load_from(dir, "network9.json");
    const run_manifest base = run_network(sc, algorithm_kind::downtilt, sc.triangulation);
    const run_manifest opt = run_network(sc, algorithm_kind::slbc, sc.triangulation);
    const double uplift = base.network_gcr > 0.0 ? opt.network_gcr / base.network_gcr : 1e9;
    const band_counts lb = low_band(base), lo = low_band(opt);
    const double base_low = lb.total ? double(lb.covered) / double(lb.total) : 0.0;
    const double opt_low = lo.total ? double(lo.covered) / double(lo.total) : 0.0;
    const bool ok = base.ok_count == base.triangles.size() &&
                    opt.ok_count == opt.triangles.size() && uplift >= 1.5 &&
                    opt_low >= base_low - 0.02;
    report(5, ok,
           fmt("nine stations, %zu cooperation sets: slbc rho=%.4f vs baseline "
               "rho=%.4f (uplift %.2fx, need >= 1.5x); (0-50) m band gcr %.4f vs "
               "baseline %.4f (regression %.4f, cap 0.02)",
               opt.triangles.size(), opt.network_gcr, base.network_gcr, uplift,
               opt_low, base_low, std::max(0.0, base_low - opt_low)));
}

// --- criterion 6: threshold and ceiling sweeps ------------------------------

void criterion_6(const fs::path& dir) {
    scenario sc = load_from(dir, "wide_area.json");
    const run_manifest mf = run_network(sc);
    bool ok = mf.ok_count == 1;
    std::string detail;

    // fixed solution, stepped threshold: coverage can only shrink as tau rises
    const auto tris = delaunay_triangulate(sc.stations);
    const auto grid = build_voxel_grid(make_prism(tris.at(0), sc.h_max, sc.layer_bounds),
                                       sc.voxel_resolution);
    const auto st = detail::stations_for(sc.stations, tris.at(0).vertex_ids);
    double prev = 2.0;
    std::string sweep;
    for (double tau : {-100.0, -95.0, -90.0, -85.0, -80.0}) {
        rf_params rf = sc.rf;
        rf.tau_dbm = tau;
        coverage_evaluator ev(grid, st, rf, {}, sc.swarm.threads);
        const double g = ev.evaluate(mf.triangles.at(0).sol.beams).gcr;
        sweep += fmt(" %.4f", g);
        if (g > prev + 1e-12) {
            ok = false;
            detail += fmt(" gcr rose at tau=%.0f;", tau);
        }
        prev = g;
    }

    // re-optimized at three ceilings: total decline under 10 points
    double lo = 1.0, hi = 0.0;
    std::string ceilings;
    for (double h : {100.0, 200.0, 300.0}) {
        scenario sh = sc;
        sh.h_max = h;
        const double xi = run_xi(sh, algorithm_kind::slbc, sh.swarm.seed);
        ceilings += fmt(" %.4f", xi);
        lo = std::min(lo, xi);
        hi = std::max(hi, xi);
    }
    if (hi - lo >= 0.10) {
        ok = false;
        detail += fmt(" ceiling spread %.4f >= 0.10;", hi - lo);
    }
    report(6, ok,
           fmt("fixed-solution gcr over tau {-100..-80}:%s (non-increasing); "
               "re-optimized gcr over h_max {100, 200, 300}:%s (spread %.4f < 0.10)%s",
               sweep.c_str(), ceilings.c_str(), hi - lo, detail.c_str()));
}

// --- criterion 7: the overlap cap is honored exactly at every level ---------

void criterion_7(const fs::path& dir) {
    scenario base = load_from(dir, "equilateral3.json");
    base.rf.tau_dbm = -45.0;  // tighten so overlap is actually contended
    bool ok = true;
    std::string detail;
    for (double cap : {1e-5, 1e-4, 1e-2}) {
        scenario sc = base;
        sc.rf.overlap_cap = cap;
        const run_manifest mf = run_network(sc, algorithm_kind::slbc, sc.triangulation);
        if (mf.ok_count != 1) {
            ok = false;
            detail += fmt(" T=%g: run failed;", cap);
            continue;
        }
        const triangle_run& tr = mf.triangles.at(0);
        // re-evaluate the returned beams from scratch with a fresh evaluator
        const auto tris = delaunay_triangulate(sc.stations);
        const auto grid = build_voxel_grid(
            make_prism(tris.at(0), sc.h_max, sc.layer_bounds), sc.voxel_resolution);
        const auto st = detail::stations_for(sc.stations, tris.at(0).vertex_ids);
        coverage_evaluator ev(grid, st, sc.rf, {}, sc.swarm.threads);
        const coverage_report rep = ev.evaluate(tr.sol.beams);
        if (!(rep.cor <= cap) || rep.cor != tr.sol.report.cor || !tr.sol.feasible) {
            ok = false;
            detail += fmt(" T=%g: recomputed cor %.8f (reported %.8f);", cap, rep.cor,
                          tr.sol.report.cor);
        }
        detail += fmt(" T=%g: gcr %.4f cor %.6f;", cap, rep.gcr, rep.cor);
    }
    report(7, ok, "returned solutions re-evaluated from scratch keep cor <= T at "
                  "T in {1e-5, 1e-4, 1e-2}:" + detail);
}

// --- criterion 8: byte-identical manifests through the CLI ------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return "<missing " + p.string() + ">";
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion_8(const std::string& cli, const fs::path& dir) {
    const fs::path tmp =
        fs::temp_directory_path() /
        ("aircov_accept_" +
         std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    fs::create_directories(tmp);
    const std::string scen = (dir / "equilateral3.json").string();
    auto run_cli = [&](const char* sub, const std::string& extra) {
        const fs::path out = tmp / sub;
        const std::string cmd = "\"" + cli + "\" optimize --scenario \"" + scen +
                                "\" --out \"" + out.string() + "\" " + extra +
                                " > /dev/null 2>&1";
        return std::system(cmd.c_str()) == 0 ? slurp(out / "manifest.json")
                                             : "<cli failed: " + cmd + ">";
    };
    const std::string a = run_cli("a", "");
    const std::string b = run_cli("b", "");
    const std::string c = run_cli("c", "--threads 8");
    const bool ok = !a.empty() && a.rfind("<", 0) != 0 && a == b && a == c;
    report(8, ok,
           fmt("CLI manifests byte-identical across repeated runs (%s) and across "
               "1-vs-8 worker threads (%s); %zu bytes",
               a == b ? "yes" : "NO", a == c ? "yes" : "NO", a.size()));
    fs::remove_all(tmp);
}

// --- criterion 9: Delaunay properties and planning benefit ------------------

bool empty_circumcircle_holds(const std::vector<triangle_region>& tris,
                              const std::vector<base_station>& stations) {
    for (const auto& t : tris) {
        const auto cc = circumcircle(t);
        for (const auto& s : stations) {
            if (s.id == t.vertex_ids[0] || s.id == t.vertex_ids[1] ||
                s.id == t.vertex_ids[2])
                continue;
            if (std::hypot(s.x - cc.center.x, s.y - cc.center.y) <
                cc.radius * (1.0 - 1e-9))
                return false;
        }
    }
    return true;
}

void criterion_9(const fs::path& dir) {
    rng r(4150u);
    int topologies_ok = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<base_station> st;
        for (int i = 0; i < 20; ++i)
            st.push_back({i + 1, r.uniform(0.0, 10000.0), r.uniform(0.0, 10000.0), 30.0});
        const auto tris = delaunay_triangulate(st);
        topologies_ok += !tris.empty() && empty_circumcircle_holds(tris, st);
    }

    scenario sc = load_from(dir, "network9.json");
    int dt_wins = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        sc.swarm.seed = seed;
        const run_manifest dt = run_network(sc, algorithm_kind::slbc,
                                            triangulation_mode::delaunay);
        const run_manifest rt = run_network(sc, algorithm_kind::slbc,
                                            triangulation_mode::random);
        dt_wins += dt.network_gcr >= rt.network_gcr - 1e-12;
    }
    report(9, topologies_ok == 50 && dt_wins >= 15,
           fmt("empty-circumcircle property on %d/50 random 20-station topologies; "
               "Delaunay rho >= random rho in %d/20 seeds (need 15)",
               topologies_ok, dt_wins));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: aircov_acceptance <cli-binary> <scenarios-dir>\n");
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path dir = argv[2];
    const auto t0 = std::chrono::steady_clock::now();
    try {
        criterion_1();
        criterion_2();
        criterion_3(dir);
        criterion_4(dir);
        criterion_5(dir);
        criterion_6(dir);
        criterion_7(dir);
        criterion_8(cli, dir);
        criterion_9(dir);
    } catch (const std::exception& e) {
        std::printf("FAIL acceptance aborted: %s\n", e.what());
        return 1;
    }
    std::printf("acceptance: %d pass, %d expected fail, %d unexpected fail (%.0f s)\n",
                passes, expected_failures, unexpected_failures, seconds_since(t0));
    return unexpected_failures == 0 ? 0 : 1;
}
