#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "aircov/coverage.hpp"
#include "aircov/rng.hpp"
#include "fixtures.hpp"

using namespace aircov;
using Catch::Approx;

namespace {

voxel_grid small_grid(double side = 400.0, double h_max = 120.0, double res = 40.0) {
    triangle_region t;
    t.vertex_ids = {1, 2, 3};
    t.vertices = {vec2{0.0, 0.0}, vec2{side, 0.0}, vec2{side / 2, side * 0.866}};
    return build_voxel_grid(make_prism(t, h_max), res);
}

rf_params bench_rf(double tau = -60.0) {
    rf_params rf;
    rf.tau_dbm = tau;
    return rf;
}

beam_set three_beams(double tilt = 12.0) {
    const base_station s1{1, 0.0, 0.0, 30.0}, s2{2, 400.0, 0.0, 30.0},
        s3{3, 200.0, 346.4, 30.0};
    return {
        {s1, beam_config(65.0, 25.0, tilt, 60.0)},
        {s2, beam_config(65.0, 25.0, tilt, 120.0)},
        {s3, beam_config(65.0, 25.0, tilt, 270.0)},
    };
}

}  // namespace

TEST_CASE("is_covered: threshold is inclusive") {
    const auto rf0 = bench_rf();
    const base_station s{1, 0.0, 0.0, 30.0};
    const beam_config b(65.0, 25.0, 10.0, 0.0);
    const vec3 v{300.0, 40.0, 90.0};
    const double p = received_power_dbm(s, b, v, rf0.tx_power_dbm, rf0.channel);

    rf_params rf = rf0;
    rf.tau_dbm = p;  // exactly at threshold
    CHECK(is_covered(v, {{s, b}}, rf));
    rf.tau_dbm = std::nextafter(p, 1e9);
    CHECK_FALSE(is_covered(v, {{s, b}}, rf));
}

TEST_CASE("is_overlapped: distinct stations required") {
    rf_params rf = bench_rf(-200.0);  // everything in range
    const base_station s1{1, 0.0, 0.0, 30.0}, s2{2, 500.0, 0.0, 30.0},
        s3{3, 0.0, 500.0, 30.0};
    const beam_config b(90.0, 25.0, 10.0, 45.0);
    const vec3 v{250.0, 250.0, 100.0};

    CHECK(is_covered(v, {{s1, b}}, rf));
    CHECK_FALSE(is_overlapped(v, {{s1, b}}, rf));
    // two beams of the same station never overlap
    CHECK_FALSE(is_overlapped(v, {{s1, b}, {s1, beam_config(25.0, 25.0, 45.0, 0.0)}}, rf));
    CHECK(is_overlapped(v, {{s1, b}, {s2, b}}, rf));
    CHECK(is_overlapped(v, {{s1, b}, {s2, b}, {s3, b}}, rf));

    rf.tau_dbm = 1e9;
    CHECK_FALSE(is_covered(v, {{s1, b}, {s2, b}}, rf));
    CHECK_FALSE(is_overlapped(v, {{s1, b}, {s2, b}}, rf));
}

TEST_CASE("evaluate: zero beams and full coverage extremes") {
    const auto grid = small_grid();
    const auto rep0 = evaluate(grid, {}, bench_rf());
    CHECK(rep0.n_total == grid.size());
    CHECK(rep0.n_covered == 0);
    CHECK(rep0.gcr == 0.0);
    CHECK(rep0.cor == 0.0);

    // one very permissive beam: everything covered, nothing overlapped
    rf_params rf = bench_rf(-200.0);
    const beam_set one{{base_station{1, 200.0, 115.0, 30.0},
                        beam_config(179.0, 179.0, 0.0, 0.0)}};
    const auto rep1 = evaluate(grid, one, rf);
    CHECK(rep1.gcr == 1.0);
    CHECK(rep1.cor == 0.0);
    CHECK(rep1.n_covered == rep1.n_total);
}

TEST_CASE("evaluate: exact agreement with the per-voxel brute force") {
    const auto grid = small_grid(400.0, 120.0, 25.0);
    REQUIRE(grid.size() <= 10000);
    const auto rf = bench_rf(-50.0);
    // one beam into the region, two aimed outward: mixed coverage states
    const base_station s1{1, 0.0, 0.0, 30.0}, s2{2, 400.0, 0.0, 30.0},
        s3{3, 200.0, 346.4, 30.0};
    const beam_set beams{
        {s1, beam_config(65.0, 25.0, 12.0, 60.0)},
        {s2, beam_config(25.0, 25.0, 5.0, 300.0)},
        {s3, beam_config(25.0, 25.0, 5.0, 90.0)},
    };

    std::size_t cov = 0, over = 0;
    for (const auto& v : grid.centers) {
        if (is_covered(v, beams, rf)) ++cov;
        if (is_overlapped(v, beams, rf)) ++over;
    }

    const auto rep = evaluate(grid, beams, rf);
    CHECK(rep.n_covered == cov);
    CHECK(rep.n_overlapped == over);
    CHECK(rep.gcr == static_cast<double>(cov) / static_cast<double>(grid.size()));
    CHECK(rep.cor == static_cast<double>(over) / static_cast<double>(grid.size()));
    REQUIRE(cov > 0);              // the configuration is not degenerate
    REQUIRE(over < cov);           // nor fully overlapped
    REQUIRE(cov < grid.size());    // nor fully covered
    REQUIRE(over > 0);             // and overlap is present
}

TEST_CASE("evaluate: repeated station ids fold into one covering station") {
    const auto grid = small_grid();
    rf_params rf = bench_rf(-200.0);
    const base_station s1{1, 200.0, 115.0, 30.0};
    beam_set twice{{s1, beam_config(179.0, 179.0, 45.0, 0.0)},
                   {s1, beam_config(179.0, 179.0, 45.0, 180.0)}};
    const auto rep = evaluate(grid, twice, rf);
    CHECK(rep.gcr == 1.0);
    CHECK(rep.cor == 0.0);
}

TEST_CASE("evaluate: cor <= gcr and layer sums reconcile") {
    const auto grid = small_grid(400.0, 120.0, 20.0);
    rng r(5150u);
    for (int trial = 0; trial < 10; ++trial) {
        auto beams = three_beams(r.uniform(-30.0, 60.0));
        const auto rf = bench_rf(r.uniform(-75.0, -50.0));
        const auto rep =
            evaluate(grid, beams, rf, {{0.0, 40.0}, {40.0, 80.0}, {80.0, 120.0}});
        CHECK(rep.cor <= rep.gcr);
        CHECK(rep.n_overlapped <= rep.n_covered);
        CHECK(rep.n_covered <= rep.n_total);
        REQUIRE(rep.per_layer.size() == 3);
        std::size_t lt = 0, lc = 0;
        for (const auto& ls : rep.per_layer) {
            lt += ls.n_total;
            lc += ls.n_covered;
            if (ls.n_total > 0)
                CHECK(ls.gcr == static_cast<double>(ls.n_covered) /
                                    static_cast<double>(ls.n_total));
        }
        CHECK(lt == rep.n_total);
        CHECK(lc == rep.n_covered);
    }
}

TEST_CASE("evaluate: gcr monotone non-increasing in tau") {
    const auto grid = small_grid(400.0, 120.0, 20.0);
    const auto beams = three_beams();
    double prev = 1.1;
    for (double tau : {-100.0, -90.0, -80.0, -70.0, -65.0, -60.0, -55.0, -50.0, -30.0}) {
        const auto rep = evaluate(grid, beams, bench_rf(tau));
        CHECK(rep.gcr <= prev);
        prev = rep.gcr;
    }
}

TEST_CASE("evaluate: adding a beam never lowers gcr or cor") {
    const auto grid = small_grid(400.0, 120.0, 20.0);
    const auto rf = bench_rf(-62.0);
    beam_set beams;
    const auto all = three_beams(18.0);
    double g = -1.0, c = -1.0;
    for (const auto& sb : all) {
        beams.push_back(sb);
        const auto rep = evaluate(grid, beams, rf);
        CHECK(rep.gcr >= g);
        CHECK(rep.cor >= c);
        g = rep.gcr;
        c = rep.cor;
    }
}

TEST_CASE("evaluator: parallel evaluation is bit-identical to serial") {
    const auto grid = small_grid(400.0, 120.0, 15.0);
    const auto rf = bench_rf(-61.5);
    const auto beams = three_beams(9.0);

    std::vector<base_station> stations;
    std::vector<std::pair<int, beam_config>> assign;
    for (const auto& sb : beams) {
        stations.push_back(sb.station);
        assign.emplace_back(sb.station.id, sb.beam);
    }
    const std::vector<std::pair<double, double>> layers{{0.0, 60.0}, {60.0, 120.0}};
    const coverage_evaluator serial(grid, stations, rf, layers, 1);
    const coverage_evaluator wide(grid, stations, rf, layers, 8);
    const auto a = serial.evaluate(assign);
    const auto b = wide.evaluate(assign);
    CHECK(a.n_covered == b.n_covered);
    CHECK(a.n_overlapped == b.n_overlapped);
    CHECK(a.gcr == b.gcr);
    CHECK(a.cor == b.cor);
    REQUIRE(a.per_layer.size() == b.per_layer.size());
    for (std::size_t i = 0; i < a.per_layer.size(); ++i) {
        CHECK(a.per_layer[i].n_total == b.per_layer[i].n_total);
        CHECK(a.per_layer[i].n_covered == b.per_layer[i].n_covered);
    }
}

TEST_CASE("objective: overlap cap partitions configurations") {
    const auto grid = small_grid(400.0, 120.0, 20.0);

    rf_params rf = bench_rf(-200.0);  // huge range: three stations all cover all
    const auto beams = three_beams();
    rf.overlap_cap = 1.0;
    CHECK(objective(grid, beams, rf).feasible);  // T = 1 is vacuous

    rf.overlap_cap = 0.0;
    const auto o0 = objective(grid, beams, rf);
    CHECK(o0.cor > 0.0);
    CHECK_FALSE(o0.feasible);

    // boundary: cap exactly at the achieved cor is feasible
    rf.overlap_cap = o0.cor;
    CHECK(objective(grid, beams, rf).feasible);

    // single beam: cor = 0, feasible even at T = 0
    rf.overlap_cap = 0.0;
    const beam_set one{{base_station{1, 200.0, 115.0, 30.0},
                        beam_config(179.0, 179.0, 0.0, 0.0)}};
    CHECK(objective(grid, one, rf).feasible);
}

TEST_CASE("objective: a tight cap separates two hand-built configurations") {
    const auto grid = small_grid(400.0, 120.0, 20.0);
    rf_params rf = bench_rf(-200.0);
    rf.overlap_cap = 0.0001;
    CHECK_FALSE(objective(grid, three_beams(), rf).feasible);
    const beam_set one{{base_station{1, 200.0, 115.0, 30.0},
                        beam_config(179.0, 179.0, 0.0, 0.0)}};
    CHECK(objective(grid, one, rf).feasible);
}

TEST_CASE("average_gcr: arithmetic mean under equal areas") {
    CHECK(average_gcr({{2.0, 0.4}, {2.0, 0.8}}) == Approx(0.6));
    CHECK(average_gcr({{1.0, 0.9}}) == Approx(0.9));
    CHECK_THROWS_AS(average_gcr({}), empty_input);
    CHECK_THROWS_AS(average_gcr({{0.0, 0.5}}), validation_error);
    CHECK_THROWS_AS(average_gcr({{-1.0, 0.5}}), validation_error);
}

TEST_CASE("average_gcr: reference network tables") {
    // area-weighted means frozen by exact fraction arithmetic before the build
    const std::vector<double> b1{0.61, 0.67, 0.66, 2.22, 0.97, 1.36, 1.56, 4.62, 2.5};
    const std::vector<double> v1{0.51, 0.85, 0.80, 0.88, 0.90, 0.91, 0.87, 0.87, 0.90};
    const std::vector<double> v2{0.84, 0.95, 0.98, 0.95, 0.95, 0.94, 0.94, 0.92, 0.93};
    std::vector<network_entry> e1, e2;
    for (std::size_t i = 0; i < b1.size(); ++i) {
        e1.push_back({b1[i], v1[i]});
        e2.push_back({b1[i], v2[i]});
    }
    CHECK(average_gcr(e1) == Approx(0.8635069216).margin(1e-9));
    CHECK(average_gcr(e2) == Approx(0.9325247198).margin(1e-9));
    CHECK(average_gcr(e2) >= 0.93);

    const std::vector<double> b2{0.43, 2.14, 0.61, 1.31, 0.67, 0.66, 3.47, 4.89, 0.99};
    const std::vector<double> w1{0.55, 0.81, 0.51, 0.90, 0.85, 0.80, 0.80, 0.79, 0.75};
    std::vector<network_entry> e3;
    for (std::size_t i = 0; i < b2.size(); ++i) e3.push_back({b2[i], w1[i]});
    CHECK(average_gcr(e3) == Approx(0.7870204351).margin(1e-9));

    // bounded by the extremes of its inputs
    CHECK(average_gcr(e1) >= 0.51);
    CHECK(average_gcr(e1) <= 0.91);
}

TEST_CASE("evaluator: errors") {
    const auto grid = small_grid();
    CHECK_THROWS_AS(coverage_evaluator(grid, {}, bench_rf()), validation_error);
    const auto beams = three_beams();
    std::vector<base_station> stations;
    for (const auto& sb : beams) stations.push_back(sb.station);
    const coverage_evaluator ev(grid, stations, bench_rf());
    CHECK_THROWS_AS(ev.evaluate({{99, beam_config()}}), validation_error);
}
