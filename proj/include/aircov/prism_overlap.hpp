// aircov: ground-to-air coverage planning for terrestrial cellular networks
// SPDX-License-Identifier: MIT
// Copyright (c) 2026 aircov contributors
//
// Executable overlap analysis for regular prism airspace structures:
// closed-form inter-region overlap ratios for triangular/square/hexagonal
// prisms, a Monte-Carlo volume oracle over the same geometric decomposition,
// and the longest-edge overlap indicator for triangle regions.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "aircov/common.hpp"
#include "aircov/geometry.hpp"
#include "aircov/parallel.hpp"
#include "aircov/rng.hpp"

namespace aircov {

enum class prism_kind { tp, sp, hp };  // triangular / square / hexagonal prism

/// Regular prism cell of height H inside a spherical coverage region of
/// radius r. The site spacing is fixed by the structure: d1 = r,
/// d2 = sqrt(2)r/2, d3 = r/2. Premise: 0 < H <= r.
struct prism_structure {
    prism_kind kind = prism_kind::tp;
    double r = 1.0;
    double h = 1.0;

    double site_spacing() const {
        switch (kind) {
            case prism_kind::tp: return r;
            case prism_kind::sp: return std::sqrt(2.0) * r / 2.0;
            case prism_kind::hp: return r / 2.0;
        }
        return r;
    }

    void check_premise() const {
        if (!(r > 0.0) || !(h > 0.0)) throw premise_violated("r and H must be positive");
        if (h > r) throw premise_violated("premise requires H <= r");
    }
};

enum class overlap_method { analytic, monte_carlo };

struct overlap_result {
    double zeta = 0.0;
    overlap_method method = overlap_method::analytic;
    std::size_t sample_count = 0;  // Monte-Carlo only
    double std_error = 0.0;        // Monte-Carlo only
};

/// Closed forms: zeta1 = (16*sqrt(3)-27)*pi*r/(6H), zeta2 = 4(sqrt(2)-1)*pi*r/(3H),
/// zeta3 = 7*pi*r/(3*sqrt(3)*H); each exactly linear in r/H.
inline overlap_result analytic_overlap(const prism_structure& s) {
    s.check_premise();
    const double ratio = s.r / s.h;
    double zeta = 0.0;
    switch (s.kind) {
        case prism_kind::tp:
            zeta = (16.0 * std::sqrt(3.0) - 27.0) * pi * ratio / 6.0;
            break;
        case prism_kind::sp:
            zeta = 4.0 * (std::sqrt(2.0) - 1.0) * pi * ratio / 3.0;
            break;
        case prism_kind::hp:
            zeta = 7.0 * pi * ratio / (3.0 * std::sqrt(3.0));
            break;
    }
    return {zeta, overlap_method::analytic, 0, 0.0};
}

namespace detail {

/// One solid of the overlap decomposition, sampled uniformly in its own
/// axis-aligned bounding box. Volumes combine with +/-1 multipliers.
struct mc_solid {
    enum class shape { spherical_cap, cone, cylinder };
    shape form = shape::spherical_cap;
    double a = 0.0;  // cap: sphere radius; cone/cylinder: base radius
    double b = 0.0;  // cap: cap height; cone/cylinder: height
    double sign = 1.0;

    double box_volume() const {
        switch (form) {
            case shape::spherical_cap: {
                const double zmin = a - b;
                const double rc = std::sqrt(a * a - zmin * zmin);
                return (2.0 * rc) * (2.0 * rc) * b;
            }
            case shape::cone:
            case shape::cylinder:
                return (2.0 * a) * (2.0 * a) * b;
        }
        return 0.0;
    }

    bool inside(double x, double y, double z) const {
        switch (form) {
            case shape::spherical_cap:
                return x * x + y * y + z * z <= a * a && z >= a - b;
            case shape::cone:
                return std::hypot(x, y) <= a * (1.0 - z / b);
            case shape::cylinder:
                return std::hypot(x, y) <= a;
        }
        return false;
    }

    void sample_point(rng& g, double& x, double& y, double& z) const {
        switch (form) {
            case shape::spherical_cap: {
                const double zmin = a - b;
                const double rc = std::sqrt(a * a - zmin * zmin);
                x = g.uniform(-rc, rc);
                y = g.uniform(-rc, rc);
                z = g.uniform(zmin, a);
                return;
            }
            case shape::cone:
            case shape::cylinder:
                x = g.uniform(-a, a);
                y = g.uniform(-a, a);
                z = g.uniform(0.0, b);
                return;
        }
    }
};

/// Per-cell decomposition from the proof: arched solids per cell corner,
/// multiplied by the corner count, normalized by the prism cell volume.
struct mc_plan {
    std::vector<mc_solid> solids;
    double multiplier = 0.0;
    double cell_volume = 0.0;
};

inline mc_plan make_mc_plan(const prism_structure& s) {
    using shape = mc_solid::shape;
    mc_plan plan;
    switch (s.kind) {
        case prism_kind::tp: {
            const double d1 = s.r;
            const double cap_h = d1 * (1.0 - std::sqrt(3.0) / 2.0);
            plan.solids = {{shape::spherical_cap, s.r, cap_h, 1.0}};
            plan.multiplier = 3.0;
            plan.cell_volume = std::sqrt(3.0) / 4.0 * d1 * d1 * s.h;
            break;
        }
        case prism_kind::sp: {
            const double d2 = std::sqrt(2.0) * s.r / 2.0;
            const double a2 = d2 * (std::sqrt(2.0) - 1.0);
            plan.solids = {{shape::spherical_cap, s.r, a2, 1.0},
                           {shape::cone, a2, a2, -1.0}};
            plan.multiplier = 4.0;
            plan.cell_volume = d2 * d2 * s.h;
            break;
        }
        case prism_kind::hp: {
            const double d3 = s.r / 2.0;
            // the subtracted mid solid carries a cylinder volume form
            plan.solids = {{shape::spherical_cap, s.r, d3, 1.0},
                           {shape::cylinder, std::sqrt(3.0) * d3 / 2.0, d3 / 2.0, -1.0},
                           {shape::cylinder, std::sqrt(3.0) * d3 / 2.0, d3 / 6.0, -1.0}};
            plan.multiplier = 6.0;
            plan.cell_volume = 3.0 * std::sqrt(3.0) / 2.0 * d3 * d3 * s.h;
            break;
        }
    }
    return plan;
}

}  // namespace detail

/// Uniform-sampling volume oracle over the analytic decomposition. Each solid
/// receives the full n_samples budget; per-solid standard errors combine in
/// quadrature. The budget may be split into partitions with derived
/// per-partition seeds; hit counts are integers, so the estimate depends only
/// on (seed, partitions), never on the worker thread count.
inline overlap_result monte_carlo_overlap(const prism_structure& s, std::size_t n_samples,
                                          std::uint64_t seed, int partitions = 1,
                                          int threads = 1) {
    s.check_premise();
    if (n_samples < 10000)
        throw validation_error("monte_carlo_overlap needs at least 10^4 samples");
    if (partitions < 1) throw validation_error("partition count must be positive");

    const auto plan = detail::make_mc_plan(s);
    const std::size_t n_solids = plan.solids.size();
    const auto parts = static_cast<std::size_t>(partitions);

    // per-partition sample counts: even split, remainder on the first chunks
    std::vector<std::size_t> part_n(parts, n_samples / parts);
    for (std::size_t i = 0; i < n_samples % parts; ++i) ++part_n[i];

    std::vector<std::uint64_t> hits(parts * n_solids, 0);
    parallel_chunks(parts, threads, [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p < hi; ++p)
            for (std::size_t si = 0; si < n_solids; ++si) {
                rng g(derive_seed(seed, p, si));
                const auto& solid = plan.solids[si];
                std::uint64_t h = 0;
                double x, y, z;
                for (std::size_t k = 0; k < part_n[p]; ++k) {
                    solid.sample_point(g, x, y, z);
                    if (solid.inside(x, y, z)) ++h;
                }
                hits[p * n_solids + si] = h;
            }
    });

    double volume = 0.0, var = 0.0;
    for (std::size_t si = 0; si < n_solids; ++si) {
        std::uint64_t total_hits = 0;
        for (std::size_t p = 0; p < parts; ++p) total_hits += hits[p * n_solids + si];
        const double frac =
            static_cast<double>(total_hits) / static_cast<double>(n_samples);
        const double box = plan.solids[si].box_volume();
        volume += plan.solids[si].sign * box * frac;
        const double se = box * std::sqrt(frac * (1.0 - frac) /
                                          static_cast<double>(n_samples));
        var += se * se;
    }

    overlap_result res;
    res.method = overlap_method::monte_carlo;
    res.sample_count = n_samples;
    res.zeta = plan.multiplier * volume / plan.cell_volume;
    res.std_error = plan.multiplier * std::sqrt(var) / plan.cell_volume;
    return res;
}

/// Total sector coverage area of the three corner antennas: sum of
/// n_i * pi * R^2 / 360 over the inner angles, which collapses to pi*R^2/2.
inline double triangle_coverage_area(const triangle_region& t, double radius) {
    if (!(radius > 0.0)) throw validation_error("coverage radius must be positive");
    const auto m = triangle_metrics(t);
    double area = 0.0;
    for (double a : m.angles_deg) area += a * pi * radius * radius / 360.0;
    return area;
}

/// Relative excess of the corner-sector coverage area over the triangle area,
/// with radiation radius R = L/2 (half the longest edge). Monotone increasing
/// in L at fixed triangle area; may be negative.
inline double longest_edge_overlap_ratio(const triangle_region& t) {
    const auto m = triangle_metrics(t);
    const double sector = 0.5 * pi * (m.longest_edge / 2.0) * (m.longest_edge / 2.0);
    return (sector - m.area) / m.area;
}

}  // namespace aircov
