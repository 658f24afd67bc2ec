// aircov: ground-to-air coverage planning for terrestrial cellular networks
//
// Station topologies, plan triangulations, prism airspaces and voxel grids.
//
// SPDX-License-Identifier: MIT
// Copyright (c) 2026 aircov contributors

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "aircov/common.hpp"
#include "aircov/rng.hpp"

namespace aircov {

struct base_station {
    int id = 0;
    double x = 0.0, y = 0.0;  // plan position, m
    double z = 0.0;           // antenna height above ground, m
};

/// One cooperation set: a triangle of three stations, identified by the
/// sorted station ids. Vertices are stored in id order.
struct triangle_region {
    std::array<int, 3> vertex_ids{};
    std::array<vec2, 3> vertices{};
};

struct triangle_metrics_t {
    std::array<double, 3> angles_deg{};  // per vertex, in id order
    double area = 0.0;                   // m^2
    double longest_edge = 0.0;           // m
};

namespace detail {

inline double tri_signed_area(vec2 a, vec2 b, vec2 c) {
    return 0.5 * cross(b - a, c - a);
}

}  // namespace detail

/// Inner angles (degrees), area and longest edge of a triangle.
/// Throws degenerate_triangle when the vertices are collinear or repeated.
inline triangle_metrics_t triangle_metrics(const triangle_region& tri) {
    const auto& v = tri.vertices;
    const double area2 = std::abs(cross(v[1] - v[0], v[2] - v[0]));
    if (area2 <= 0.0)
        throw degenerate_triangle("triangle " + std::to_string(tri.vertex_ids[0]) + "-" +
                                  std::to_string(tri.vertex_ids[1]) + "-" +
                                  std::to_string(tri.vertex_ids[2]) + " has zero area");
    triangle_metrics_t m;
    m.area = 0.5 * area2;
    for (int i = 0; i < 3; ++i) {
        const vec2 e1 = v[(i + 1) % 3] - v[i];
        const vec2 e2 = v[(i + 2) % 3] - v[i];
        const double c = std::clamp(dot(e1, e2) / (norm(e1) * norm(e2)), -1.0, 1.0);
        m.angles_deg[i] = rad2deg(std::acos(c));
        m.longest_edge = std::max(m.longest_edge, norm(v[(i + 1) % 3] - v[i]));
    }
    return m;
}

/// Edge-inclusive point-in-triangle test (consistent sign of the three edge
/// cross products; exact at the boundary, no epsilon).
inline bool point_in_triangle(vec2 p, const triangle_region& tri) {
    const auto& v = tri.vertices;
    const double d0 = cross(v[1] - v[0], p - v[0]);
    const double d1 = cross(v[2] - v[1], p - v[1]);
    const double d2 = cross(v[0] - v[2], p - v[2]);
    const bool any_neg = d0 < 0 || d1 < 0 || d2 < 0;
    const bool any_pos = d0 > 0 || d1 > 0 || d2 > 0;
    return !(any_neg && any_pos);
}

/// Circumcircle of a triangle. Throws degenerate_triangle on collinear input.
struct circumcircle_t {
    vec2 center;
    double radius = 0.0;
};

inline circumcircle_t circumcircle(const triangle_region& tri) {
    const vec2 a = tri.vertices[0], b = tri.vertices[1], c = tri.vertices[2];
    const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if (d == 0.0) throw degenerate_triangle("collinear vertices have no circumcircle");
    const double a2 = a.x * a.x + a.y * a.y;
    const double b2 = b.x * b.x + b.y * b.y;
    const double c2 = c.x * c.x + c.y * c.y;
    circumcircle_t cc;
    cc.center.x = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    cc.center.y = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    cc.radius = norm(a - cc.center);
    return cc;
}

// ------------------------------------------------------------ triangulation

namespace detail {

// incircle predicate on translated coordinates, long double accumulation.
// Returns > 0 when p lies strictly inside the circumcircle of (a, b, c)
// given CCW orientation.
inline long double incircle(vec2 a, vec2 b, vec2 c, vec2 p) {
    const long double ax = a.x - p.x, ay = a.y - p.y;
    const long double bx = b.x - p.x, by = b.y - p.y;
    const long double cx = c.x - p.x, cy = c.y - p.y;
    const long double a2 = ax * ax + ay * ay;
    const long double b2 = bx * bx + by * by;
    const long double c2 = cx * cx + cy * cy;
    return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
}

struct idx_tri {
    std::array<int, 3> v;  // indices into the working point list, CCW
};

inline void check_station_preconditions(const std::vector<base_station>& stations) {
    if (stations.size() < 3)
        throw insufficient_stations("triangulation requires at least 3 stations, got " +
                                    std::to_string(stations.size()));
    for (std::size_t i = 0; i < stations.size(); ++i)
        for (std::size_t j = i + 1; j < stations.size(); ++j)
            if (stations[i].x == stations[j].x && stations[i].y == stations[j].y)
                throw degenerate_topology("stations " + std::to_string(stations[i].id) +
                                          " and " + std::to_string(stations[j].id) +
                                          " share the same plan position");
}

// Bowyer-Watson over the station plan positions. Deterministic: insertion in
// input order, boundary polygon in sorted-edge order.
inline std::vector<idx_tri> bowyer_watson(const std::vector<vec2>& pts) {
    const std::size_t n = pts.size();
    double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
    for (const auto& p : pts) {
        min_x = std::min(min_x, p.x); max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y); max_y = std::max(max_y, p.y);
    }
    const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
    const vec2 mid{(min_x + max_x) / 2, (min_y + max_y) / 2};

    std::vector<vec2> work = pts;
    // Super-triangle far enough out that its circumcircles cover everything.
    work.push_back({mid.x - 30.0 * span, mid.y - 10.0 * span});
    work.push_back({mid.x + 30.0 * span, mid.y - 10.0 * span});
    work.push_back({mid.x, mid.y + 30.0 * span});
    const int s0 = static_cast<int>(n), s1 = s0 + 1, s2 = s0 + 2;

    std::vector<idx_tri> tris{{{s0, s1, s2}}};
    for (int ip = 0; ip < static_cast<int>(n); ++ip) {
        const vec2 p = work[ip];
        std::vector<idx_tri> keep;
        std::map<std::pair<int, int>, int> boundary;  // edge -> multiplicity
        for (const auto& t : tris) {
            vec2 a = work[t.v[0]], b = work[t.v[1]], c = work[t.v[2]];
            if (tri_signed_area(a, b, c) < 0) std::swap(a, b);
            if (incircle(a, b, c, p) > 0) {
                for (int e = 0; e < 3; ++e) {
                    int u = t.v[e], v = t.v[(e + 1) % 3];
                    if (u > v) std::swap(u, v);
                    boundary[{u, v}]++;
                }
            } else {
                keep.push_back(t);
            }
        }
        tris = std::move(keep);
        for (const auto& [edge, count] : boundary) {
            if (count != 1) continue;  // interior edge of the cavity
            idx_tri t{{edge.first, edge.second, ip}};
            const vec2 a = work[t.v[0]], b = work[t.v[1]], c = work[t.v[2]];
            if (tri_signed_area(a, b, c) < 0) std::swap(t.v[0], t.v[1]);
            tris.push_back(t);
        }
    }
    std::vector<idx_tri> out;
    for (const auto& t : tris)
        if (t.v[0] < s0 && t.v[1] < s0 && t.v[2] < s0) out.push_back(t);
    return out;
}

inline std::vector<triangle_region> to_regions(const std::vector<idx_tri>& tris,
                                               const std::vector<base_station>& stations) {
    std::vector<triangle_region> out;
    out.reserve(tris.size());
    for (const auto& t : tris) {
        std::array<int, 3> idx = t.v;
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return stations[a].id < stations[b].id; });
        triangle_region r;
        for (int i = 0; i < 3; ++i) {
            r.vertex_ids[i] = stations[idx[i]].id;
            r.vertices[i] = {stations[idx[i]].x, stations[idx[i]].y};
        }
        out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](const triangle_region& a, const triangle_region& b) {
        return a.vertex_ids < b.vertex_ids;
    });
    return out;
}

}  // namespace detail

/// Delaunay triangulation of the station plan positions.
/// Throws insufficient_stations (< 3), degenerate_topology (duplicate plan
/// positions, or collinear input admitting no triangle).
inline std::vector<triangle_region> delaunay_triangulate(
    const std::vector<base_station>& stations) {
    detail::check_station_preconditions(stations);
    std::vector<vec2> pts;
    pts.reserve(stations.size());
    for (const auto& s : stations) pts.push_back({s.x, s.y});
    const auto tris = detail::bowyer_watson(pts);
    if (tris.empty())
        throw degenerate_topology("stations are collinear; no triangulation exists");
    return detail::to_regions(tris, stations);
}

/// Alternative plane division: start from the Delaunay triangulation and
/// apply seeded random edge flips. The result is always a valid tiling of
/// the hull but is not required to satisfy the empty-circumcircle property.
inline std::vector<triangle_region> random_triangulate(
    const std::vector<base_station>& stations, std::uint64_t seed) {
    detail::check_station_preconditions(stations);
    std::vector<vec2> pts;
    pts.reserve(stations.size());
    for (const auto& s : stations) pts.push_back({s.x, s.y});
    auto tris = detail::bowyer_watson(pts);
    if (tris.empty())
        throw degenerate_topology("stations are collinear; no triangulation exists");

    rng r(seed);
    const int attempts = 16 * static_cast<int>(tris.size());
    for (int k = 0; k < attempts; ++k) {
        // interior edges, in sorted order for determinism
        std::map<std::pair<int, int>, std::vector<int>> edges;
        for (int t = 0; t < static_cast<int>(tris.size()); ++t)
            for (int e = 0; e < 3; ++e) {
                int u = tris[t].v[e], v = tris[t].v[(e + 1) % 3];
                if (u > v) std::swap(u, v);
                edges[{u, v}].push_back(t);
            }
        std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> interior;
        for (const auto& [edge, owners] : edges)
            if (owners.size() == 2) interior.push_back({edge, {owners[0], owners[1]}});
        if (interior.empty()) break;

        const auto& pick = interior[r.uniform_int(0, static_cast<int>(interior.size()) - 1)];
        const auto [a, b] = pick.first;
        const auto [t1, t2] = pick.second;
        const auto third = [&](const detail::idx_tri& t) {
            for (int v : t.v)
                if (v != a && v != b) return v;
            return -1;
        };
        const int c = third(tris[t1]), d = third(tris[t2]);
        // Flippable only when the quad a-c-b-d is strictly convex, i.e. the
        // diagonals (a,b) and (c,d) properly intersect.
        const double s1 = detail::tri_signed_area(pts[c], pts[d], pts[a]);
        const double s2 = detail::tri_signed_area(pts[c], pts[d], pts[b]);
        const double s3 = detail::tri_signed_area(pts[a], pts[b], pts[c]);
        const double s4 = detail::tri_signed_area(pts[a], pts[b], pts[d]);
        if (s1 * s2 >= 0 || s3 * s4 >= 0) continue;
        if (r.uniform01() < 0.5) continue;
        tris[t1].v = {a, c, d};
        tris[t2].v = {b, c, d};
    }
    return detail::to_regions(tris, stations);
}

/// Convex hull (monotone chain) of the station plan positions, CCW order.
inline std::vector<vec2> convex_hull(std::vector<vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](vec2 a, vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](vec2 a, vec2 b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3) return pts;
    std::vector<vec2> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

/// Shoelace area of a simple polygon.
inline double polygon_area(const std::vector<vec2>& poly) {
    double a = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const vec2 p = poly[i], q = poly[(i + 1) % poly.size()];
        a += cross(p, q);
    }
    return std::abs(a) / 2.0;
}

/// Minimum inner angle (degrees) over a set of triangles.
inline double min_inner_angle(const std::vector<triangle_region>& tris) {
    if (tris.empty()) throw empty_input("min_inner_angle over zero triangles");
    double m = 180.0;
    for (const auto& t : tris)
        for (double a : triangle_metrics(t).angles_deg) m = std::min(m, a);
    return m;
}

// ----------------------------------------------------------------- airspace

/// Triangular-prism airspace above one cooperation set, partitioned into
/// height layers (default: thirds of [0, h_max], the low/medium/high split).
struct prism_airspace {
    triangle_region base;
    double h_max = 0.0;
    std::vector<std::pair<double, double>> layers;
};

inline prism_airspace make_prism(const triangle_region& base, double h_max,
                                 const std::vector<double>& interior_bounds = {}) {
    if (!(h_max > 0.0))
        throw validation_error("h_max must be positive, got " + std::to_string(h_max));
    triangle_metrics(base);  // rejects degenerate bases
    prism_airspace p;
    p.base = base;
    p.h_max = h_max;
    std::vector<double> cuts = interior_bounds;
    if (cuts.empty()) cuts = {h_max / 3.0, 2.0 * h_max / 3.0};
    double lo = 0.0;
    for (double c : cuts) {
        if (!(c > lo && c < h_max))
            throw validation_error("layer bound " + std::to_string(c) +
                                   " must lie strictly inside (0, h_max), ascending");
        p.layers.push_back({lo, c});
        lo = c;
    }
    p.layers.push_back({lo, h_max});
    return p;
}

/// Axis-aligned cubic voxel lattice clipped to the prism: a voxel belongs to
/// the grid iff its center lies inside the base triangle and 0 <= z <= h_max.
/// The lattice is anchored at the base triangle's bounding-box minimum.
struct voxel_grid {
    std::vector<vec3> centers;
    double resolution = 0.0;
    std::size_t size() const { return centers.size(); }
};

inline voxel_grid build_voxel_grid(const prism_airspace& prism, double resolution) {
    if (!(resolution > 0.0))
        throw validation_error("voxel resolution must be positive, got " +
                               std::to_string(resolution));
    const auto& v = prism.base.vertices;
    const double min_x = std::min({v[0].x, v[1].x, v[2].x});
    const double max_x = std::max({v[0].x, v[1].x, v[2].x});
    const double min_y = std::min({v[0].y, v[1].y, v[2].y});
    const double max_y = std::max({v[0].y, v[1].y, v[2].y});
    const double z_tol = prism.h_max + resolution * 1e-12;

    std::vector<vec2> plan;
    for (std::size_t i = 0;; ++i) {
        const double x = min_x + (static_cast<double>(i) + 0.5) * resolution;
        if (x > max_x) break;
        for (std::size_t j = 0;; ++j) {
            const double y = min_y + (static_cast<double>(j) + 0.5) * resolution;
            if (y > max_y) break;
            if (point_in_triangle({x, y}, prism.base)) plan.push_back({x, y});
        }
    }
    voxel_grid g;
    g.resolution = resolution;
    for (std::size_t k = 0;; ++k) {
        const double z = (static_cast<double>(k) + 0.5) * resolution;
        if (z > z_tol) break;
        for (const vec2& p : plan) g.centers.push_back({p.x, p.y, z});
    }
    if (g.centers.empty())
        throw empty_grid("no voxel center falls inside the prism at resolution " +
                         std::to_string(resolution));
    return g;
}

}  // namespace aircov
