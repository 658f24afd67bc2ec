// aircov: ground-to-air coverage planning for terrestrial cellular networks
//
// SPDX-License-Identifier: MIT
// Copyright (c) 2026 aircov contributors

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aircov {

inline constexpr const char* toolkit_version = "0.1.0";

inline constexpr double pi = 3.14159265358979323846;

constexpr double deg2rad(double d) { return d * (pi / 180.0); }
constexpr double rad2deg(double r) { return r * (180.0 / pi); }

/// Wrap an angle to (-pi, pi].
inline double wrap_pi(double a) {
    a = std::fmod(a, 2.0 * pi);
    if (a <= -pi) a += 2.0 * pi;
    else if (a > pi) a -= 2.0 * pi;
    return a;
}

struct vec2 {
    double x = 0.0, y = 0.0;
};

inline vec2 operator-(vec2 a, vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline vec2 operator+(vec2 a, vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline double cross(vec2 a, vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(vec2 a, vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(vec2 a) { return std::hypot(a.x, a.y); }

struct vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

// ---------------------------------------------------------------- errors

/// Base class for all toolkit errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Input failed a declared precondition or field constraint.
class validation_error : public error {
public:
    using error::error;
};

/// Fewer than three stations supplied where a triangulation is required.
class insufficient_stations : public validation_error {
public:
    using validation_error::validation_error;
};

/// Point set admits no triangulation (collinear, or duplicate plan positions).
class degenerate_topology : public validation_error {
public:
    using validation_error::validation_error;
};

/// Triangle with zero area or repeated vertices.
class degenerate_triangle : public validation_error {
public:
    using validation_error::validation_error;
};

/// Voxelization produced no voxels at the requested resolution.
class empty_grid : public error {
public:
    using error::error;
};

/// Geometry without a defined answer (zero-length link, undefined angles).
class singular_geometry : public error {
public:
    using error::error;
};

/// Prism overlap analysis outside its premise (requires 0 < H <= r).
class premise_violated : public error {
public:
    using error::error;
};

/// No feasible configuration found; carries the best overlap ratio seen.
class infeasible_run : public error {
public:
    infeasible_run(const std::string& what, double best_cor)
        : error(what), best_cor_seen(best_cor) {}
    double best_cor_seen;
};

/// Enumeration larger than the configured budget.
class budget_exceeded : public error {
public:
    using error::error;
};

/// An aggregate was requested over zero elements.
class empty_input : public error {
public:
    using error::error;
};

/// File missing, unreadable, or unwritable.
class io_error : public error {
public:
    using error::error;
};

/// File content is not syntactically valid (JSON or CSV).
class parse_failure : public error {
public:
    using error::error;
};

}  // namespace aircov
