// Shared test fixtures: reference topologies with independently computed
// expected results (frozen before the library was written).
#pragma once

#include <array>
#include <vector>

#include "aircov/geometry.hpp"

namespace fixtures {

/// Nine-station synthetic network: 7 hull stations, 2 interior, covering a
/// 16.8 km^2 hull. Reference triangulation computed with an independent
/// Delaunay implementation (scipy.spatial.Delaunay) on these coordinates.
inline std::vector<aircov::base_station> nine_stations() {
    return {
        {1, 2600.0, 2400.0, 30.0}, {2, 900.0, 3600.0, 32.0}, {3, 0.0, 1500.0, 28.0},
        {4, 1500.0, 2000.0, 35.0}, {5, 3000.0, 500.0, 30.0}, {6, 5200.0, 1200.0, 33.0},
        {7, 2300.0, 4800.0, 29.0}, {8, 5800.0, 3500.0, 31.0}, {9, 4300.0, 4300.0, 27.0},
    };
}

/// Expected Delaunay triangles of nine_stations(), sorted id triples.
inline std::vector<std::array<int, 3>> nine_station_delaunay() {
    return {{1, 2, 4}, {1, 2, 7}, {1, 4, 5}, {1, 5, 6}, {1, 6, 9},
            {1, 7, 9}, {2, 3, 4}, {3, 4, 5}, {6, 8, 9}};
}

/// Scalene benchmark triangle with inner angles (54, 27, 99) degrees at
/// vertices A, B, C. C solved from the two angle rays (independent check:
/// reconstructed angles match to < 0.01 degrees).
inline std::vector<aircov::base_station> benchmark_triangle_stations() {
    return {
        {1, 0.0, 0.0, 30.0},
        {2, 900.0, 0.0, 32.0},
        {3, 243.158, 334.678, 28.0},
    };
}

}  // namespace fixtures
