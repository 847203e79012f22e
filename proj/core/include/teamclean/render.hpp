#pragma once

#include <span>
#include <string>

#include "teamclean/dirt_model.hpp"
#include "teamclean/partition.hpp"
#include "teamclean/route.hpp"

namespace teamclean {

struct Rendering {
  std::string pgm;    // plain PGM (P2), maxval 255
  std::string ascii;  // one character per cell, '#' for obstacles
};

// Upper end of the fixed dirt scale; matches the top dwell bucket.
inline constexpr double kFixedScaleMax = 77.0;

// White is clean, darker is dirtier: pixel = 255 - round(255 * lambda / max),
// with max the map's largest lambda (1 if all zero) or kFixedScaleMax when
// fixed_scale is set. Obstacles are black.
Rendering render_dirt_map(const DirtMap& dirt_map, bool fixed_scale = false);

// Dwell seconds per cell on a fixed 0-3 s scale. ASCII shows half-seconds
// (0..6).
Rendering render_time_map(const DirtMap& dirt_map);

// Region letters (a, b, ...) with 'S' on each route start and 'E' on its end.
// Throws consistency when a route leaves its region or the counts differ.
std::string render_partition_routes(const Partition& partition, std::span<const Route> routes,
                                    const GridMap& grid);

// Region letters only.
std::string render_partition(const Partition& partition, const GridMap& grid);

}  // namespace teamclean
