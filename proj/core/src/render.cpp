#include "teamclean/render.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "teamclean/error.hpp"

namespace teamclean {

namespace {

std::string pgm_text(const GridMap& grid, const std::vector<int>& pixels) {
  std::ostringstream os;
  os << "P2\n" << grid.width() << ' ' << grid.height() << "\n255\n";
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      if (x) os << ' ';
      os << pixels[grid.index({x, y})];
    }
    os << '\n';
  }
  return os.str();
}

char region_letter(std::size_t i) {
  if (i < 26) return static_cast<char>('a' + i);
  return static_cast<char>('0' + (i - 26) % 10);
}

std::vector<char> region_canvas(const Partition& partition, const GridMap& grid) {
  std::vector<char> canvas(grid.size(), '#');
  for (Cell c : grid.free_cells()) canvas[grid.index(c)] = '?';
  for (std::size_t r = 0; r < partition.regions.size(); ++r) {
    for (Cell c : partition.regions[r].cells) {
      if (!grid.is_free(c)) throw Error(ErrorKind::consistency, "region cell is not free");
      canvas[grid.index(c)] = region_letter(r);
    }
  }
  return canvas;
}

std::string canvas_text(const GridMap& grid, const std::vector<char>& canvas) {
  std::string out;
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) out += canvas[grid.index({x, y})];
    out += '\n';
  }
  return out;
}

}  // namespace

Rendering render_dirt_map(const DirtMap& dirt_map, bool fixed_scale) {
  static constexpr std::string_view kRamp = ".:-=+*%@";
  const GridMap& grid = dirt_map.grid();
  double scale = fixed_scale ? kFixedScaleMax : dirt_map.max_lambda();
  if (!(scale > 0.0)) scale = 1.0;
  std::vector<int> pixels(grid.size(), 0);
  std::vector<char> canvas(grid.size(), '#');
  for (Cell c : grid.free_cells()) {
    const double ratio = std::clamp(dirt_map.lambda(c) / scale, 0.0, 1.0);
    pixels[grid.index(c)] = 255 - static_cast<int>(std::lround(255.0 * ratio));
    const auto level = std::min<std::size_t>(kRamp.size() - 1,
                                             static_cast<std::size_t>(ratio * kRamp.size()));
    canvas[grid.index(c)] = kRamp[level];
  }
  return {pgm_text(grid, pixels), canvas_text(grid, canvas)};
}

Rendering render_time_map(const DirtMap& dirt_map) {
  const GridMap& grid = dirt_map.grid();
  std::vector<int> pixels(grid.size(), 0);
  std::vector<char> canvas(grid.size(), '#');
  for (Cell c : grid.free_cells()) {
    const double dwell = dwell_time(dirt_map.lambda(c));
    pixels[grid.index(c)] = 255 - static_cast<int>(std::lround(255.0 * dwell / kMaxDwellSeconds));
    canvas[grid.index(c)] = static_cast<char>('0' + static_cast<int>(std::lround(dwell * 2.0)));
  }
  return {pgm_text(grid, pixels), canvas_text(grid, canvas)};
}

std::string render_partition(const Partition& partition, const GridMap& grid) {
  return canvas_text(grid, region_canvas(partition, grid));
}

std::string render_partition_routes(const Partition& partition, std::span<const Route> routes,
                                    const GridMap& grid) {
  if (routes.size() != partition.regions.size()) {
    throw Error(ErrorKind::consistency, "route count differs from region count");
  }
  auto canvas = region_canvas(partition, grid);
  for (std::size_t r = 0; r < routes.size(); ++r) {
    const auto& region = partition.regions[r];
    const std::set<Cell> members(region.cells.begin(), region.cells.end());
    if (routes[r].visits.empty()) throw Error(ErrorKind::consistency, "empty route");
    for (const auto& v : routes[r].visits) {
      if (!members.count(v.cell)) {
        throw Error(ErrorKind::consistency,
                    "route " + std::to_string(routes[r].region_id) + " leaves its region");
      }
    }
    canvas[grid.index(routes[r].end())] = 'E';
    canvas[grid.index(routes[r].start())] = 'S';
  }
  return canvas_text(grid, canvas);
}

}  // namespace teamclean
