#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "teamclean/dirt_model.hpp"
#include "teamclean/grid.hpp"

namespace teamclean {

// A free cell as a graph vertex. `visited` means the cell has been claimed by
// some region; `neighbors` lists the 4-adjacent free cells (down, up, right,
// left). Unvisited neighbours are the ones still connected to the vertex.
struct CellVertex {
  Cell coord;
  double lambda = 0.0;
  bool visited = false;
  std::vector<std::size_t> neighbors;
};

class VertexGraph {
 public:
  explicit VertexGraph(const DirtMap& dirt_map);

  std::size_t size() const noexcept { return vertices_.size(); }
  const CellVertex& operator[](std::size_t v) const { return vertices_[v]; }
  std::span<const CellVertex> vertices() const noexcept { return vertices_; }
  std::optional<std::size_t> find(Cell c) const;

  // Number of unvisited neighbours.
  std::size_t degree(std::size_t v) const;
  void set_visited(std::size_t v, bool visited) { vertices_[v].visited = visited; }
  int grid_height() const noexcept { return height_; }
  int grid_width() const noexcept { return width_; }

 private:
  std::vector<CellVertex> vertices_;
  std::vector<std::ptrdiff_t> index_of_;
  int width_;
  int height_;
};

// Unvisited vertices ordered by start preference: fewest unvisited neighbours,
// then largest diagonal score (rows counted from the bottom minus column, so
// the top-left corner scores highest), then row, then column.
std::vector<std::size_t> start_candidates(const VertexGraph& graph);

// First entry of start_candidates. Throws Error(exhausted) when every vertex
// has been visited.
const CellVertex& select_start_vertex(const VertexGraph& graph);

// over/under follow the alternating acceptance rule. exact closes on the
// target. capped is a region forced closed at its size limit so that every
// later robot still gets a cell. remainder is a final region off target.
enum class RegionFlag { over, under, exact, capped, remainder };

std::string_view to_string(RegionFlag flag);
RegionFlag region_flag_from_string(std::string_view text);

struct Region {
  int id = 0;
  RegionFlag flag = RegionFlag::exact;
  double lambda_actual = 0.0;
  std::vector<Cell> cells;      // traversal order
  std::optional<Cell> declined; // vertex handed back by an `under` close
};

struct Partition {
  double lambda_s = 0.0;
  double lambda_total = 0.0;
  std::vector<Region> regions;
};

struct PartitionOptions {
  // Cap on traversal expansions across all backtracking.
  std::uint64_t expansion_budget = 1'000'000;
};

// Splits the free cells into `robot_count` connected regions of roughly equal
// dirt, growing each region along a vertical-first serpentine and backtracking
// on dead ends. Throws topology (disconnected free space), infeasible (robot
// count out of range) or partition_failure (search exhausted or over budget).
Partition partition(const DirtMap& dirt_map, int robot_count, const PartitionOptions& options = {});

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::vector<Cell> offending;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool passed() const;
  const ValidationCheck& check(std::string_view name) const;
};

// Coverage, disjointness, 4-connectivity, dirt conservation (1e-9 relative)
// and over/under alternation. Never throws on a bad partition.
ValidationReport validate_partition(const Partition& partition, const GridMap& grid);

}  // namespace teamclean
