#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace teamclean {

// Grid coordinate. x is the column, y the row counted from the top.
// Ordering is lexicographic on (x, y).
struct Cell {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

enum class Occupancy : unsigned char { free, obstacle };

class GridMap {
 public:
  // Throws Error(domain) for non-positive sizes or a cells/size mismatch.
  GridMap(int width, int height, std::vector<Occupancy> cells,
          std::optional<double> cell_size = std::nullopt);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::optional<double> cell_size() const noexcept { return cell_size_; }

  bool in_bounds(Cell c) const noexcept {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  bool is_free(Cell c) const noexcept {
    return in_bounds(c) && cells_[index(c)] == Occupancy::free;
  }
  std::size_t index(Cell c) const noexcept {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.x);
  }
  Cell cell_at(std::size_t index) const noexcept {
    return {static_cast<int>(index % static_cast<std::size_t>(width_)),
            static_cast<int>(index / static_cast<std::size_t>(width_))};
  }
  std::size_t size() const noexcept { return cells_.size(); }

  // Free cells in row-major order.
  std::vector<Cell> free_cells() const;
  std::size_t free_count() const;

  // 4-adjacent free neighbours, in the order down, up, right, left.
  std::vector<Cell> free_neighbors(Cell c) const;

  // True when the free cells form one 4-connected component.
  bool free_space_connected() const;

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  int width_;
  int height_;
  std::vector<Occupancy> cells_;
  std::optional<double> cell_size_;
};

// Parses the plain-text grid format: optional "cellsize <meters>" header,
// then one row per line with '.' free and '#' obstacle.
GridMap load_grid(std::string_view text);

// Inverse of load_grid.
std::string render_grid_text(const GridMap& grid);

int manhattan(Cell a, Cell b) noexcept;

// Connected components (4-adjacency) of the cells flagged in `member`, which is
// indexed like GridMap::index. Components are numbered in row-major order of
// their first cell; non-members get -1.
std::vector<int> label_components(const GridMap& grid,
                                  const std::vector<bool>& member,
                                  int* component_count = nullptr);

}  // namespace teamclean
