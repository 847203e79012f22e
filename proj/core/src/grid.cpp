#include "teamclean/grid.hpp"

#include <cstdlib>
#include <queue>
#include <sstream>

#include "teamclean/error.hpp"

namespace teamclean {

GridMap::GridMap(int width, int height, std::vector<Occupancy> cells,
                 std::optional<double> cell_size)
    : width_(width), height_(height), cells_(std::move(cells)), cell_size_(cell_size) {
  if (width_ < 1 || height_ < 1) {
    throw Error(ErrorKind::domain, "grid dimensions must be positive");
  }
  if (cells_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
    throw Error(ErrorKind::domain, "grid cell count does not match width*height");
  }
  if (cell_size_ && !(*cell_size_ > 0.0)) {
    throw Error(ErrorKind::domain, "cell size must be positive");
  }
}

std::vector<Cell> GridMap::free_cells() const {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] == Occupancy::free) out.push_back(cell_at(i));
  }
  return out;
}

std::size_t GridMap::free_count() const {
  std::size_t n = 0;
  for (auto c : cells_) n += (c == Occupancy::free);
  return n;
}

std::vector<Cell> GridMap::free_neighbors(Cell c) const {
  std::vector<Cell> out;
  out.reserve(4);
  for (Cell n : {Cell{c.x, c.y + 1}, Cell{c.x, c.y - 1}, Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}}) {
    if (is_free(n)) out.push_back(n);
  }
  return out;
}

bool GridMap::free_space_connected() const {
  std::vector<bool> member(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) member[i] = cells_[i] == Occupancy::free;
  int count = 0;
  label_components(*this, member, &count);
  return count == 1;
}

namespace {

std::string parse_error(std::size_t row, std::size_t column, const std::string& what) {
  std::ostringstream os;
  os << what << " (row " << row << ", column " << column << ")";
  return os.str();
}

}  // namespace

GridMap load_grid(std::string_view text) {
  std::vector<std::string> rows;
  std::optional<double> cell_size;
  std::size_t pos = 0;
  bool first_line = true;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    pos = end + 1;
    if (first_line && line.rfind("cellsize", 0) == 0) {
      first_line = false;
      std::istringstream is(line.substr(8));
      double meters = 0.0;
      if (!(is >> meters) || !(meters > 0.0)) {
        throw Error(ErrorKind::parse, "bad cellsize header");
      }
      std::string rest;
      if (is >> rest) throw Error(ErrorKind::parse, "trailing text after cellsize");
      cell_size = meters;
      continue;
    }
    first_line = false;
    if (line.empty() && pos > text.size()) break;  // trailing newline
    rows.push_back(std::move(line));
  }
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorKind::parse, "empty grid");
  }
  const std::size_t width = rows.front().size();
  std::vector<Occupancy> cells;
  cells.reserve(width * rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw Error(ErrorKind::parse, "ragged row " + std::to_string(r + 1) + ": expected " +
                                        std::to_string(width) + " columns, got " +
                                        std::to_string(rows[r].size()));
    }
    for (std::size_t c = 0; c < width; ++c) {
      switch (rows[r][c]) {
        case '.': cells.push_back(Occupancy::free); break;
        case '#': cells.push_back(Occupancy::obstacle); break;
        default:
          throw Error(ErrorKind::parse,
                      parse_error(r + 1, c + 1, std::string("unknown character '") + rows[r][c] + "'"));
      }
    }
  }
  return GridMap(static_cast<int>(width), static_cast<int>(rows.size()), std::move(cells), cell_size);
}

std::string render_grid_text(const GridMap& grid) {
  std::ostringstream os;
  if (grid.cell_size()) os << "cellsize " << *grid.cell_size() << '\n';
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) os << (grid.is_free({x, y}) ? '.' : '#');
    os << '\n';
  }
  return os.str();
}

int manhattan(Cell a, Cell b) noexcept {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

std::vector<int> label_components(const GridMap& grid, const std::vector<bool>& member,
                                  int* component_count) {
  std::vector<int> label(grid.size(), -1);
  int next = 0;
  std::queue<std::size_t> queue;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!member[i] || label[i] != -1) continue;
    label[i] = next;
    queue.push(i);
    while (!queue.empty()) {
      const Cell c = grid.cell_at(queue.front());
      queue.pop();
      for (Cell n : {Cell{c.x, c.y + 1}, Cell{c.x, c.y - 1}, Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}}) {
        if (!grid.in_bounds(n)) continue;
        const auto j = grid.index(n);
        if (member[j] && label[j] == -1) {
          label[j] = next;
          queue.push(j);
        }
      }
    }
    ++next;
  }
  if (component_count) *component_count = next;
  return label;
}

}  // namespace teamclean
