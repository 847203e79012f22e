#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "teamclean/grid.hpp"

namespace teamclean {

struct Pass {
  double time = 0.0;
  double reading = 0.0;

  friend bool operator==(const Pass&, const Pass&) = default;
};

// Cleaning-pass log of one cell. Pass times are strictly increasing and not
// earlier than the epoch; readings are nonnegative.
struct CellHistory {
  Cell cell;
  double epoch = 0.0;
  std::vector<Pass> passes;

  friend bool operator==(const CellHistory&, const CellHistory&) = default;
};

// Returns `history` with (t, k) appended. Throws ordering / domain errors.
CellHistory record_pass(CellHistory history, double t, double k);

// Expected dirt over [s, t] under a homogeneous Poisson model:
//   (t - s) / sum_i (t_i - t_{i-1}) * sum_i k_i,  with t_0 the epoch.
// The observation span telescopes to t_n - epoch. Throws insufficient_data when
// there are no passes or the span is zero, interval when s > t.
double estimate_cell_rate(const CellHistory& history, double s, double t);

using HistoryMap = std::map<Cell, CellHistory>;

// Groups a pass-log CSV (header "x,y,t,k") into per-cell histories sharing one
// epoch. Rows may come in any order.
HistoryMap ingest_pass_log(std::string_view csv, const GridMap& grid, double epoch);

struct Horizon {
  double start = 0.0;  // s, the latest cleaning
  double end = 0.0;    // t, the prediction end

  friend bool operator==(const Horizon&, const Horizon&) = default;
};

// Per-free-cell expected dirt level over a horizon.
class DirtMap {
 public:
  // `lambda` is indexed like GridMap::index; entries for obstacles are ignored.
  // `insufficient` may be empty.
  DirtMap(GridMap grid, Horizon horizon, std::vector<double> lambda,
          std::vector<std::uint8_t> insufficient = {});

  const GridMap& grid() const noexcept { return grid_; }
  const Horizon& horizon() const noexcept { return horizon_; }
  double lambda_total() const noexcept { return lambda_total_; }

  // Throws consistency for obstacle or out-of-range cells.
  double lambda(Cell c) const;
  bool insufficient(Cell c) const;
  std::vector<Cell> insufficient_cells() const;
  double max_lambda() const;

  friend bool operator==(const DirtMap&, const DirtMap&) = default;

 private:
  GridMap grid_;
  Horizon horizon_;
  std::vector<double> lambda_;
  std::vector<std::uint8_t> insufficient_;
  double lambda_total_ = 0.0;
};

// Cells without enough data get lambda 0 and are flagged insufficient.
DirtMap build_dirt_map(const GridMap& grid, const HistoryMap& histories, double s, double t);

double total_dirt(const DirtMap& dirt_map);

}  // namespace teamclean
