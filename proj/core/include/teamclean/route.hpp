#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "teamclean/dirt_model.hpp"
#include "teamclean/grid.hpp"

namespace teamclean {

struct Visit {
  Cell cell;
  double dwell_s = 0.0;

  friend bool operator==(const Visit&, const Visit&) = default;
};

struct Route {
  int region_id = 0;
  std::vector<Visit> visits;
  int travel_distance = 0;  // cell units
  bool truncated = false;   // branch cap hit; result is not the full search minimum

  Cell start() const { return visits.front().cell; }
  Cell end() const { return visits.back().cell; }
};

// Manhattan distance between cell centres.
int cell_distance(Cell a, Cell b) noexcept;

enum class OverflowPolicy { degrade, fail };

struct RouteOptions {
  std::size_t branch_cap = 10'000;  // tie branches per plan, shared across starts
  OverflowPolicy overflow = OverflowPolicy::degrade;
};

struct VisitOrder {
  std::vector<Cell> cells;
  int travel_distance = 0;
  bool truncated = false;
};

// Nearest-neighbour tour from `start` that branches on every distance tie and
// keeps the cheapest completion; equal-cost completions resolve to the
// lexicographically smallest sequence.
VisitOrder plan_route_from(std::span<const Cell> cells, Cell start, const RouteOptions& options = {});

// Best of plan_route_from over every start.
VisitOrder plan_route(std::span<const Cell> cells, const RouteOptions& options = {});

// Cleaning dwell for a dirt level, bucketed on floor(lambda):
// 0-12 -> 0 s, 13-26 -> 1, 27-39 -> 1.5, 40-51 -> 2, 52-64 -> 2.5, 65+ -> 3.
double dwell_time(double lambda);
inline constexpr double kMaxDwellSeconds = 3.0;

// Attaches dwell times and travel distance. Throws consistency for cells the
// dirt map does not know.
Route annotate_route(int region_id, const VisitOrder& order, const DirtMap& dirt_map);

}  // namespace teamclean
