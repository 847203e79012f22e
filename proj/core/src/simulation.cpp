#include "teamclean/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "teamclean/error.hpp"

namespace teamclean {

void SimParams::validate() const {
  if (!(travel_speed > 0.0)) throw Error(ErrorKind::config, "travel_speed must be > 0");
  if (!(move_power > 0.0)) throw Error(ErrorKind::config, "move_power must be > 0");
  if (!(clean_power > 0.0)) throw Error(ErrorKind::config, "clean_power must be > 0");
  if (!(overhead_per_robot >= 0.0)) throw Error(ErrorKind::config, "overhead must be >= 0");
}

namespace {

// Uniform on (0, 1) from the top 53 bits.
double unit_open(std::mt19937_64& rng) {
  for (;;) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

}  // namespace

std::uint64_t sample_poisson(std::mt19937_64& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw Error(ErrorKind::domain, "Poisson mean must be finite and nonnegative");
  }
  if (mean == 0.0) return 0;
  if (mean < 10.0) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = unit_open(rng);
    while (prod > limit) {
      ++k;
      prod *= unit_open(rng);
    }
    return k;
  }
  // Hormann (1993), algorithm PTRS.
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = unit_open(rng) - 0.5;
    const double v = unit_open(rng);
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

double DirtField::total() const {
  double sum = 0.0;
  for (double a : amount) sum += a;
  return sum;
}

DirtField sample_dirt_field(const DirtMap& dirt_map, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const GridMap& grid = dirt_map.grid();
  DirtField field;
  field.amount.assign(grid.size(), 0.0);
  for (Cell c : grid.free_cells()) {
    field.amount[grid.index(c)] = static_cast<double>(sample_poisson(rng, dirt_map.lambda(c)));
  }
  return field;
}

SimReport simulate_team(std::span<const Route> routes, const DirtMap& dirt_map,
                        const DirtField& field, const SimParams& params) {
  params.validate();
  const GridMap& grid = dirt_map.grid();
  if (field.amount.size() != grid.size()) {
    throw Error(ErrorKind::consistency, "dirt field does not match the grid");
  }
  std::vector<double> remaining = field.amount;
  std::vector<bool> claimed(grid.size(), false);
  SimReport report;
  for (const auto& route : routes) {
    RobotReport robot;
    robot.region_id = route.region_id;
    for (std::size_t i = 0; i < route.visits.size(); ++i) {
      const auto& visit = route.visits[i];
      if (!grid.is_free(visit.cell)) {
        throw Error(ErrorKind::consistency, "route visits a cell outside the free space");
      }
      const auto idx = grid.index(visit.cell);
      if (claimed[idx]) throw Error(ErrorKind::consistency, "routes overlap");
      claimed[idx] = true;
      if (i > 0) {
        robot.travel_s += cell_distance(route.visits[i - 1].cell, visit.cell) / params.travel_speed;
      }
      robot.clean_s += visit.dwell_s;
      const double required = dwell_time(dirt_map.lambda(visit.cell));
      if (visit.dwell_s >= required) {
        remaining[idx] = 0.0;
      } else {
        remaining[idx] *= 1.0 - visit.dwell_s / required;
      }
    }
    robot.cells_visited = route.visits.size();
    robot.battery_pct = robot.travel_s * params.move_power + robot.clean_s * params.clean_power;
    robot.overhead_pct = params.overhead_per_robot;
    report.makespan = std::max(report.makespan, robot.finish_s());
    report.total_battery_pct += robot.battery_pct + robot.overhead_pct;
    report.cells_visited += robot.cells_visited;
    report.per_robot.push_back(robot);
  }
  for (double r : remaining) report.residual_dirt += r;
  return report;
}

std::vector<Cell> boustrophedon_order(const GridMap& grid) {
  std::vector<Cell> order;
  bool downward = true;
  for (int x = 0; x < grid.width(); ++x) {
    std::vector<Cell> column;
    for (int y = 0; y < grid.height(); ++y) {
      if (grid.is_free({x, y})) column.push_back({x, y});
    }
    if (column.empty()) continue;
    if (!downward) std::reverse(column.begin(), column.end());
    order.insert(order.end(), column.begin(), column.end());
    downward = !downward;
  }
  return order;
}

SimReport simulate_baseline(const GridMap& grid, const DirtMap& dirt_map, const DirtField& field,
                            const SimParams& params) {
  if (!(grid == dirt_map.grid())) {
    throw Error(ErrorKind::consistency, "baseline grid differs from the dirt map grid");
  }
  VisitOrder order;
  order.cells = boustrophedon_order(grid);
  const Route sweep = annotate_route(0, order, dirt_map);
  return simulate_team(std::span(&sweep, 1), dirt_map, field, params);
}

ComparisonReport compare(const SimReport& team, const SimReport& baseline) {
  if (!(baseline.makespan > 0.0)) {
    throw Error(ErrorKind::degenerate, "baseline makespan is zero");
  }
  if (!(baseline.total_battery_pct > 0.0)) {
    throw Error(ErrorKind::degenerate, "baseline battery usage is zero");
  }
  ComparisonReport out;
  out.makespan_ratio = team.makespan / baseline.makespan;
  out.battery_ratio = team.total_battery_pct / baseline.total_battery_pct;
  out.residual_difference = team.residual_dirt - baseline.residual_dirt;
  out.paper_consistent =
      out.makespan_ratio <= 0.45 && out.battery_ratio >= 1.0 && out.battery_ratio <= 1.25;
  return out;
}

}  // namespace teamclean
