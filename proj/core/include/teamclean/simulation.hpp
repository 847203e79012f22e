#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "teamclean/dirt_model.hpp"
#include "teamclean/grid.hpp"
#include "teamclean/route.hpp"

namespace teamclean {

// Linear battery proxy and motion model. Defaults put a 16x14 open-floor
// scenario inside the expected team/baseline shape; they are not measured.
struct SimParams {
  double travel_speed = 1.0;         // cells per second
  double move_power = 0.02;          // battery % per second moving
  double clean_power = 0.05;         // battery % per second cleaning
  double overhead_per_robot = 1.0;   // battery % per deployed robot
  std::uint64_t rng_seed = 1;

  void validate() const;  // throws Error(config)
};

// Poisson(mean) variate from a 64-bit Mersenne Twister. Knuth's product
// method below mean 10, Hormann's transformed rejection (PTRS) above.
std::uint64_t sample_poisson(std::mt19937_64& rng, double mean);

// Realized dirt per cell, indexed like GridMap::index (obstacles hold 0).
struct DirtField {
  std::vector<double> amount;

  double total() const;
};

DirtField sample_dirt_field(const DirtMap& dirt_map, std::uint64_t seed);

struct RobotReport {
  int region_id = 0;
  double travel_s = 0.0;
  double clean_s = 0.0;
  double battery_pct = 0.0;   // moving + cleaning
  double overhead_pct = 0.0;  // fixed per-robot cost
  std::size_t cells_visited = 0;

  double finish_s() const { return travel_s + clean_s; }
};

struct SimReport {
  double makespan = 0.0;
  std::vector<RobotReport> per_robot;
  double total_battery_pct = 0.0;
  double residual_dirt = 0.0;
  std::size_t cells_visited = 0;
};

// Each route runs on its own robot from t = 0. A visited cell loses all its
// dirt when the dwell reaches the dwell its estimated level calls for, and a
// proportional share otherwise. Throws consistency when two routes share a
// cell or a route leaves the free space.
SimReport simulate_team(std::span<const Route> routes, const DirtMap& dirt_map,
                        const DirtField& field, const SimParams& params);

// Column-serpentine sweep over every free cell: down the first non-empty
// column, up the next, and so on.
std::vector<Cell> boustrophedon_order(const GridMap& grid);

// One robot sweeping the whole map with the same dwell rule.
SimReport simulate_baseline(const GridMap& grid, const DirtMap& dirt_map, const DirtField& field,
                            const SimParams& params);

struct ComparisonReport {
  double makespan_ratio = 0.0;
  double battery_ratio = 0.0;
  double residual_difference = 0.0;  // team minus baseline
  bool paper_consistent = false;
};

// Makespan ratio <= 0.45 with battery ratio in [1.0, 1.25] is the expected
// shape: much faster, slightly more battery. Throws degenerate when the
// baseline takes no time or no battery.
ComparisonReport compare(const SimReport& team, const SimReport& baseline);

}  // namespace teamclean
