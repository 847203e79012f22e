#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "teamclean/dirt_model.hpp"
#include "teamclean/partition.hpp"
#include "teamclean/route.hpp"
#include "teamclean/simulation.hpp"

namespace teamclean {

// JSON documents written by the pipeline. Readers throw Error(parse) on
// malformed input.

std::string dirt_map_to_json(const DirtMap& dirt_map);
DirtMap dirt_map_from_json(std::string_view text);

// {lambda_s, lambda_total, regions: [{id, flag, lambda_actual, cells: [[x,y],...]}]}
std::string partition_to_json(const Partition& partition);
Partition partition_from_json(std::string_view text);

// {routes: [{region_id, start, end, visits: [{x, y, dwell_s}], travel_distance, truncated}]}
std::string routes_to_json(std::span<const Route> routes);
std::vector<Route> routes_from_json(std::string_view text);

struct SimulationRecord {
  std::uint64_t seed = 0;
  SimReport team;
  SimReport baseline;
};

std::string simulation_to_json(const SimulationRecord& record);
SimulationRecord simulation_from_json(std::string_view text);

std::string comparison_to_json(const ComparisonReport& comparison);

std::string error_to_json(std::string_view stage, std::string_view kind, std::string_view message,
                          int exit_code);

}  // namespace teamclean
