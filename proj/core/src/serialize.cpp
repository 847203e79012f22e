#include "teamclean/serialize.hpp"

#include <json.hpp>

#include "teamclean/error.hpp"

namespace teamclean {

using Json = nlohmann::ordered_json;

namespace {

Json parse(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::parse, std::string(what) + ": " + e.what());
  }
}

// Wraps field access so schema mistakes surface as parse errors.
template <typename F>
auto guarded(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::parse, std::string(what) + ": " + e.what());
  }
}

Json cell_pair(Cell c) { return Json::array({c.x, c.y}); }
Cell cell_from(const Json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

Json report_json(const SimReport& r) {
  Json robots = Json::array();
  for (const auto& p : r.per_robot) {
    robots.push_back({{"region_id", p.region_id},
                      {"travel_s", p.travel_s},
                      {"clean_s", p.clean_s},
                      {"battery_pct", p.battery_pct},
                      {"overhead_pct", p.overhead_pct},
                      {"cells_visited", p.cells_visited}});
  }
  return {{"makespan", r.makespan},
          {"total_battery_pct", r.total_battery_pct},
          {"residual_dirt", r.residual_dirt},
          {"cells_visited", r.cells_visited},
          {"per_robot", robots}};
}

SimReport report_from(const Json& j) {
  SimReport r;
  r.makespan = j.at("makespan").get<double>();
  r.total_battery_pct = j.at("total_battery_pct").get<double>();
  r.residual_dirt = j.at("residual_dirt").get<double>();
  r.cells_visited = j.at("cells_visited").get<std::size_t>();
  for (const auto& p : j.at("per_robot")) {
    RobotReport robot;
    robot.region_id = p.at("region_id").get<int>();
    robot.travel_s = p.at("travel_s").get<double>();
    robot.clean_s = p.at("clean_s").get<double>();
    robot.battery_pct = p.at("battery_pct").get<double>();
    robot.overhead_pct = p.at("overhead_pct").get<double>();
    robot.cells_visited = p.at("cells_visited").get<std::size_t>();
    r.per_robot.push_back(robot);
  }
  return r;
}

}  // namespace

std::string dirt_map_to_json(const DirtMap& dirt_map) {
  const GridMap& grid = dirt_map.grid();
  Json rows = Json::array();
  for (int y = 0; y < grid.height(); ++y) {
    std::string row;
    for (int x = 0; x < grid.width(); ++x) row += grid.is_free({x, y}) ? '.' : '#';
    rows.push_back(row);
  }
  Json cells = Json::array();
  for (Cell c : grid.free_cells()) {
    cells.push_back({{"x", c.x},
                     {"y", c.y},
                     {"lambda", dirt_map.lambda(c)},
                     {"insufficient", dirt_map.insufficient(c)}});
  }
  Json doc;
  doc["width"] = grid.width();
  doc["height"] = grid.height();
  doc["cell_size"] = grid.cell_size() ? Json(*grid.cell_size()) : Json(nullptr);
  doc["grid"] = rows;
  doc["horizon"] = {{"s", dirt_map.horizon().start}, {"t", dirt_map.horizon().end}};
  doc["lambda_total"] = dirt_map.lambda_total();
  doc["insufficient_count"] = dirt_map.insufficient_cells().size();
  doc["cells"] = cells;
  return doc.dump(2) + "\n";
}

DirtMap dirt_map_from_json(std::string_view text) {
  const Json doc = parse(text, "dirt map");
  return guarded("dirt map", [&] {
    std::string grid_text;
    if (!doc.at("cell_size").is_null()) grid_text += "cellsize " + doc.at("cell_size").dump() + "\n";
    for (const auto& row : doc.at("grid")) grid_text += row.get<std::string>() + "\n";
    GridMap grid = load_grid(grid_text);
    std::vector<double> lambda(grid.size(), 0.0);
    std::vector<std::uint8_t> insufficient(grid.size(), 0);
    for (const auto& c : doc.at("cells")) {
      const Cell cell{c.at("x").get<int>(), c.at("y").get<int>()};
      if (!grid.is_free(cell)) throw Error(ErrorKind::parse, "dirt map lists a non-free cell");
      lambda[grid.index(cell)] = c.at("lambda").get<double>();
      insufficient[grid.index(cell)] = c.at("insufficient").get<bool>();
    }
    const Horizon horizon{doc.at("horizon").at("s").get<double>(),
                          doc.at("horizon").at("t").get<double>()};
    return DirtMap(std::move(grid), horizon, std::move(lambda), std::move(insufficient));
  });
}

std::string partition_to_json(const Partition& partition) {
  Json regions = Json::array();
  for (const auto& r : partition.regions) {
    Json cells = Json::array();
    for (Cell c : r.cells) cells.push_back(cell_pair(c));
    Json region;
    region["id"] = r.id;
    region["flag"] = std::string(to_string(r.flag));
    region["lambda_actual"] = r.lambda_actual;
    region["declined"] = r.declined ? cell_pair(*r.declined) : Json(nullptr);
    region["cells"] = cells;
    regions.push_back(region);
  }
  Json doc;
  doc["lambda_s"] = partition.lambda_s;
  doc["lambda_total"] = partition.lambda_total;
  doc["regions"] = regions;
  return doc.dump(2) + "\n";
}

Partition partition_from_json(std::string_view text) {
  const Json doc = parse(text, "partition");
  return guarded("partition", [&] {
    Partition p;
    p.lambda_s = doc.at("lambda_s").get<double>();
    p.lambda_total = doc.at("lambda_total").get<double>();
    for (const auto& r : doc.at("regions")) {
      Region region;
      region.id = r.at("id").get<int>();
      region.flag = region_flag_from_string(r.at("flag").get<std::string>());
      region.lambda_actual = r.at("lambda_actual").get<double>();
      if (r.contains("declined") && !r.at("declined").is_null()) {
        region.declined = cell_from(r.at("declined"));
      }
      for (const auto& c : r.at("cells")) region.cells.push_back(cell_from(c));
      p.regions.push_back(std::move(region));
    }
    return p;
  });
}

std::string routes_to_json(std::span<const Route> routes) {
  Json list = Json::array();
  for (const auto& r : routes) {
    Json visits = Json::array();
    for (const auto& v : r.visits) {
      visits.push_back({{"x", v.cell.x}, {"y", v.cell.y}, {"dwell_s", v.dwell_s}});
    }
    Json route;
    route["region_id"] = r.region_id;
    route["start"] = r.visits.empty() ? Json(nullptr) : cell_pair(r.start());
    route["end"] = r.visits.empty() ? Json(nullptr) : cell_pair(r.end());
    route["visits"] = visits;
    route["travel_distance"] = r.travel_distance;
    route["truncated"] = r.truncated;
    list.push_back(route);
  }
  Json doc;
  doc["routes"] = list;
  return doc.dump(2) + "\n";
}

std::vector<Route> routes_from_json(std::string_view text) {
  const Json doc = parse(text, "routes");
  return guarded("routes", [&] {
    std::vector<Route> out;
    for (const auto& r : doc.at("routes")) {
      Route route;
      route.region_id = r.at("region_id").get<int>();
      route.travel_distance = r.at("travel_distance").get<int>();
      route.truncated = r.value("truncated", false);
      for (const auto& v : r.at("visits")) {
        route.visits.push_back({{v.at("x").get<int>(), v.at("y").get<int>()}, v.at("dwell_s").get<double>()});
      }
      out.push_back(std::move(route));
    }
    return out;
  });
}

std::string simulation_to_json(const SimulationRecord& record) {
  Json doc;
  doc["seed"] = record.seed;
  doc["team"] = report_json(record.team);
  doc["baseline"] = report_json(record.baseline);
  return doc.dump(2) + "\n";
}

SimulationRecord simulation_from_json(std::string_view text) {
  const Json doc = parse(text, "report");
  return guarded("report", [&] {
    SimulationRecord r;
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.team = report_from(doc.at("team"));
    r.baseline = report_from(doc.at("baseline"));
    return r;
  });
}

std::string comparison_to_json(const ComparisonReport& c) {
  Json doc;
  doc["makespan_ratio"] = c.makespan_ratio;
  doc["battery_ratio"] = c.battery_ratio;
  doc["residual_difference"] = c.residual_difference;
  doc["paper_consistent"] = c.paper_consistent;
  return doc.dump(2) + "\n";
}

std::string error_to_json(std::string_view stage, std::string_view kind, std::string_view message,
                          int exit_code) {
  Json doc;
  doc["stage"] = stage;
  doc["kind"] = kind;
  doc["message"] = message;
  doc["exit_code"] = exit_code;
  return doc.dump(2) + "\n";
}

}  // namespace teamclean
