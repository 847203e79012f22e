#include "teamclean/pipeline.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "teamclean/dirt_model.hpp"
#include "teamclean/error.hpp"
#include "teamclean/partition.hpp"
#include "teamclean/render.hpp"
#include "teamclean/serialize.hpp"

namespace teamclean {

namespace fs = std::filesystem;

void RunConfig::validate() const {
  if (robots < 1) throw Error(ErrorKind::config, "robots must be at least 1");
  if (horizon_start > horizon_end) throw Error(ErrorKind::config, "horizon_start after horizon_end");
  if (map_path.empty()) throw Error(ErrorKind::config, "map path is empty");
  if (log_path.empty()) throw Error(ErrorKind::config, "log path is empty");
  if (output_dir.empty()) throw Error(ErrorKind::config, "output directory is empty");
  if (route.branch_cap == 0) throw Error(ErrorKind::config, "branch_cap must be positive");
  sim.validate();
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorKind::config, "key '" + key + "' expects a number, got '" + value + "'");
}

std::uint64_t to_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw Error(ErrorKind::config, "key '" + key + "' expects a nonnegative integer, got '" + value + "'");
  }
  return v;
}

int to_int(const std::string& key, const std::string& value) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw Error(ErrorKind::config, "key '" + key + "' expects an integer, got '" + value + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw Error(ErrorKind::config, "key '" + key + "' expects true or false");
}

std::set<RenderKind> to_renders(const std::string& value) {
  std::set<RenderKind> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (item == "dirtmap") out.insert(RenderKind::dirtmap);
    else if (item == "partition") out.insert(RenderKind::partition);
    else if (item == "routes") out.insert(RenderKind::routes);
    else if (item == "timemap") out.insert(RenderKind::timemap);
    else if (item == "all") out = {RenderKind::dirtmap, RenderKind::partition, RenderKind::routes, RenderKind::timemap};
    else throw Error(ErrorKind::config, "unknown render kind '" + item + "'");
  }
  return out;
}

std::string read_file(const fs::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read " + std::string(what) + " " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

class Pipeline {
 public:
  explicit Pipeline(const RunConfig& config) : config_(config), out_(config.output_dir) {}

  void estimate() {
    const GridMap grid = load_grid(read_file(config_.map_path, "map_path"));
    const auto histories =
        ingest_pass_log(read_file(config_.log_path, "log_path"), grid, config_.epoch);
    dirt_map_ = build_dirt_map(grid, histories, config_.horizon_start, config_.horizon_end);
    write_file(out_ / "dirtmap.json", dirt_map_to_json(*dirt_map_));
    if (config_.render.count(RenderKind::dirtmap)) {
      const auto r = render_dirt_map(*dirt_map_, config_.fixed_scale);
      write_file(out_ / "dirtmap.pgm", r.pgm);
      write_file(out_ / "dirtmap.txt", r.ascii);
    }
    if (config_.render.count(RenderKind::timemap)) {
      const auto r = render_time_map(*dirt_map_);
      write_file(out_ / "timemap.pgm", r.pgm);
      write_file(out_ / "timemap.txt", r.ascii);
    }
  }

  void partition_stage() {
    const DirtMap& dm = dirt_map();
    partition_ = partition(dm, config_.robots, PartitionOptions{config_.expansion_budget});
    write_file(out_ / "partition.json", partition_to_json(*partition_));
    if (config_.render.count(RenderKind::partition)) {
      write_file(out_ / "partition.txt", render_partition(*partition_, dm.grid()));
    }
  }

  void plan() {
    const DirtMap& dm = dirt_map();
    const Partition& p = partition_value();
    routes_.emplace();
    for (const auto& region : p.regions) {
      routes_->push_back(annotate_route(region.id, plan_route(region.cells, config_.route), dm));
    }
    write_file(out_ / "routes.json", routes_to_json(*routes_));
    if (config_.render.count(RenderKind::routes)) {
      write_file(out_ / "routes.txt", render_partition_routes(p, *routes_, dm.grid()));
    }
  }

  void simulate() {
    const DirtMap& dm = dirt_map();
    const auto& routes = routes_value();
    const auto field = sample_dirt_field(dm, config_.sim.rng_seed);
    simulation_ = SimulationRecord{config_.sim.rng_seed,
                                   simulate_team(routes, dm, field, config_.sim),
                                   simulate_baseline(dm.grid(), dm, field, config_.sim)};
    write_file(out_ / "report.json", simulation_to_json(*simulation_));
  }

  void compare_stage() {
    if (!simulation_) simulation_ = simulation_from_json(read_file(out_ / "report.json", "report"));
    write_file(out_ / "comparison.json",
               comparison_to_json(compare(simulation_->team, simulation_->baseline)));
  }

 private:
  const DirtMap& dirt_map() {
    if (!dirt_map_) dirt_map_ = dirt_map_from_json(read_file(out_ / "dirtmap.json", "dirt map"));
    return *dirt_map_;
  }
  const Partition& partition_value() {
    if (!partition_) partition_ = partition_from_json(read_file(out_ / "partition.json", "partition"));
    return *partition_;
  }
  const std::vector<Route>& routes_value() {
    if (!routes_) routes_ = routes_from_json(read_file(out_ / "routes.json", "routes"));
    return *routes_;
  }

  const RunConfig& config_;
  fs::path out_;
  std::optional<DirtMap> dirt_map_;
  std::optional<Partition> partition_;
  std::optional<std::vector<Route>> routes_;
  std::optional<SimulationRecord> simulation_;
};

}  // namespace

RunConfig parse_config(std::string_view text, const fs::path& base_dir) {
  RunConfig config;
  auto resolve = [&base_dir](const std::string& value) {
    fs::path p(value);
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::config, "config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw Error(ErrorKind::config, "duplicate config key '" + key + "'");
    if (key == "map") config.map_path = resolve(value);
    else if (key == "log") config.log_path = resolve(value);
    else if (key == "out") config.output_dir = resolve(value);
    else if (key == "robots") config.robots = to_int(key, value);
    else if (key == "horizon_start") config.horizon_start = to_double(key, value);
    else if (key == "horizon_end") config.horizon_end = to_double(key, value);
    else if (key == "epoch") config.epoch = to_double(key, value);
    else if (key == "travel_speed") config.sim.travel_speed = to_double(key, value);
    else if (key == "move_power") config.sim.move_power = to_double(key, value);
    else if (key == "clean_power") config.sim.clean_power = to_double(key, value);
    else if (key == "overhead") config.sim.overhead_per_robot = to_double(key, value);
    else if (key == "seed") config.sim.rng_seed = to_unsigned(key, value);
    else if (key == "render") config.render = to_renders(value);
    else if (key == "fixed_scale") config.fixed_scale = to_bool(key, value);
    else if (key == "backtrack_budget") config.expansion_budget = to_unsigned(key, value);
    else if (key == "branch_cap") config.route.branch_cap = to_unsigned(key, value);
    else if (key == "branch_overflow") {
      if (value == "degrade") config.route.overflow = OverflowPolicy::degrade;
      else if (value == "fail") config.route.overflow = OverflowPolicy::fail;
      else throw Error(ErrorKind::config, "branch_overflow must be degrade or fail");
    } else {
      throw Error(ErrorKind::config, "unknown config key '" + key + "'");
    }
  }
  return config;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::config, "cannot read config " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str(), path.parent_path());
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::estimate: return "estimate";
    case Stage::partition: return "partition";
    case Stage::plan: return "plan";
    case Stage::simulate: return "simulate";
    case Stage::compare: return "compare";
    case Stage::run: return "run";
  }
  return "run";
}

std::optional<Stage> stage_from_string(std::string_view text) {
  for (auto s : {Stage::estimate, Stage::partition, Stage::plan, Stage::simulate, Stage::compare,
                 Stage::run}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

StageOutcome run_stage(const RunConfig& config, Stage stage) {
  std::string current = "config";
  try {
    config.validate();
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw Error(ErrorKind::io, "cannot create output directory " + config.output_dir.string());

    Pipeline pipeline(config);
    auto step = [&](Stage s, auto&& fn) {
      if (stage != s && stage != Stage::run) return;
      current = std::string(to_string(s));
      fn();
    };
    step(Stage::estimate, [&] { pipeline.estimate(); });
    step(Stage::partition, [&] { pipeline.partition_stage(); });
    step(Stage::plan, [&] { pipeline.plan(); });
    step(Stage::simulate, [&] { pipeline.simulate(); });
    step(Stage::compare, [&] { pipeline.compare_stage(); });
    return {};
  } catch (const Error& e) {
    StageOutcome outcome{exit_code_for(e.kind()), current, e.what()};
    if (e.kind() != ErrorKind::config || current != "config") {
      try {
        write_file(config.output_dir / "error.json",
                   error_to_json(current, to_string(e.kind()), e.what(), outcome.exit_code));
      } catch (const Error&) {
      }
    }
    return outcome;
  }
}

}  // namespace teamclean
