#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "teamclean/route.hpp"
#include "teamclean/simulation.hpp"

namespace teamclean {

enum class RenderKind { dirtmap, partition, routes, timemap };

struct RunConfig {
  std::filesystem::path map_path;
  std::filesystem::path log_path;
  int robots = 3;
  double horizon_start = 0.0;
  double horizon_end = 0.0;
  double epoch = 0.0;
  SimParams sim;
  std::filesystem::path output_dir = "out";
  std::set<RenderKind> render;
  bool fixed_scale = false;
  std::uint64_t expansion_budget = 1'000'000;
  RouteOptions route;

  void validate() const;  // throws Error(config)
};

// key=value lines; '#' starts a comment. Unknown keys are rejected. Relative
// paths resolve against `base_dir`.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

enum class Stage { estimate, partition, plan, simulate, compare, run };

std::string_view to_string(Stage stage);
std::optional<Stage> stage_from_string(std::string_view text);

struct StageOutcome {
  int exit_code = 0;
  std::string stage;    // failing stage, empty on success
  std::string message;
};

// Runs one stage, reading earlier artifacts from the output directory, or all
// of them for Stage::run. Artifacts are written as each stage finishes, so a
// failure leaves earlier ones in place; failures also write error.json.
StageOutcome run_stage(const RunConfig& config, Stage stage);

}  // namespace teamclean
