#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "teamclean/error.hpp"
#include "teamclean/pipeline.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<int> robots;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool fixed_scale = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "key=value scenario file")->required();
  cmd->add_option("--robots", o.robots, "robot count");
  cmd->add_option("--seed", o.seed, "dirt sampling seed");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_flag("--fixed-scale", o.fixed_scale, "render dirt on the fixed 0-77 scale");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirt-aware multi-robot cleaning planner and simulator"};
  app.require_subcommand(1);
  Overrides overrides;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"estimate", "estimate per-cell dirt levels from the pass log"},
      {"partition", "split the dirt map into one region per robot"},
      {"plan", "plan a visit order and dwell times for every region"},
      {"simulate", "simulate the team and the single-robot sweep"},
      {"compare", "compare team and single-robot reports"},
      {"run", "run every stage"},
  };
  for (const auto& s : subs) add_common(app.add_subcommand(s.name, s.help), overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto stage = teamclean::stage_from_string(app.get_subcommands().front()->get_name());
  teamclean::RunConfig config;
  try {
    config = teamclean::load_config(overrides.config_path);
  } catch (const teamclean::Error& e) {
    std::cerr << "error [config]: " << e.what() << '\n';
    return teamclean::exit_code_for(e.kind());
  }
  if (overrides.robots) config.robots = *overrides.robots;
  if (overrides.seed) config.sim.rng_seed = *overrides.seed;
  if (overrides.out) config.output_dir = *overrides.out;
  if (overrides.fixed_scale) config.fixed_scale = true;

  const auto outcome = teamclean::run_stage(config, *stage);
  if (outcome.exit_code != 0) {
    std::cerr << "error [" << outcome.stage << "]: " << outcome.message << '\n';
  }
  return outcome.exit_code;
}
