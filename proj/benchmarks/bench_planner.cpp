#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "teamclean/partition.hpp"
#include "teamclean/route.hpp"
#include "teamclean/simulation.hpp"

using namespace teamclean;

namespace {

DirtMap open_floor(int width, int height, std::uint64_t seed) {
  std::string text;
  for (int y = 0; y < height; ++y) text += std::string(width, '.') + "\n";
  GridMap grid = load_grid(text);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> level(0, 77);
  std::vector<double> lambda(grid.size());
  for (auto& v : lambda) v = level(rng);
  return DirtMap(std::move(grid), {0, 1}, std::move(lambda));
}

void BM_Partition(benchmark::State& state) {
  const auto dm = open_floor(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(partition(dm, 3));
}
BENCHMARK(BM_Partition)->Arg(8)->Arg(16)->Arg(20);

void BM_PlanRoute(benchmark::State& state) {
  std::vector<Cell> cells;
  for (int x = 0; x < state.range(0); ++x)
    for (int y = 0; y < 4; ++y) cells.push_back({x, y});
  for (auto _ : state) benchmark::DoNotOptimize(plan_route(cells));
}
BENCHMARK(BM_PlanRoute)->Arg(2)->Arg(8)->Arg(16);

void BM_SimulateTeam(benchmark::State& state) {
  const auto dm = open_floor(16, 14, 11);
  const auto p = partition(dm, 3);
  std::vector<Route> routes;
  for (const auto& g : p.regions) routes.push_back(annotate_route(g.id, plan_route(g.cells), dm));
  const auto field = sample_dirt_field(dm, 1);
  const SimParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_team(routes, dm, field, params));
    benchmark::DoNotOptimize(simulate_baseline(dm.grid(), dm, field, params));
  }
}
BENCHMARK(BM_SimulateTeam);

}  // namespace
BENCHMARK_MAIN();
