#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "teamclean/error.hpp"
#include "teamclean/route.hpp"

using namespace teamclean;

namespace {

int path_length(const std::vector<Cell>& cells) {
  int d = 0;
  for (std::size_t i = 1; i < cells.size(); ++i) d += cell_distance(cells[i - 1], cells[i]);
  return d;
}

// Best completion over all orders starting at `start`.
int brute_force_from(std::vector<Cell> cells, Cell start) {
  cells.erase(std::find(cells.begin(), cells.end(), start));
  std::sort(cells.begin(), cells.end());
  int best = std::numeric_limits<int>::max();
  do {
    std::vector<Cell> path{start};
    path.insert(path.end(), cells.begin(), cells.end());
    best = std::min(best, path_length(path));
  } while (std::next_permutation(cells.begin(), cells.end()));
  return best;
}

std::vector<Cell> random_region(std::mt19937_64& rng, std::size_t max_cells) {
  const std::size_t n = 1 + rng() % max_cells;
  std::vector<Cell> cells{{0, 0}};
  std::set<Cell> seen{{0, 0}};
  while (cells.size() < n) {
    const Cell base = cells[rng() % cells.size()];
    const int dir = static_cast<int>(rng() % 4);
    const Cell next{base.x + (dir == 0) - (dir == 1), base.y + (dir == 2) - (dir == 3)};
    if (seen.insert(next).second) cells.push_back(next);
  }
  return cells;
}

}  // namespace

TEST(CellDistance, Manhattan) {
  EXPECT_EQ(cell_distance({0, 0}, {0, 0}), 0);
  EXPECT_EQ(cell_distance({0, 0}, {2, 1}), 3);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> coord(-20, 20);
  for (int i = 0; i < 200; ++i) {
    const Cell a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)};
    EXPECT_EQ(cell_distance(a, b), cell_distance(b, a));
  }
}

TEST(PlanRouteFrom, Singleton) {
  const std::vector<Cell> cells{{0, 0}};
  const auto r = plan_route_from(cells, {0, 0});
  EXPECT_EQ(r.cells, cells);
  EXPECT_EQ(r.travel_distance, 0);
}

TEST(PlanRouteFrom, NearestFirst) {
  const std::vector<Cell> cells{{0, 0}, {0, 1}, {2, 0}};
  EXPECT_EQ(brute_force_from(cells, {0, 0}), 4);
  const auto r = plan_route_from(cells, {0, 0});
  EXPECT_EQ(r.cells, (std::vector<Cell>{{0, 0}, {0, 1}, {2, 0}}));
  EXPECT_EQ(r.travel_distance, 4);
}

TEST(PlanRouteFrom, TieBranchesResolveLexicographically) {
  const std::vector<Cell> cells{{0, 0}, {1, 0}, {0, 1}};
  EXPECT_EQ(path_length({{0, 0}, {0, 1}, {1, 0}}), 3);
  EXPECT_EQ(path_length({{0, 0}, {1, 0}, {0, 1}}), 3);
  const auto r = plan_route_from(cells, {0, 0});
  EXPECT_EQ(r.cells, (std::vector<Cell>{{0, 0}, {0, 1}, {1, 0}}));
  EXPECT_EQ(r.travel_distance, 3);
}

TEST(PlanRouteFrom, StartMustBelong) {
  const std::vector<Cell> cells{{0, 0}};
  EXPECT_THROW(plan_route_from(cells, {1, 1}), Error);
}

TEST(PlanRoute, StripStartsAtEndpoint) {
  const std::vector<Cell> cells{{0, 0}, {1, 0}, {2, 0}};
  EXPECT_EQ(oracle::brute_force_hamiltonian(cells), 2);
  EXPECT_EQ(brute_force_from(cells, {1, 0}), 3);
  const auto r = plan_route(cells);
  EXPECT_EQ(r.travel_distance, 2);
  EXPECT_TRUE((r.cells.front() == Cell{0, 0}) || (r.cells.front() == Cell{2, 0}));
}

TEST(PlanRoute, Singleton) {
  const std::vector<Cell> cells{{3, 4}};
  const auto r = plan_route(cells);
  EXPECT_EQ(r.cells, cells);
  EXPECT_EQ(r.travel_distance, 0);
}

TEST(PlanRoute, TwoByTwoBlock) {
  const std::vector<Cell> cells{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  EXPECT_EQ(oracle::brute_force_hamiltonian(cells), 3);
  EXPECT_EQ(plan_route(cells).travel_distance, 3);
}

TEST(PlanRoute, EmptyRejected) {
  EXPECT_THROW(plan_route(std::vector<Cell>{}), Error);
}

TEST(PlanRoute, PropertiesOnRandomRegions) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 150; ++i) {
    const auto cells = random_region(rng, 9);
    const auto r = plan_route(cells);
    // Permutation of the region.
    auto sorted = r.cells;
    std::sort(sorted.begin(), sorted.end());
    auto expected = cells;
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(sorted, expected);
    EXPECT_EQ(r.travel_distance, path_length(r.cells));
    // Greedy step: each next visit is nearest among the unvisited.
    for (std::size_t k = 0; k + 1 < r.cells.size(); ++k) {
      int nearest = std::numeric_limits<int>::max();
      for (std::size_t j = k + 1; j < r.cells.size(); ++j) {
        nearest = std::min(nearest, cell_distance(r.cells[k], r.cells[j]));
      }
      EXPECT_EQ(cell_distance(r.cells[k], r.cells[k + 1]), nearest);
    }
    // All-starts optimality within the heuristic.
    for (Cell s : cells) {
      EXPECT_LE(r.travel_distance, plan_route_from(cells, s).travel_distance);
    }
    EXPECT_GE(r.travel_distance, oracle::brute_force_hamiltonian(cells));
  }
}

TEST(PlanRoute, BranchCapDegradesOrFails) {
  std::vector<Cell> block;
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y)
      if ((x + y) % 2 == 0) block.push_back({x, y});
  RouteOptions tight{2, OverflowPolicy::degrade};
  const auto r = plan_route(block, tight);
  EXPECT_TRUE(r.truncated);
  EXPECT_EQ(r.cells.size(), block.size());
  tight.overflow = OverflowPolicy::fail;
  try {
    plan_route(block, tight);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::branching_overflow);
  }
  EXPECT_FALSE(plan_route(block).truncated);
}

TEST(DwellTime, Buckets) {
  EXPECT_EQ(dwell_time(12), 0.0);
  EXPECT_EQ(dwell_time(13), 1.0);
  EXPECT_EQ(dwell_time(30), 1.5);
  EXPECT_EQ(dwell_time(0), 0.0);
  EXPECT_EQ(dwell_time(12.9), 0.0);
  EXPECT_EQ(dwell_time(500), kMaxDwellSeconds);
  EXPECT_EQ(dwell_time(77.5), 3.0);
  EXPECT_THROW(dwell_time(-0.1), Error);
}

TEST(DwellTime, MonotonePiecewiseConstant) {
  std::set<double> values;
  double previous = 0.0;
  for (double l = 0.0; l <= 120.0; l += 0.25) {
    const double d = dwell_time(l);
    EXPECT_GE(d, previous);
    previous = d;
    values.insert(d);
  }
  EXPECT_EQ(values, (std::set<double>{0, 1, 1.5, 2, 2.5, 3}));
}

TEST(AnnotateRoute, AttachesDwell) {
  const auto grid = load_grid("..");
  const DirtMap dm(grid, {0, 1}, {30, 70});
  const auto r = annotate_route(4, VisitOrder{{{0, 0}, {1, 0}}, 0, false}, dm);
  EXPECT_EQ(r.region_id, 4);
  ASSERT_EQ(r.visits.size(), 2u);
  EXPECT_EQ(r.visits[0].dwell_s, 1.5);
  EXPECT_EQ(r.visits[1].dwell_s, 3.0);
  EXPECT_EQ(r.travel_distance, 1);

  const DirtMap single(load_grid("."), {0, 1}, {13});
  EXPECT_EQ(annotate_route(0, VisitOrder{{{0, 0}}, 0, false}, single).visits,
            (std::vector<Visit>{{{0, 0}, 1.0}}));

  const DirtMap zero(grid, {0, 1}, {0, 0});
  for (const auto& v : annotate_route(0, VisitOrder{{{1, 0}, {0, 0}}, 0, false}, zero).visits) {
    EXPECT_EQ(v.dwell_s, 0.0);
  }
  EXPECT_THROW(annotate_route(0, VisitOrder{{{5, 5}}, 0, false}, dm), Error);
}
