#include <gtest/gtest.h>

#include "teamclean/error.hpp"
#include "teamclean/partition.hpp"
#include "teamclean/render.hpp"

using namespace teamclean;

namespace {

std::vector<Route> plan_all(const Partition& p, const DirtMap& dm) {
  std::vector<Route> routes;
  for (const auto& region : p.regions) {
    routes.push_back(annotate_route(region.id, plan_route(region.cells), dm));
  }
  return routes;
}

}  // namespace

TEST(RenderDirtMap, AllCleanIsWhite) {
  const DirtMap dm(load_grid("..#"), {0, 1}, {0, 0, 0});
  const auto r = render_dirt_map(dm);
  EXPECT_EQ(r.pgm, "P2\n3 1\n255\n255 255 0\n");
  EXPECT_EQ(r.ascii, "..#\n");
}

TEST(RenderDirtMap, ScaleExtremesAndRounding) {
  const DirtMap dm(load_grid("..."), {0, 1}, {40, 20, 0});
  const auto r = render_dirt_map(dm);
  // 255 * 0.5 = 127.5 rounds away from zero to 128.
  EXPECT_EQ(r.pgm, "P2\n3 1\n255\n0 127 255\n");
  EXPECT_EQ(r.ascii, "@+.\n");
}

TEST(RenderDirtMap, FixedScale) {
  const DirtMap dm(load_grid(".."), {0, 1}, {77, 154});
  EXPECT_EQ(render_dirt_map(dm, true).pgm, "P2\n2 1\n255\n0 0\n");
  EXPECT_EQ(render_dirt_map(dm, false).pgm, "P2\n2 1\n255\n127 0\n");
}

TEST(RenderTimeMap, HalfSecondDigits) {
  const DirtMap dm(load_grid("...#\n..."
                             "."),
                   {0, 1}, {0, 13, 30, 0, 45, 60, 70, 12});
  const auto r = render_time_map(dm);
  EXPECT_EQ(r.ascii, "023#\n4560\n");
  EXPECT_EQ(r.pgm, "P2\n4 2\n255\n255 170 127 0\n85 42 0 255\n");
}

TEST(RenderPartitionRoutes, SingletonIsStart) {
  const DirtMap dm(load_grid("."), {0, 1}, {5});
  const auto p = partition(dm, 1);
  EXPECT_EQ(render_partition_routes(p, plan_all(p, dm), dm.grid()), "S\n");
}

TEST(RenderPartitionRoutes, TwoRegionGolden) {
  const auto grid = load_grid("..\n..");
  const DirtMap dm(grid, {0, 1}, std::vector<double>(4, 4.0));
  const auto p = partition(dm, 2);
  EXPECT_EQ(render_partition(p, grid), "ab\nab\n");
  EXPECT_EQ(render_partition_routes(p, plan_all(p, dm), grid), "SS\nEE\n");
}

TEST(RenderPartitionRoutes, LettersBetweenMarkers) {
  const auto grid = load_grid("....\n.##.\n....");
  const DirtMap dm(grid, {0, 1}, std::vector<double>(grid.size(), 10.0));
  const auto p = partition(dm, 2);
  const auto routes = plan_all(p, dm);
  const std::string first = render_partition_routes(p, routes, grid);
  EXPECT_EQ(first, render_partition_routes(p, routes, grid));
  EXPECT_EQ(render_partition(p, grid), "abbb\na##b\naaab\n");
  EXPECT_EQ(std::count(first.begin(), first.end(), 'S'), 2);
  EXPECT_EQ(std::count(first.begin(), first.end(), 'E'), 2);
  EXPECT_EQ(std::count(first.begin(), first.end(), '#'), 2);
}

TEST(RenderPartitionRoutes, MismatchRejected) {
  const auto grid = load_grid("..\n..");
  const DirtMap dm(grid, {0, 1}, std::vector<double>(4, 4.0));
  const auto p = partition(dm, 2);
  auto routes = plan_all(p, dm);
  std::swap(routes[0], routes[1]);
  EXPECT_THROW(render_partition_routes(p, routes, grid), Error);
  routes.pop_back();
  EXPECT_THROW(render_partition_routes(p, routes, grid), Error);
}
