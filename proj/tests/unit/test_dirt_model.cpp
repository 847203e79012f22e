#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "teamclean/dirt_model.hpp"
#include "teamclean/error.hpp"

using namespace teamclean;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected teamclean::Error";
  return ErrorKind::io;
}

// Estimator written from the un-telescoped form: the denominator sums every
// inter-pass gap, starting from the epoch.
double term_by_term(const CellHistory& h, double s, double t) {
  double gaps = 0.0;
  double readings = 0.0;
  double previous = h.epoch;
  for (const auto& p : h.passes) {
    gaps += p.time - previous;
    previous = p.time;
    readings += p.reading;
  }
  return (t - s) / gaps * readings;
}

CellHistory history(double epoch, std::initializer_list<Pass> passes) {
  CellHistory h{{0, 0}, epoch, {}};
  for (const auto& p : passes) h = record_pass(h, p.time, p.reading);
  return h;
}

}  // namespace

TEST(RecordPass, Appends) {
  CellHistory h{{1, 2}, 0.0, {}};
  const auto first = record_pass(h, 2, 6);
  EXPECT_EQ(first.passes, (std::vector<Pass>{{2, 6}}));
  const auto second = record_pass(first, 5, 9);
  EXPECT_EQ(second.passes, (std::vector<Pass>{{2, 6}, {5, 9}}));
  EXPECT_EQ(first.passes.size(), 1u);
}

TEST(RecordPass, Rejects) {
  const auto h = history(0, {{2, 6}});
  EXPECT_EQ(kind_of([&] { record_pass(h, 2, 1); }), ErrorKind::ordering);
  EXPECT_EQ(kind_of([&] { record_pass(h, 1, 1); }), ErrorKind::ordering);
  EXPECT_EQ(kind_of([&] { record_pass(h, 3, -1); }), ErrorKind::domain);
  EXPECT_EQ(kind_of([] { record_pass(CellHistory{{0, 0}, 5.0, {}}, 4, 1); }), ErrorKind::ordering);
  EXPECT_NO_THROW(record_pass(CellHistory{{0, 0}, 5.0, {}}, 5, 1));
}

TEST(EstimateCellRate, WorkedExample) {
  const auto h = history(0, {{2, 6}, {5, 9}});
  EXPECT_EQ(term_by_term(h, 5, 10), 15.0);
  EXPECT_EQ(estimate_cell_rate(h, 5, 10), 15.0);
}

TEST(EstimateCellRate, ZeroHorizonAndZeroReadings) {
  EXPECT_EQ(estimate_cell_rate(history(0, {{3, 7}}), 3, 3), 0.0);
  EXPECT_EQ(estimate_cell_rate(history(0, {{4, 0}, {8, 0}}), 8, 20), 0.0);
}

TEST(EstimateCellRate, Errors) {
  EXPECT_EQ(kind_of([] { estimate_cell_rate(history(0, {}), 0, 1); }), ErrorKind::insufficient_data);
  EXPECT_EQ(kind_of([] { estimate_cell_rate(history(3, {{3, 4}}), 3, 4); }),
            ErrorKind::insufficient_data);
  EXPECT_EQ(kind_of([] { estimate_cell_rate(history(0, {{1, 1}}), 4, 3); }), ErrorKind::interval);
}

TEST(EstimateCellRate, MatchesTermByTermOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> gap(0.1, 50.0), reading(0.0, 40.0);
  for (int i = 0; i < 500; ++i) {
    CellHistory h{{0, 0}, gap(rng), {}};
    double t = h.epoch;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int k = 0; k < n; ++k) h = record_pass(h, t += gap(rng), reading(rng));
    const double s = t, end = t + gap(rng);
    const double want = term_by_term(h, s, end);
    EXPECT_NEAR(estimate_cell_rate(h, s, end), want, 1e-9 * std::max(1.0, want));
  }
}

TEST(BuildDirtMap, SingleCell) {
  const auto grid = load_grid(".");
  HistoryMap hs;
  hs[{0, 0}] = CellHistory{{0, 0}, 0, {{1, 10}}};
  const auto dm = build_dirt_map(grid, hs, 1, 2);
  EXPECT_EQ(dm.lambda({0, 0}), 10.0);
  EXPECT_EQ(dm.lambda_total(), 10.0);
  EXPECT_TRUE(dm.insufficient_cells().empty());
}

TEST(BuildDirtMap, EmptyHistoriesFlagged) {
  const auto grid = load_grid("..");
  HistoryMap hs;
  hs[{0, 0}] = CellHistory{{0, 0}, 0, {}};
  hs[{1, 0}] = CellHistory{{1, 0}, 0, {}};
  const auto dm = build_dirt_map(grid, hs, 0, 5);
  EXPECT_EQ(dm.lambda({0, 0}), 0.0);
  EXPECT_EQ(dm.lambda({1, 0}), 0.0);
  EXPECT_EQ(dm.lambda_total(), 0.0);
  EXPECT_EQ(dm.insufficient_cells().size(), 2u);
}

TEST(BuildDirtMap, IdenticalHistoriesGiveEqualLambda) {
  const auto grid = load_grid("..");
  HistoryMap hs;
  hs[{0, 0}] = CellHistory{{0, 0}, 0, {{2, 3}, {4, 8}}};
  hs[{1, 0}] = CellHistory{{1, 0}, 0, {{2, 3}, {4, 8}}};
  const auto dm = build_dirt_map(grid, hs, 4, 9);
  EXPECT_EQ(dm.lambda({0, 0}), dm.lambda({1, 0}));
}

TEST(BuildDirtMap, ObstacleHistoryRejected) {
  const auto grid = load_grid(".#");
  HistoryMap hs;
  hs[{1, 0}] = CellHistory{{1, 0}, 0, {{1, 1}}};
  EXPECT_EQ(kind_of([&] { build_dirt_map(grid, hs, 0, 1); }), ErrorKind::consistency);
  EXPECT_THROW(build_dirt_map(grid, {}, 0, 1).lambda({1, 0}), Error);
}

TEST(TotalDirt, Sums) {
  const auto grid = load_grid("...\n#..");
  DirtMap dm(grid, {0, 1}, {1, 2, 3, 99, 0, 0});
  EXPECT_EQ(total_dirt(dm), 6.0);
  EXPECT_EQ(total_dirt(DirtMap(grid, {0, 1}, std::vector<double>(6, 0.0))), 0.0);
}

TEST(TotalDirt, MatchesIndependentFold) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> level(0, 77);
  const auto grid = load_grid("..#..\n.....\n#...#\n");
  for (int i = 0; i < 50; ++i) {
    std::vector<double> lambda(grid.size());
    for (auto& l : lambda) l = level(rng);
    DirtMap dm(grid, {0, 1}, lambda);
    double fold = 0.0;
    for (int y = 0; y < grid.height(); ++y)
      for (int x = 0; x < grid.width(); ++x)
        if (grid.is_free({x, y})) fold += lambda[grid.index({x, y})];
    EXPECT_NEAR(total_dirt(dm), fold, 1e-9 * grid.size());
  }
}

TEST(IngestPassLog, SortsAndGroups) {
  const auto grid = load_grid("..\n#.");
  const auto hs = ingest_pass_log("x,y,t,k\n1,1,5,9\n0,0,3,1\n1,1,2,6\n", grid, 0);
  ASSERT_EQ(hs.size(), 3u);
  EXPECT_EQ(hs.at({1, 1}).passes, (std::vector<Pass>{{2, 6}, {5, 9}}));
  EXPECT_TRUE(hs.at({1, 0}).passes.empty());
  const auto dm = build_dirt_map(grid, hs, 5, 10);
  EXPECT_EQ(dm.lambda({1, 1}), 15.0);
  EXPECT_TRUE(dm.insufficient({1, 0}));
}

TEST(IngestPassLog, Errors) {
  const auto grid = load_grid("..\n#.");
  EXPECT_EQ(kind_of([&] { ingest_pass_log("a,b\n", grid, 0); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([&] { ingest_pass_log("x,y,t,k\n0,0,1\n", grid, 0); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([&] { ingest_pass_log("x,y,t,k\n0,0,1,zz\n", grid, 0); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([&] { ingest_pass_log("x,y,t,k\n0,0,1,1\n0,0,1,2\n", grid, 0); }),
            ErrorKind::ordering);
  EXPECT_EQ(kind_of([&] { ingest_pass_log("x,y,t,k\n0,1,1,1\n", grid, 0); }),
            ErrorKind::consistency);
  EXPECT_EQ(kind_of([&] { ingest_pass_log("x,y,t,k\n5,5,1,1\n", grid, 0); }),
            ErrorKind::consistency);
  EXPECT_EQ(kind_of([&] { ingest_pass_log("x,y,t,k\n0,0,1,-3\n", grid, 0); }), ErrorKind::domain);
}
