#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "teamclean/error.hpp"
#include "teamclean/grid.hpp"

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

}  // namespace

TEST(LoadGrid, AllFree) {
  const auto g = load_grid("..\n..");
  EXPECT_EQ(g.width(), 2);
  EXPECT_EQ(g.height(), 2);
  EXPECT_EQ(g.free_count(), 4u);
}

TEST(LoadGrid, SingleObstacle) {
  const auto g = load_grid(".#\n..");
  EXPECT_EQ(g.free_count(), 3u);
  EXPECT_FALSE(g.is_free({1, 0}));
  EXPECT_TRUE(g.is_free({0, 1}));
}

TEST(LoadGrid, RaggedRowNamesRow) {
  try {
    load_grid(".\n..");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_NE(std::string(e.what()).find("ragged row 2"), std::string::npos) << e.what();
  }
}

TEST(LoadGrid, UnknownCharacterNamesRowAndColumn) {
  try {
    load_grid("..\n.x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_NE(std::string(e.what()).find("row 2, column 2"), std::string::npos) << e.what();
  }
}

TEST(LoadGrid, EmptyInput) {
  EXPECT_EQ(kind_of([] { load_grid(""); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { load_grid("cellsize 0.5\n"); }), ErrorKind::parse);
}

TEST(LoadGrid, CellSizeHeader) {
  const auto g = load_grid("cellsize 0.33\n.#.\n...\n");
  ASSERT_TRUE(g.cell_size());
  EXPECT_DOUBLE_EQ(*g.cell_size(), 0.33);
  EXPECT_EQ(g.height(), 2);
  EXPECT_EQ(kind_of([] { load_grid("cellsize -1\n.."); }), ErrorKind::parse);
}

TEST(LoadGrid, CrLfAccepted) {
  const auto g = load_grid("..\r\n#.\r\n");
  EXPECT_EQ(g.free_count(), 3u);
}

TEST(GridMap, NeighboursAndConnectivity) {
  const auto g = load_grid(".#.\n...\n");
  const auto n = g.free_neighbors({1, 1});
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(n[0], (Cell{2, 1}));
  EXPECT_EQ(n[1], (Cell{0, 1}));
  EXPECT_TRUE(g.free_space_connected());
  EXPECT_FALSE(load_grid(".#.\n.#.\n").free_space_connected());
}

TEST(GridMap, RenderRoundTripsRandomGrids) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    auto g = oracle::random_connected_grid(rng, 200, 0.5);
    EXPECT_EQ(load_grid(render_grid_text(g)), g);
    GridMap sized(g.width(), g.height(),
                  [&] {
                    std::vector<Occupancy> occ;
                    for (std::size_t k = 0; k < g.size(); ++k) {
                      occ.push_back(g.is_free(g.cell_at(k)) ? Occupancy::free : Occupancy::obstacle);
                    }
                    return occ;
                  }(),
                  0.25);
    EXPECT_EQ(load_grid(render_grid_text(sized)), sized);
  }
}
