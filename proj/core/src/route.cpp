#include "teamclean/route.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>

#include "teamclean/error.hpp"

namespace teamclean {

int cell_distance(Cell a, Cell b) noexcept { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

namespace {

// Depth-first walk over the family of nearest-neighbour tours. Children are
// visited in increasing cell order, so completed tours appear in lexicographic
// order and the first tour reaching a distance is the smallest at that cost.
// A branch is cut once its distance plus the closest pairwise gap per
// remaining city cannot beat the best tour found, which leaves the minimum unchanged.
class TourSearch {
 public:
  TourSearch(std::vector<Cell> cities, const RouteOptions& options)
      : cities_(std::move(cities)), options_(options), used_(cities_.size(), false) {
    for (std::size_t i = 0; i < cities_.size(); ++i) {
      for (std::size_t j = i + 1; j < cities_.size(); ++j) {
        min_step_ = std::min(min_step_, cell_distance(cities_[i], cities_[j]));
      }
    }
  }

  // Searches tours from `start`; keeps the incumbent when nothing strictly
  // better exists. The branch budget is shared by every start.
  void search_from(std::size_t start) {
    path_.assign(1, start);
    used_.assign(cities_.size(), false);
    used_[start] = true;
    descend(0);
  }

  bool has_best() const { return !best_.empty(); }
  VisitOrder best() const {
    VisitOrder out;
    for (auto i : best_) out.cells.push_back(cities_[i]);
    out.travel_distance = best_distance_;
    out.truncated = truncated_;
    return out;
  }

 private:
  void descend(int distance) {
    const std::size_t remaining = cities_.size() - path_.size();
    if (remaining == 0) {
      if (best_.empty() || distance < best_distance_) {
        best_ = path_;
        best_distance_ = distance;
      }
      return;
    }
    if (!best_.empty() && distance + min_step_ * static_cast<int>(remaining) >= best_distance_) return;

    const Cell here = cities_[path_.back()];
    int nearest = std::numeric_limits<int>::max();
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < cities_.size(); ++i) {
      if (used_[i]) continue;
      const int d = cell_distance(here, cities_[i]);
      if (d < nearest) {
        nearest = d;
        tied.assign(1, i);
      } else if (d == nearest) {
        tied.push_back(i);
      }
    }
    if (tied.size() > 1) {
      const std::size_t extra = tied.size() - 1;
      if (branches_ + extra > options_.branch_cap) {
        if (options_.overflow == OverflowPolicy::fail) {
          throw Error(ErrorKind::branching_overflow,
                      "route branching exceeded cap of " + std::to_string(options_.branch_cap));
        }
        truncated_ = true;
        tied.resize(1);
      } else {
        branches_ += extra;
      }
    }
    for (auto i : tied) {
      used_[i] = true;
      path_.push_back(i);
      descend(distance + nearest);
      path_.pop_back();
      used_[i] = false;
    }
  }

  std::vector<Cell> cities_;
  RouteOptions options_;
  std::vector<bool> used_;
  std::vector<std::size_t> path_;
  std::vector<std::size_t> best_;
  int best_distance_ = 0;
  int min_step_ = std::numeric_limits<int>::max();
  std::size_t branches_ = 0;
  bool truncated_ = false;
};

std::vector<Cell> sorted_unique(std::span<const Cell> cells) {
  std::vector<Cell> out(cells.begin(), cells.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw Error(ErrorKind::consistency, "route cells contain duplicates");
  }
  return out;
}

}  // namespace

VisitOrder plan_route_from(std::span<const Cell> cells, Cell start, const RouteOptions& options) {
  auto cities = sorted_unique(cells);
  const auto it = std::lower_bound(cities.begin(), cities.end(), start);
  if (it == cities.end() || *it != start) {
    throw Error(ErrorKind::consistency, "route start is not one of the region cells");
  }
  const auto start_index = static_cast<std::size_t>(it - cities.begin());
  TourSearch search(std::move(cities), options);
  search.search_from(start_index);
  return search.best();
}

VisitOrder plan_route(std::span<const Cell> cells, const RouteOptions& options) {
  if (cells.empty()) throw Error(ErrorKind::consistency, "cannot route an empty region");
  auto cities = sorted_unique(cells);
  const auto n = cities.size();
  TourSearch search(std::move(cities), options);
  for (std::size_t s = 0; s < n; ++s) search.search_from(s);
  return search.best();
}

double dwell_time(double lambda) {
  if (!(lambda >= 0.0)) throw Error(ErrorKind::domain, "dirt level must be nonnegative");
  const double level = std::floor(lambda);
  if (level <= 12) return 0.0;
  if (level <= 26) return 1.0;
  if (level <= 39) return 1.5;
  if (level <= 51) return 2.0;
  if (level <= 64) return 2.5;
  return kMaxDwellSeconds;
}

Route annotate_route(int region_id, const VisitOrder& order, const DirtMap& dirt_map) {
  Route route;
  route.region_id = region_id;
  route.truncated = order.truncated;
  for (std::size_t i = 0; i < order.cells.size(); ++i) {
    const Cell c = order.cells[i];
    if (!dirt_map.grid().is_free(c)) {
      throw Error(ErrorKind::consistency, "route visits a cell without a dirt level");
    }
    route.visits.push_back({c, dwell_time(dirt_map.lambda(c))});
    if (i > 0) route.travel_distance += cell_distance(order.cells[i - 1], c);
  }
  return route;
}

}  // namespace teamclean
