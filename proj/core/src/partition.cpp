#include "teamclean/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "teamclean/error.hpp"

namespace teamclean {

VertexGraph::VertexGraph(const DirtMap& dirt_map)
    : width_(dirt_map.grid().width()), height_(dirt_map.grid().height()) {
  const GridMap& grid = dirt_map.grid();
  index_of_.assign(grid.size(), -1);
  for (Cell c : grid.free_cells()) {
    index_of_[grid.index(c)] = static_cast<std::ptrdiff_t>(vertices_.size());
    vertices_.push_back({c, dirt_map.lambda(c), false, {}});
  }
  for (auto& v : vertices_) {
    for (Cell n : grid.free_neighbors(v.coord)) {
      v.neighbors.push_back(static_cast<std::size_t>(index_of_[grid.index(n)]));
    }
  }
}

std::optional<std::size_t> VertexGraph::find(Cell c) const {
  if (c.x < 0 || c.y < 0 || c.x >= width_ || c.y >= height_) return std::nullopt;
  const auto i = index_of_[static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
                           static_cast<std::size_t>(c.x)];
  if (i < 0) return std::nullopt;
  return static_cast<std::size_t>(i);
}

std::size_t VertexGraph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (auto n : vertices_[v].neighbors) d += !vertices_[n].visited;
  return d;
}

std::vector<std::size_t> start_candidates(const VertexGraph& graph) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (!graph[v].visited) out.push_back(v);
  }
  auto key = [&graph](std::size_t v) {
    const Cell c = graph[v].coord;
    const int diff = (graph.grid_height() - 1 - c.y) - c.x;
    return std::tuple(graph.degree(v), -diff, c.y, c.x);
  };
  std::stable_sort(out.begin(), out.end(),
                   [&key](std::size_t a, std::size_t b) { return key(a) < key(b); });
  return out;
}

const CellVertex& select_start_vertex(const VertexGraph& graph) {
  const auto order = start_candidates(graph);
  if (order.empty()) throw Error(ErrorKind::exhausted, "no unvisited vertex left");
  return graph[order.front()];
}

std::string_view to_string(RegionFlag flag) {
  switch (flag) {
    case RegionFlag::over: return "over";
    case RegionFlag::under: return "under";
    case RegionFlag::exact: return "exact";
    case RegionFlag::capped: return "capped";
    case RegionFlag::remainder: return "remainder";
  }
  return "exact";
}

RegionFlag region_flag_from_string(std::string_view text) {
  for (auto f : {RegionFlag::over, RegionFlag::under, RegionFlag::exact, RegionFlag::capped,
                 RegionFlag::remainder}) {
    if (to_string(f) == text) return f;
  }
  throw Error(ErrorKind::parse, "unknown region flag '" + std::string(text) + "'");
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Step {
  std::size_t vertex;
  int dir;  // vertical preference after arriving: +1 down, -1 up
};

// Where the next region should try to begin.
struct Continuation {
  std::size_t last = kNone;
  int last_dir = 1;
  std::optional<Step> declined;
};

class Search {
 public:
  Search(const DirtMap& dirt_map, int robots, const PartitionOptions& options)
      : graph_(dirt_map),
        robots_(robots),
        budget_(options.expansion_budget),
        owner_(graph_.size(), -1),
        stamp_(graph_.size(), 0),
        unclaimed_(graph_.size()) {
    lambda_total_ = dirt_map.lambda_total();
    lambda_s_ = lambda_total_ / robots_;
    tol_ = 1e-9 * std::max(1.0, std::abs(lambda_s_));
  }

  // Region 0 starts from each start candidate in turn, the preferred one
  // first with a quarter of the budget and the rest with a sixteenth each.
  Partition run() {
    const auto roots = start_candidates(graph_);
    bool exhaustive = true;
    for (std::size_t a = 0; a < roots.size() && expansions_ < budget_; ++a) {
      const std::uint64_t slice = std::max<std::uint64_t>(1, a == 0 ? budget_ / 4 : budget_ / 16);
      attempt_limit_ = std::min(budget_, expansions_ + slice);
      root_ = roots[a];
      try {
        if (solve(0, Continuation{})) return result();
      } catch (const AttemptSpent&) {
        exhaustive = false;
        reset();
      }
    }
    if (exhaustive && expansions_ < budget_) {
      throw Error(ErrorKind::partition_failure,
                  "backtracking exhausted every combination without a valid region split");
    }
    throw Error(ErrorKind::partition_failure, spent_);
  }

 private:
  struct AttemptSpent {};

  Partition result() const {
    Partition out;
    out.lambda_s = lambda_s_;
    out.lambda_total = lambda_total_;
    out.regions = closed_;
    return out;
  }

  void reset() {
    for (std::size_t v = 0; v < graph_.size(); ++v) {
      if (owner_[v] != -1) release(v);
    }
    closed_.clear();
  }

  struct Growth {
    std::vector<Step> steps;
    double lambda = 0.0;
  };

  void claim(std::size_t v, int region) {
    owner_[v] = region;
    graph_.set_visited(v, true);
    --unclaimed_;
    state_ ^= zobrist(v, region);
  }

  void release(std::size_t v) {
    state_ ^= zobrist(v, owner_[v]);
    owner_[v] = -1;
    graph_.set_visited(v, false);
    ++unclaimed_;
  }

  static std::uint64_t zobrist(std::size_t v, int region) {
    std::uint64_t z = v * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(region) + 1;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  void tick(int region) {
    if (++expansions_ > attempt_limit_) {
      std::ostringstream os;
      os << "backtracking budget of " << budget_ << " expansions exceeded while building region "
         << region << " (" << closed_.size() << " regions closed, " << unclaimed_
         << " cells unassigned)";
      spent_ = os.str();
      throw AttemptSpent{};
    }
  }

  bool next_flag_is_over() const {
    std::size_t alternating = 0;
    for (const auto& r : closed_) {
      alternating += r.flag == RegionFlag::over || r.flag == RegionFlag::under;
    }
    return alternating % 2 == 0;
  }

  // Unclaimed vertex v preceded by `from` (arrived with vertical preference dir).
  Step step_from(std::size_t from, int dir, std::size_t v) const {
    const Cell a = graph_[from].coord;
    const Cell b = graph_[v].coord;
    return {v, a.x == b.x ? b.y - a.y : -dir};
  }

  // Unclaimed neighbours of `from` in serpentine order: vertical in the
  // current direction, vertical against it, right, left.
  void serpentine_neighbors(std::size_t from, int dir, std::vector<Step>& out) {
    const Cell c = graph_[from].coord;
    for (Cell n : {Cell{c.x, c.y + dir}, Cell{c.x, c.y - dir}, Cell{c.x + 1, c.y},
                   Cell{c.x - 1, c.y}}) {
      const auto v = graph_.find(n);
      if (!v || owner_[*v] != -1 || stamp_[*v] == generation_) continue;
      stamp_[*v] = generation_;
      out.push_back(step_from(from, dir, *v));
    }
  }

  // Frontier of the growing region: neighbours of the newest cell first, then
  // walking back through already-claimed cells.
  std::vector<Step> frontier(const Growth& g) {
    ++generation_;
    std::vector<Step> out;
    for (auto it = g.steps.rbegin(); it != g.steps.rend(); ++it) {
      serpentine_neighbors(it->vertex, it->dir, out);
    }
    return out;
  }

  struct Components {
    std::vector<int> label;
    int count = 0;
  };

  Components unclaimed_components() const {
    Components out;
    out.label.assign(graph_.size(), -1);
    std::queue<std::size_t> queue;
    for (std::size_t s = 0; s < graph_.size(); ++s) {
      if (owner_[s] != -1 || out.label[s] != -1) continue;
      out.label[s] = out.count;
      queue.push(s);
      while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop();
        for (auto n : graph_[v].neighbors) {
          if (owner_[n] == -1 && out.label[n] == -1) {
            out.label[n] = out.count;
            queue.push(n);
          }
        }
      }
      ++out.count;
    }
    return out;
  }

  // Articulation points of the unclaimed cells (iterative Tarjan).
  std::vector<char> cut_vertices() const {
    struct Frame {
      std::size_t v, parent, next;
      int children;
    };
    const auto n = graph_.size();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<char> cut(n, 0);
    std::vector<Frame> stack;
    int timer = 0;
    for (std::size_t root = 0; root < n; ++root) {
      if (owner_[root] != -1 || disc[root] != -1) continue;
      disc[root] = low[root] = timer++;
      stack.push_back({root, kNone, 0, 0});
      while (!stack.empty()) {
        Frame& f = stack.back();
        const auto& nb = graph_[f.v].neighbors;
        if (f.next < nb.size()) {
          const auto w = nb[f.next++];
          if (owner_[w] != -1 || w == f.parent) continue;
          if (disc[w] == -1) {
            disc[w] = low[w] = timer++;
            ++f.children;
            stack.push_back({w, f.v, 0, 0});
          } else {
            low[f.v] = std::min(low[f.v], disc[w]);
          }
          continue;
        }
        const Frame done = f;
        stack.pop_back();
        if (stack.empty()) {
          if (done.children > 1) cut[done.v] = 1;
        } else {
          Frame& up = stack.back();
          low[up.v] = std::min(low[up.v], low[done.v]);
          if (up.parent != kNone && low[done.v] >= disc[up.v]) cut[up.v] = 1;
        }
      }
    }
    return cut;
  }

  bool unclaimed_connected() const { return unclaimed_components().count <= 1; }

  // When the unclaimed cells are split, the region has to swallow every piece
  // but one before it reaches the target. Returns the label of the piece to
  // keep, -1 when there is a single piece, nullopt when no piece can be kept.
  // `forced` is set when exactly one piece can be kept.
  std::optional<int> keepable_component(const Growth& g, const Components& comps,
                                        std::size_t robots_after, bool over,
                                        bool& forced) const {
    forced = false;
    if (comps.count <= 1) return -1;
    std::vector<std::size_t> count(comps.count, 0);
    std::vector<double> sum(comps.count, 0.0);
    std::vector<double> top(comps.count, 0.0);
    for (std::size_t v = 0; v < graph_.size(); ++v) {
      const int l = comps.label[v];
      if (l < 0) continue;
      ++count[l];
      sum[l] += graph_[v].lambda;
      top[l] = std::max(top[l], graph_[v].lambda);
    }
    std::optional<int> best;
    int keepable = 0;
    for (int k = 0; k < comps.count; ++k) {
      if (count[k] < robots_after) continue;
      double others_sum = 0.0;
      double others_top = 0.0;
      for (int j = 0; j < comps.count; ++j) {
        if (j == k) continue;
        others_sum += sum[j];
        others_top = std::max(others_top, top[j]);
      }
      // The pockets end up inside the region. An over region may pass the
      // target by its last cell only; any other close stays at or under it.
      const double total = g.lambda + others_sum;
      const bool fits = total <= lambda_s_ + tol_ ||
                        (over && total - others_top < lambda_s_ - tol_);
      if (!fits) continue;
      ++keepable;
      if (!best || count[k] > count[*best]) best = k;
    }
    forced = keepable == 1;
    return best;
  }

  bool solve(int k, const Continuation& cont) {
    if (k == robots_ - 1) {
      build_final(k, cont);
      return true;
    }
    const auto starts = k == 0 ? std::vector<Step>{{root_, 1}} : start_steps(cont);
    for (const Step& start : starts) {
      claim(start.vertex, k);
      Growth g;
      g.steps.push_back(start);
      g.lambda = graph_[start.vertex].lambda;
      if (extend(k, g)) return true;
      release(start.vertex);
    }
    return false;
  }

  std::vector<Step> start_steps(const Continuation& cont) {
    ++generation_;
    std::vector<Step> out;
    if (cont.declined) {
      stamp_[cont.declined->vertex] = generation_;
      out.push_back(*cont.declined);
    } else if (cont.last != kNone) {
      serpentine_neighbors(cont.last, cont.last_dir, out);
    }
    for (auto v : start_candidates(graph_)) {
      if (stamp_[v] == generation_) continue;
      stamp_[v] = generation_;
      out.push_back({v, 1});
    }
    return out;
  }

  bool extend(int k, Growth& g) {
    tick(k);
    const auto robots_after = static_cast<std::size_t>(robots_ - k - 1);
    if (std::abs(g.lambda - lambda_s_) <= tol_) return close(k, g, RegionFlag::exact, std::nullopt);
    if (g.lambda > lambda_s_) {
      if (next_flag_is_over()) return close(k, g, RegionFlag::over, std::nullopt);
      if (g.steps.size() >= 2) {
        const Step last = g.steps.back();
        g.steps.pop_back();
        g.lambda -= graph_[last.vertex].lambda;
        release(last.vertex);
        if (close(k, g, RegionFlag::under, last)) return true;
        claim(last.vertex, k);
        g.lambda += graph_[last.vertex].lambda;
        g.steps.push_back(last);
        return false;
      }
      if (unclaimed_ == robots_after) return close(k, g, RegionFlag::capped, std::nullopt);
      return false;
    }
    if (unclaimed_ == robots_after) return close(k, g, RegionFlag::capped, std::nullopt);

    // Whether a growing region can still succeed depends only on who owns
    // what, so a state that failed once fails for every ordering reaching it.
    const std::uint64_t key = state_ ^ (next_flag_is_over() ? 0 : 0xA5A5A5A5A5A5A5A5ull);
    if (dead_.count(key)) return false;
    const auto comps = unclaimed_components();
    bool forced = false;
    const auto keep = keepable_component(g, comps, robots_after, next_flag_is_over(), forced);
    if (!keep) {
      dead_.insert(key);
      return false;
    }
    // Cut-off pockets first, then cells that leave the unclaimed cells in one
    // piece, then cells that split them. Within a rank, cells with fewer
    // unclaimed neighbours go first, then serpentine order.
    auto candidates = frontier(g);
    // With only one piece that can stay, the others must be swallowed whole
    // anyway, and doing that first reaches every region the search could.
    if (forced) {
      std::erase_if(candidates, [&](const Step& s) { return comps.label[s.vertex] == *keep; });
    }
    const auto cut = cut_vertices();
    auto rank = [&](const Step& s) {
      const bool pocket = *keep >= 0 && comps.label[s.vertex] != *keep;
      int open = 0;
      for (auto n : graph_[s.vertex].neighbors) open += owner_[n] == -1;
      return ((pocket ? 0 : 2) + cut[s.vertex]) * 8 + open;
    };
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](const Step& a, const Step& b) { return rank(a) < rank(b); });
    for (const Step& next : candidates) {
      claim(next.vertex, k);
      g.steps.push_back(next);
      g.lambda += graph_[next.vertex].lambda;
      if (extend(k, g)) return true;
      g.lambda -= graph_[next.vertex].lambda;
      g.steps.pop_back();
      release(next.vertex);
    }
    dead_.insert(key);
    return false;
  }

  bool close(int k, const Growth& g, RegionFlag flag, std::optional<Step> declined) {
    if (!unclaimed_connected()) return false;
    Region region;
    region.id = k;
    region.flag = flag;
    region.lambda_actual = g.lambda;
    for (const auto& s : g.steps) region.cells.push_back(graph_[s.vertex].coord);
    if (declined) region.declined = graph_[declined->vertex].coord;
    closed_.push_back(std::move(region));

    Continuation cont;
    cont.last = g.steps.back().vertex;
    cont.last_dir = g.steps.back().dir;
    cont.declined = declined;
    if (solve(k + 1, cont)) return true;
    closed_.pop_back();
    return false;
  }

  void build_final(int k, const Continuation& cont) {
    const auto starts = start_steps(cont);
    Region region;
    region.id = k;
    if (!starts.empty()) {
      Growth g;
      g.steps.push_back(starts.front());
      claim(starts.front().vertex, k);
      g.lambda = graph_[starts.front().vertex].lambda;
      for (;;) {
        const auto candidates = frontier(g);
        if (candidates.empty()) break;
        claim(candidates.front().vertex, k);
        g.steps.push_back(candidates.front());
        g.lambda += graph_[candidates.front().vertex].lambda;
      }
      region.lambda_actual = g.lambda;
      for (const auto& s : g.steps) region.cells.push_back(graph_[s.vertex].coord);
    }
    region.flag = std::abs(region.lambda_actual - lambda_s_) <= tol_ ? RegionFlag::exact
                                                                     : RegionFlag::remainder;
    closed_.push_back(std::move(region));
  }

  VertexGraph graph_;
  int robots_;
  std::uint64_t budget_;
  std::uint64_t expansions_ = 0;
  std::uint64_t attempt_limit_ = 0;
  std::size_t root_ = 0;
  std::string spent_;
  std::vector<int> owner_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t generation_ = 0;
  std::size_t unclaimed_;
  std::uint64_t state_ = 0;
  std::unordered_set<std::uint64_t> dead_;
  double lambda_total_ = 0.0;
  double lambda_s_ = 0.0;
  double tol_ = 0.0;
  std::vector<Region> closed_;
};

}  // namespace

Partition partition(const DirtMap& dirt_map, int robot_count, const PartitionOptions& options) {
  const auto free = dirt_map.grid().free_count();
  if (robot_count < 1) throw Error(ErrorKind::infeasible, "robot count must be at least 1");
  if (free == 0) throw Error(ErrorKind::topology, "map has no free cells");
  if (static_cast<std::size_t>(robot_count) > free) {
    throw Error(ErrorKind::infeasible, "more robots (" + std::to_string(robot_count) +
                                           ") than free cells (" + std::to_string(free) + ")");
  }
  if (!dirt_map.grid().free_space_connected()) {
    throw Error(ErrorKind::topology, "free space is not 4-connected");
  }
  return Search(dirt_map, robot_count, options).run();
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const ValidationCheck& ValidationReport::check(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorKind::consistency, "no validation check named " + std::string(name));
}

ValidationReport validate_partition(const Partition& partition, const GridMap& grid) {
  ValidationReport report;
  std::vector<int> seen(grid.size(), -1);

  ValidationCheck coverage{"coverage", true, {}, {}};
  ValidationCheck disjoint{"disjointness", true, {}, {}};
  for (const auto& region : partition.regions) {
    std::set<Cell> mine;
    for (Cell c : region.cells) {
      if (!grid.is_free(c)) {
        coverage.passed = false;
        coverage.offending.push_back(c);
        continue;
      }
      auto& owner = seen[grid.index(c)];
      if (owner != -1 && (owner != region.id || mine.count(c))) {
        disjoint.passed = false;
        disjoint.offending.push_back(c);
      }
      owner = region.id;
      mine.insert(c);
    }
  }
  for (Cell c : grid.free_cells()) {
    if (seen[grid.index(c)] == -1) {
      coverage.passed = false;
      coverage.offending.push_back(c);
    }
  }
  if (!coverage.passed) coverage.detail = "cells missing from every region or not free";
  if (!disjoint.passed) disjoint.detail = "cells assigned more than once";

  ValidationCheck connectivity{"connectivity", true, {}, {}};
  for (const auto& region : partition.regions) {
    if (region.cells.empty()) {
      connectivity.passed = false;
      connectivity.detail += "region " + std::to_string(region.id) + " is empty; ";
      continue;
    }
    std::vector<bool> member(grid.size(), false);
    for (Cell c : region.cells) {
      if (grid.in_bounds(c)) member[grid.index(c)] = true;
    }
    int count = 0;
    const auto label = label_components(grid, member, &count);
    if (count > 1) {
      connectivity.passed = false;
      connectivity.detail += "region " + std::to_string(region.id) + " has " +
                             std::to_string(count) + " pieces; ";
      for (Cell c : region.cells) {
        if (grid.in_bounds(c) && label[grid.index(c)] != 0) connectivity.offending.push_back(c);
      }
    }
  }

  ValidationCheck conservation{"conservation", true, {}, {}};
  double sum = 0.0;
  for (const auto& region : partition.regions) sum += region.lambda_actual;
  if (std::abs(sum - partition.lambda_total) >
      1e-9 * std::max(1.0, std::abs(partition.lambda_total))) {
    conservation.passed = false;
    std::ostringstream os;
    os.precision(17);
    os << "region sum " << sum << " != lambda_total " << partition.lambda_total;
    conservation.detail = os.str();
  }

  ValidationCheck alternation{"alternation", true, {}, {}};
  bool expect_over = true;
  for (std::size_t i = 0; i + 1 < partition.regions.size(); ++i) {
    const auto& region = partition.regions[i];
    if (region.flag != RegionFlag::over && region.flag != RegionFlag::under) continue;
    if ((region.flag == RegionFlag::over) != expect_over) {
      alternation.passed = false;
      alternation.detail += "region " + std::to_string(region.id) + " flagged " +
                            std::string(to_string(region.flag)) + " out of turn; ";
    }
    expect_over = !expect_over;
  }

  report.checks = {coverage, disjoint, connectivity, conservation, alternation};
  return report;
}

}  // namespace teamclean
