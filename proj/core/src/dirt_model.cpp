#include "teamclean/dirt_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "teamclean/error.hpp"

namespace teamclean {

namespace {

std::string describe(Cell c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

}  // namespace

CellHistory record_pass(CellHistory history, double t, double k) {
  if (!std::isfinite(t) || !std::isfinite(k)) {
    throw Error(ErrorKind::domain, "pass time and reading must be finite");
  }
  if (k < 0.0) throw Error(ErrorKind::domain, "negative dirt reading at " + describe(history.cell));
  if (history.passes.empty() ? t < history.epoch : t <= history.passes.back().time) {
    throw Error(ErrorKind::ordering, "pass times must increase at " + describe(history.cell));
  }
  history.passes.push_back({t, k});
  return history;
}

double estimate_cell_rate(const CellHistory& history, double s, double t) {
  if (s > t) throw Error(ErrorKind::interval, "horizon start after end");
  if (history.passes.empty()) {
    throw Error(ErrorKind::insufficient_data, "no passes recorded at " + describe(history.cell));
  }
  const double span = history.passes.back().time - history.epoch;
  if (!(span > 0.0)) {
    throw Error(ErrorKind::insufficient_data, "zero observation span at " + describe(history.cell));
  }
  double readings = 0.0;
  for (const auto& p : history.passes) readings += p.reading;
  return (t - s) / span * readings;
}

HistoryMap ingest_pass_log(std::string_view csv, const GridMap& grid, double epoch) {
  struct Row {
    Cell cell;
    double t;
    double k;
  };
  std::vector<Row> rows;
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "x,y,t,k") {
        throw Error(ErrorKind::parse, "pass log must start with header x,y,t,k");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (fields.size() != 4) {
      throw Error(ErrorKind::parse, "pass log line " + std::to_string(line_no) + ": expected 4 fields");
    }
    Row row{};
    try {
      std::size_t used = 0;
      row.cell.x = std::stoi(fields[0], &used);
      if (used != fields[0].size()) throw std::invalid_argument("x");
      row.cell.y = std::stoi(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument("y");
      row.t = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument("t");
      row.k = std::stod(fields[3], &used);
      if (used != fields[3].size()) throw std::invalid_argument("k");
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::parse, "pass log line " + std::to_string(line_no) + ": malformed number");
    }
    if (!grid.in_bounds(row.cell)) {
      throw Error(ErrorKind::consistency,
                  "pass log line " + std::to_string(line_no) + ": cell " + describe(row.cell) + " outside grid");
    }
    if (!grid.is_free(row.cell)) {
      throw Error(ErrorKind::consistency,
                  "pass log line " + std::to_string(line_no) + ": cell " + describe(row.cell) + " is an obstacle");
    }
    rows.push_back(row);
  }
  if (!header_seen) throw Error(ErrorKind::parse, "empty pass log");

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.cell != b.cell ? a.cell < b.cell : a.t < b.t;
  });
  HistoryMap out;
  for (Cell c : grid.free_cells()) out.emplace(c, CellHistory{c, epoch, {}});
  for (const auto& row : rows) {
    auto& h = out.at(row.cell);
    h = record_pass(std::move(h), row.t, row.k);
  }
  return out;
}

DirtMap::DirtMap(GridMap grid, Horizon horizon, std::vector<double> lambda,
                 std::vector<std::uint8_t> insufficient)
    : grid_(std::move(grid)),
      horizon_(horizon),
      lambda_(std::move(lambda)),
      insufficient_(std::move(insufficient)) {
  if (horizon_.start > horizon_.end) throw Error(ErrorKind::interval, "horizon start after end");
  if (lambda_.size() != grid_.size()) {
    throw Error(ErrorKind::consistency, "lambda vector does not match grid size");
  }
  if (insufficient_.empty()) insufficient_.assign(grid_.size(), 0);
  if (insufficient_.size() != grid_.size()) {
    throw Error(ErrorKind::consistency, "insufficient-data flags do not match grid size");
  }
  for (std::size_t i = 0; i < lambda_.size(); ++i) {
    if (!grid_.is_free(grid_.cell_at(i))) {
      lambda_[i] = 0.0;
      insufficient_[i] = 0;
      continue;
    }
    if (!(lambda_[i] >= 0.0) || !std::isfinite(lambda_[i])) {
      throw Error(ErrorKind::domain, "dirt level must be finite and nonnegative at " + describe(grid_.cell_at(i)));
    }
    lambda_total_ += lambda_[i];
  }
}

double DirtMap::lambda(Cell c) const {
  if (!grid_.is_free(c)) throw Error(ErrorKind::consistency, "no dirt level for cell " + describe(c));
  return lambda_[grid_.index(c)];
}

bool DirtMap::insufficient(Cell c) const {
  if (!grid_.is_free(c)) throw Error(ErrorKind::consistency, "no dirt level for cell " + describe(c));
  return insufficient_[grid_.index(c)] != 0;
}

std::vector<Cell> DirtMap::insufficient_cells() const {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < insufficient_.size(); ++i) {
    if (insufficient_[i]) out.push_back(grid_.cell_at(i));
  }
  return out;
}

double DirtMap::max_lambda() const {
  double m = 0.0;
  for (std::size_t i = 0; i < lambda_.size(); ++i) {
    if (grid_.is_free(grid_.cell_at(i))) m = std::max(m, lambda_[i]);
  }
  return m;
}

DirtMap build_dirt_map(const GridMap& grid, const HistoryMap& histories, double s, double t) {
  if (s > t) throw Error(ErrorKind::interval, "horizon start after end");
  for (const auto& [cell, history] : histories) {
    if (!grid.is_free(cell) || history.cell != cell) {
      throw Error(ErrorKind::consistency, "history supplied for non-free cell " + describe(cell));
    }
  }
  std::vector<double> lambda(grid.size(), 0.0);
  std::vector<std::uint8_t> insufficient(grid.size(), 0);
  for (Cell c : grid.free_cells()) {
    const auto it = histories.find(c);
    if (it == histories.end()) {
      insufficient[grid.index(c)] = 1;
      continue;
    }
    try {
      lambda[grid.index(c)] = estimate_cell_rate(it->second, s, t);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::insufficient_data) throw;
      insufficient[grid.index(c)] = 1;
    }
  }
  return DirtMap(grid, {s, t}, std::move(lambda), std::move(insufficient));
}

double total_dirt(const DirtMap& dirt_map) { return dirt_map.lambda_total(); }

}  // namespace teamclean
