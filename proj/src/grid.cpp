#include "pathstat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pathstat {

PatternGrid::PatternGrid(std::vector<std::vector<double>> cuts) : cuts_(std::move(cuts)) {
  if (cuts_.empty()) throw std::invalid_argument("pattern grid needs at least one coordinate");
  for (const auto& c : cuts_) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!std::isfinite(c[i])) throw std::invalid_argument("grid cut points must be finite");
      if (i > 0 && !(c[i - 1] < c[i])) {
        throw std::invalid_argument("grid cut points must be strictly increasing");
      }
    }
    cell_count_ *= c.size() + 1;
  }
}

PatternGrid PatternGrid::product(const std::vector<double>& cuts, std::size_t k) {
  if (k == 0) throw std::invalid_argument("grid order must be positive");
  return PatternGrid(std::vector<std::vector<double>>(k, cuts));
}

IntervalPattern PatternGrid::cell(std::size_t index) const {
  if (index >= cell_count_) throw std::invalid_argument("grid cell index out of range");
  std::vector<Interval> ivs(order());
  for (std::size_t j = order(); j-- > 0;) {
    const std::size_t g = cells_along(j);
    const std::size_t c = index % g;
    index /= g;
    const auto& cut = cuts_[j];
    ivs[j].lo = c == 0 ? -kInf : cut[c - 1];
    ivs[j].hi = c == cut.size() ? kInf : cut[c];
  }
  return IntervalPattern(std::move(ivs));
}

long PatternGrid::label(std::size_t j, double x) const noexcept {
  const auto& cut = cuts_[j];
  const auto it = std::lower_bound(cut.begin(), cut.end(), x);
  if (it != cut.end() && *it == x) return -1;
  return static_cast<long>(it - cut.begin());
}

PatternGrid PatternGrid::leading(std::size_t k) const {
  if (k == 0 || k > order()) throw std::invalid_argument("invalid leading grid order");
  return PatternGrid(std::vector<std::vector<double>>(cuts_.begin(), cuts_.begin() + k));
}

std::size_t CellOccurrences::count_below(std::size_t c, std::size_t n) const {
  const auto s = cell(c);
  return static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), n) - s.begin());
}

std::size_t CellOccurrences::hits_below(std::size_t n) const {
  return static_cast<std::size_t>(
      std::lower_bound(hit_windows.begin(), hit_windows.end(), n) - hit_windows.begin());
}

CellOccurrences cell_occurrences(const Path& path, const PatternGrid& grid) {
  const std::size_t k = grid.order();
  const std::size_t len = path.length();
  if (k > len) throw std::invalid_argument("grid order exceeds path length");
  const auto xs = path.values();

  // Per-coordinate labels; coordinates sharing cut points share one pass.
  std::vector<std::vector<long>> labels(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (j > 0 && grid.cuts(j) == grid.cuts(j - 1)) {
      labels[j] = labels[j - 1];
      continue;
    }
    labels[j].resize(len);
    for (std::size_t i = 0; i < len; ++i) labels[j][i] = grid.label(j, xs[i]);
  }

  CellOccurrences out;
  out.horizon = len - k + 1;
  std::vector<long> code(out.horizon, -1);
  std::vector<std::size_t> counts(grid.cell_count(), 0);
  for (std::size_t i = 0; i < out.horizon; ++i) {
    long c = 0;
    bool hit = false;
    for (std::size_t j = 0; j < k; ++j) {
      const long l = labels[j][i + j];
      if (l < 0) {
        hit = true;
        break;
      }
      c = c * static_cast<long>(grid.cells_along(j)) + l;
    }
    if (hit) {
      out.hit_windows.push_back(i);
    } else {
      code[i] = c;
      ++counts[static_cast<std::size_t>(c)];
    }
  }

  out.offsets.assign(grid.cell_count() + 1, 0);
  for (std::size_t c = 0; c < counts.size(); ++c) out.offsets[c + 1] = out.offsets[c] + counts[c];
  out.indices.resize(out.offsets.back());
  std::vector<std::size_t> fill(out.offsets.begin(), out.offsets.end() - 1);
  for (std::size_t i = 0; i < out.horizon; ++i) {
    if (code[i] >= 0) out.indices[fill[static_cast<std::size_t>(code[i])]++] = i;
  }
  return out;
}

std::vector<double> quantile_cuts(const Path& path, std::size_t g) {
  if (g < 1) throw std::invalid_argument("quantile grid needs at least one cell");
  std::vector<double> v(path.values().begin(), path.values().end());
  std::sort(v.begin(), v.end());
  const std::size_t len = v.size();
  const double scale = std::max({1.0, std::abs(v.front()), std::abs(v.back())});
  const double tie = 1e-12 * scale;

  // rank r is a boundary when v[r-1] and v[r] are distinct levels
  std::vector<std::size_t> boundaries;
  for (std::size_t r = 1; r < len; ++r) {
    if (v[r] - v[r - 1] > tie) boundaries.push_back(r);
  }
  if (boundaries.empty()) return {};

  std::vector<std::size_t> chosen;
  for (std::size_t q = 1; q < g; ++q) {
    const double target = static_cast<double>(q) * static_cast<double>(len) / static_cast<double>(g);
    auto it = std::lower_bound(boundaries.begin(), boundaries.end(), target,
                               [](std::size_t r, double t) { return static_cast<double>(r) < t; });
    std::size_t best;
    if (it == boundaries.end()) {
      best = boundaries.back();
    } else if (it == boundaries.begin()) {
      best = *it;
    } else {
      const std::size_t above = *it;
      const std::size_t below = *(it - 1);
      best = (static_cast<double>(above) - target < target - static_cast<double>(below)) ? above
                                                                                          : below;
    }
    chosen.push_back(best);
  }
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());

  std::vector<double> cuts;
  cuts.reserve(chosen.size());
  for (std::size_t r : chosen) cuts.push_back(v[r - 1] + (v[r] - v[r - 1]) / 2.0);
  return cuts;
}

std::vector<double> isolation_cuts(const Path& path, double gap_factor) {
  const std::size_t len = path.length();
  if (len < 4) return {};
  std::vector<double> v(path.values().begin(), path.values().end());
  std::sort(v.begin(), v.end());
  const double iqr = v[(3 * (len - 1)) / 4] - v[(len - 1) / 4];
  if (!(iqr > 0.0)) return {};

  std::vector<double> cuts;
  if (v[1] - v[0] > gap_factor * iqr) cuts.push_back(v[0] + (v[1] - v[0]) / 2.0);
  if (v[len - 1] - v[len - 2] > gap_factor * iqr) {
    cuts.push_back(v[len - 2] + (v[len - 1] - v[len - 2]) / 2.0);
  }
  return cuts;
}

void GridFamily::add(std::vector<double> cuts) {
  if (std::find(cut_sets.begin(), cut_sets.end(), cuts) == cut_sets.end()) {
    cut_sets.push_back(std::move(cuts));
  }
}

GridFamily default_grid_family(const Path& path, std::size_t g, double isolation_gap) {
  if (g < 2) throw std::invalid_argument("grid size must be at least 2");
  GridFamily family;
  for (std::size_t cells = g; cells >= 2; cells /= 2) family.add(quantile_cuts(path, cells));
  auto iso = isolation_cuts(path, isolation_gap);
  if (!iso.empty()) family.add(std::move(iso));
  return family;
}

}  // namespace pathstat
