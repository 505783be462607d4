#include "pathstat/pathcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pathstat {

Path::Path(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("path must contain at least one value");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("path value at index " + std::to_string(i) + " is not finite");
    }
  }
}

IntervalPattern::IntervalPattern(std::vector<Interval> intervals)
    : intervals_(std::move(intervals)) {
  if (intervals_.empty()) {
    throw std::invalid_argument("interval pattern needs at least one interval");
  }
  for (const auto& iv : intervals_) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo == kInf || iv.hi == -kInf ||
        !(iv.lo < iv.hi)) {
      throw std::invalid_argument("interval pattern entries must satisfy lo < hi");
    }
  }
}

IntervalPattern IntervalPattern::single(double lo, double hi) {
  return IntervalPattern({Interval{lo, hi}});
}

bool IntervalPattern::matches_at(std::span<const double> values,
                                 std::size_t start) const noexcept {
  for (std::size_t j = 0; j < intervals_.size(); ++j) {
    if (!intervals_[j].contains(values[start + j])) return false;
  }
  return true;
}

bool IntervalPattern::contains(const IntervalPattern& other) const noexcept {
  if (other.order() != order()) return false;
  for (std::size_t j = 0; j < intervals_.size(); ++j) {
    if (other[j].lo < intervals_[j].lo || other[j].hi > intervals_[j].hi) return false;
  }
  return true;
}

OccurrenceSet occurrence_set(const Path& path, const IntervalPattern& pattern) {
  const std::size_t k = pattern.order();
  const std::size_t len = path.length();
  if (k > len) {
    throw std::invalid_argument("pattern order " + std::to_string(k) + " exceeds path length " +
                                std::to_string(len));
  }
  OccurrenceSet occ;
  occ.source_horizon = len - k + 1;
  const auto xs = path.values();
  for (std::size_t n = 0; n < occ.source_horizon; ++n) {
    if (pattern.matches_at(xs, n)) occ.indices.push_back(n);
  }
  return occ;
}

std::size_t counting_prefix(const OccurrenceSet& occ, std::size_t n) {
  return static_cast<std::size_t>(
      std::lower_bound(occ.indices.begin(), occ.indices.end(), n) - occ.indices.begin());
}

DensityTrajectory density_trajectory(const OccurrenceSet& occ, std::size_t horizon) {
  if (horizon > occ.source_horizon) {
    throw std::invalid_argument("trajectory horizon " + std::to_string(horizon) +
                                " exceeds source horizon " + std::to_string(occ.source_horizon));
  }
  DensityTrajectory traj;
  traj.ratios.resize(horizon);
  std::size_t count = 0;
  auto it = occ.indices.begin();
  for (std::size_t n = 1; n <= horizon; ++n) {
    // index n-1 enters the prefix [0, n-1]
    while (it != occ.indices.end() && *it < n) {
      ++count;
      ++it;
    }
    traj.ratios[n - 1] = static_cast<double>(count) / static_cast<double>(n);
  }
  traj.final_count = count;
  return traj;
}

std::size_t tail_window_length(std::size_t horizon, double tail_fraction) {
  if (!(tail_fraction > 0.0) || tail_fraction > 1.0) {
    throw std::invalid_argument("tail_fraction must lie in (0, 1]");
  }
  const double raw = std::ceil(tail_fraction * static_cast<double>(horizon) - 1e-9);
  const auto w = static_cast<std::size_t>(std::max(raw, 1.0));
  return std::min(w, horizon);
}

DensityEstimate estimate_limit_density(const DensityTrajectory& traj, double tail_fraction,
                                       double tolerance) {
  if (traj.ratios.empty()) throw std::invalid_argument("empty density trajectory");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const std::size_t h = traj.horizon();
  const std::size_t w = tail_window_length(h, tail_fraction);
  const auto tail = std::span<const double>(traj.ratios).subspan(h - w);

  double sum = 0.0;
  for (double d : tail) sum += d;
  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());

  DensityEstimate est;
  est.value = sum / static_cast<double>(w);
  est.oscillation = *hi - *lo;
  est.converged = est.oscillation <= tolerance;
  est.tail_fraction = tail_fraction;
  return est;
}

bool tail_nonincreasing(const DensityTrajectory& traj, double tail_fraction) {
  if (traj.ratios.empty()) return true;
  const std::size_t h = traj.horizon();
  const std::size_t w = tail_window_length(h, tail_fraction);
  for (std::size_t i = h - w + 1; i < h; ++i) {
    if (traj.ratios[i] > traj.ratios[i - 1]) return false;
  }
  return true;
}

std::span<const double> window_view(const Path& path, std::size_t n, std::size_t i) {
  if (n == 0 || i > path.length() || n > path.length() - i) {
    throw std::invalid_argument("window of size " + std::to_string(n) + " at offset " +
                                std::to_string(i) + " does not fit a path of length " +
                                std::to_string(path.length()));
  }
  return path.values().subspan(i, n);
}

std::vector<double> window_projection(const Path& path, std::size_t n, std::size_t i) {
  const auto view = window_view(path, n, i);
  return {view.begin(), view.end()};
}

HarmonicTable::HarmonicTable(std::size_t max_n) : prefix_{0.0} { reserve_to(max_n); }

void HarmonicTable::reserve_to(std::size_t max_n) {
  if (prefix_.empty()) prefix_.push_back(0.0);
  prefix_.reserve(max_n + 1);
  for (std::size_t n = prefix_.size(); n <= max_n; ++n) {
    prefix_.push_back(prefix_.back() + 1.0 / static_cast<double>(n));
  }
}

double HarmonicTable::range_sum(std::size_t lo, std::size_t hi) const noexcept {
  if (lo > hi) return 0.0;
  return prefix_[hi] - prefix_[lo - 1];
}

TailSummary summarize_tail(std::span<const std::size_t> indices, std::size_t horizon,
                           double tail_fraction, double tolerance, HarmonicTable& harmonics) {
  if (horizon == 0) throw std::invalid_argument("empty density trajectory");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  harmonics.reserve_to(horizon);

  const std::size_t w = tail_window_length(horizon, tail_fraction);
  const std::size_t a = horizon - w + 1;  // window is n in [a, horizon]
  const auto ratio = [](std::size_t count, std::size_t n) {
    return static_cast<double>(count) / static_cast<double>(n);
  };

  // Occurrences at or beyond the horizon never enter N(n) for n <= horizon.
  const auto end = std::lower_bound(indices.begin(), indices.end(), horizon);
  const auto total = static_cast<std::size_t>(end - indices.begin());
  const auto first_in = static_cast<std::size_t>(
      std::lower_bound(indices.begin(), end, a) - indices.begin());

  TailSummary out;
  out.final_count = total;
  out.final_ratio = ratio(total, horizon);
  out.estimate.tail_fraction = tail_fraction;
  if (total == horizon) {
    // every index occurs: d(n) = 1 exactly
    out.estimate.value = 1.0;
    out.estimate.converged = true;
    return out;
  }

  // Occurrence i contributes 1/n to d(n) for every n in [max(a, i+1), horizon].
  double sum = 0.0;
  for (auto it = indices.begin(); it != end; ++it) {
    sum += harmonics.range_sum(std::max(a, *it + 1), horizon);
  }

  // d(n) only jumps up at n = i+1 and decays in between, so extremes sit at the
  // window ends or on either side of an occurrence.
  double lo = ratio(first_in, a);
  double hi = lo;
  const auto consider = [&](double d) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  };
  consider(out.final_ratio);
  for (std::size_t r = (first_in > 0 ? first_in - 1 : 0); r < total; ++r) {
    const std::size_t i = indices[r];
    if (i >= a && i <= horizon) consider(ratio(r, i));
    if (i + 1 >= a && i + 1 <= horizon) consider(ratio(r + 1, i + 1));
    // An occurrence at i in [a, horizon-1] makes d(i+1) > d(i) unless the
    // prefix was saturated (N(i) = i).
    if (i >= a && i + 1 <= horizon && r < i) out.nonincreasing = false;
  }

  out.estimate.value = sum / static_cast<double>(w);
  out.estimate.oscillation = hi - lo;
  out.estimate.converged = out.estimate.oscillation <= tolerance;
  out.estimate.tail_fraction = tail_fraction;
  return out;
}

}  // namespace pathstat
