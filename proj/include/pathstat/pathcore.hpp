#pragma once

// Paths, interval patterns, occurrence sets and finite-horizon density
// estimates. Everything here is a pure function of its inputs.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace pathstat {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A finite, nonempty sequence of finite reals x_0, ..., x_{L-1}.
class Path {
 public:
  explicit Path(std::vector<double> values);

  std::size_t length() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Open interval (lo, hi); lo may be -inf and hi may be +inf.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double x) const noexcept { return lo < x && x < hi; }
  bool operator==(const Interval&) const = default;
};

/// Product of k open intervals I_0 x ... x I_{k-1}.
class IntervalPattern {
 public:
  explicit IntervalPattern(std::vector<Interval> intervals);
  static IntervalPattern single(double lo, double hi);

  std::size_t order() const noexcept { return intervals_.size(); }
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  const Interval& operator[](std::size_t j) const noexcept { return intervals_[j]; }

  /// True when x_{start+j} lies in I_j for every j. Caller guarantees range.
  bool matches_at(std::span<const double> values, std::size_t start) const noexcept;

  /// Componentwise inclusion: every I_j of `other` is inside this I_j.
  bool contains(const IntervalPattern& other) const noexcept;

  bool operator==(const IntervalPattern&) const = default;

 private:
  std::vector<Interval> intervals_;
};

struct OccurrenceSet {
  std::vector<std::size_t> indices;  // strictly increasing
  std::size_t source_horizon = 0;    // L - k + 1: admissible start indices
};

/// ratios[n-1] = N(n)/n for n = 1..horizon.
struct DensityTrajectory {
  std::vector<double> ratios;
  std::size_t final_count = 0;

  std::size_t horizon() const noexcept { return ratios.size(); }
};

struct DensityEstimate {
  double value = 0.0;
  double oscillation = 0.0;
  bool converged = false;
  double tail_fraction = 0.5;
};

OccurrenceSet occurrence_set(const Path& path, const IntervalPattern& pattern);

/// Number of indices strictly below n.
std::size_t counting_prefix(const OccurrenceSet& occ, std::size_t n);

DensityTrajectory density_trajectory(const OccurrenceSet& occ, std::size_t horizon);

/// Tail-window surrogate for lim N(n)/n. The window is the last
/// ceil(tail_fraction * horizon) ratios.
DensityEstimate estimate_limit_density(const DensityTrajectory& traj, double tail_fraction,
                                       double tolerance);

/// True when d(n+1) <= d(n) for every consecutive pair inside the tail window.
bool tail_nonincreasing(const DensityTrajectory& traj, double tail_fraction);

/// (x_i, ..., x_{i+n-1}) copied out of the path.
std::vector<double> window_projection(const Path& path, std::size_t n, std::size_t i);

/// Non-owning variant of window_projection.
std::span<const double> window_view(const Path& path, std::size_t n, std::size_t i);

std::size_t tail_window_length(std::size_t horizon, double tail_fraction);

/// Prefix sums of 1/n; lets tail statistics be computed from occurrence
/// indices in O(|S|) instead of O(horizon).
class HarmonicTable {
 public:
  explicit HarmonicTable(std::size_t max_n = 0);
  void reserve_to(std::size_t max_n);
  /// sum_{n=lo}^{hi} 1/n, 1 <= lo, hi <= max_n; zero when lo > hi.
  double range_sum(std::size_t lo, std::size_t hi) const noexcept;

 private:
  std::vector<double> prefix_;
};

struct TailSummary {
  DensityEstimate estimate;
  std::size_t final_count = 0;
  double final_ratio = 0.0;
  bool nonincreasing = true;
};

/// Same quantities as density_trajectory + estimate_limit_density +
/// tail_nonincreasing, computed directly from sorted occurrence indices.
TailSummary summarize_tail(std::span<const std::size_t> indices, std::size_t horizon,
                           double tail_fraction, double tolerance, HarmonicTable& harmonics);

}  // namespace pathstat
