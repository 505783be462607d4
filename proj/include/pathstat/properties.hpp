#pragma once

// Finite-sample verdicts for the path properties: occurrence-density
// dichotomy (Property E), tightness (Property T), empirical measures, the
// induced finite-dimensional tables and the local-density deviation set.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pathstat/grid.hpp"
#include "pathstat/pathcore.hpp"

namespace pathstat {

struct DiagnosticConfig {
  double tail_fraction = 0.5;
  double tolerance = 0.02;
  /// Violation needs d(horizon) < violation_floor / horizon.
  double violation_floor = 5.0;
  /// PositiveDensity needs the estimate >= positive_floor / horizon.
  double positive_floor = 10.0;
  double t_slack = 0.01;
  std::size_t grid_cells = 8;
  std::size_t k_max = 2;
  double isolation_gap = 3.0;
  /// Default tightness levels scale with max |x| over this leading fraction.
  double tightness_prefix = 0.1;
};

enum class PropertyEStatus { Empty, PositiveDensity, Violation, Inconclusive };

std::string_view to_string(PropertyEStatus status);

struct PropertyEVerdict {
  PropertyEStatus status = PropertyEStatus::Empty;
  IntervalPattern pattern;
  DensityEstimate estimate;
  std::size_t final_count = 0;
  double final_ratio = 0.0;
  std::size_t horizon = 0;
  bool tail_nonincreasing = true;
};

PropertyEVerdict check_property_e(const Path& path, const IntervalPattern& pattern,
                                  const DiagnosticConfig& config);

struct PropertyEScan {
  std::vector<PropertyEVerdict> verdicts;  // grid-major, then k, then cell order

  std::size_t count(PropertyEStatus status) const;
  bool pass() const { return count(PropertyEStatus::Violation) == 0; }
};

PropertyEScan scan_property_e(const Path& path, std::size_t k_max, const GridFamily& grids,
                              const DiagnosticConfig& config);

struct TightnessProfile {
  std::vector<double> levels;
  std::vector<double> fractions;
  bool verdict = false;
};

TightnessProfile check_property_t(const Path& path, std::span<const double> levels,
                                  const DiagnosticConfig& config);

/// K = b, 2b, 4b, 8b with b = max |x| over the leading tightness_prefix of
/// the path (b = 1 when that is zero).
std::vector<double> default_tightness_levels(const Path& path, const DiagnosticConfig& config);

struct EmpiricalMeasure {
  PatternGrid grid;
  std::vector<std::size_t> counts;
  std::vector<double> masses;
  std::size_t n = 0;
  std::size_t boundary_hits = 0;  // windows among the first n touching a cut point
};

EmpiricalMeasure empirical_measure(const Path& path, const PatternGrid& grid, std::size_t n);

struct InducedLevel {
  PatternGrid grid;
  std::vector<DensityEstimate> estimates;  // per cell, own horizon
  std::vector<std::size_t> counts;         // per cell, at the matched n
  std::size_t boundary_hits = 0;           // at the matched n
};

/// Grid estimates of the finite-dimensional laws of the induced process.
struct InducedFDD {
  std::size_t matched_n = 0;
  std::vector<InducedLevel> levels;  // levels[k-1]
};

InducedFDD induced_fdd(const Path& path, std::size_t k_max, const std::vector<double>& cuts,
                       const DiagnosticConfig& config);

struct ConsistencyResult {
  std::size_t k = 0;
  double discrepancy = 0.0;
  std::size_t count_gap = 0;      // max |count_k - marginal count_{k+1}|
  std::size_t boundary_hits = 0;  // level-(k+1) windows touching a cut point
  double bound = 0.0;             // (k + boundary_hits) / n

  bool within_bound() const { return count_gap <= k + boundary_hits; }
};

/// Max over level-k cells of |level-k mass - level-(k+1) mass summed over the
/// last coordinate|, both at fdd.matched_n.
ConsistencyResult consistency_report(const InducedFDD& fdd, std::size_t k);
double consistency_check(const InducedFDD& fdd, std::size_t k);

struct DeviationReport {
  std::size_t window = 0;
  double epsilon = 0.0;
  double reference_density = 0.0;
  double deviation_density = 0.0;
};

/// Tail density of { n : |(1/N) sum_{i=n}^{n+N-1} 1_S(i) - p| > epsilon }.
/// p is the pattern's estimated limit density unless `reference` is given.
DeviationReport local_density_deviation(const Path& path, const IntervalPattern& pattern,
                                        std::size_t window, double epsilon,
                                        const DiagnosticConfig& config,
                                        std::optional<double> reference = std::nullopt);

/// Verdict from a tail summary; shared by single-pattern checks and scans.
PropertyEStatus classify_property_e(const TailSummary& summary, std::size_t horizon,
                                    const DiagnosticConfig& config);

}  // namespace pathstat
