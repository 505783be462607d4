#include "pathstat/properties.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pathstat {

std::string_view to_string(PropertyEStatus status) {
  switch (status) {
    case PropertyEStatus::Empty: return "Empty";
    case PropertyEStatus::PositiveDensity: return "PositiveDensity";
    case PropertyEStatus::Violation: return "Violation";
    case PropertyEStatus::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

PropertyEStatus classify_property_e(const TailSummary& summary, std::size_t horizon,
                                    const DiagnosticConfig& config) {
  const double h = static_cast<double>(horizon);
  if (summary.final_count == 0) return PropertyEStatus::Empty;
  if (summary.estimate.converged && summary.estimate.value >= config.positive_floor / h) {
    return PropertyEStatus::PositiveDensity;
  }
  if (summary.final_ratio < config.violation_floor / h && summary.nonincreasing) {
    return PropertyEStatus::Violation;
  }
  return PropertyEStatus::Inconclusive;
}

PropertyEVerdict check_property_e(const Path& path, const IntervalPattern& pattern,
                                  const DiagnosticConfig& config) {
  const auto occ = occurrence_set(path, pattern);
  const auto traj = density_trajectory(occ, occ.source_horizon);

  TailSummary summary;
  summary.estimate = estimate_limit_density(traj, config.tail_fraction, config.tolerance);
  summary.final_count = traj.final_count;
  summary.final_ratio = traj.ratios.back();
  summary.nonincreasing = tail_nonincreasing(traj, config.tail_fraction);

  return PropertyEVerdict{classify_property_e(summary, traj.horizon(), config),
                          pattern,
                          summary.estimate,
                          summary.final_count,
                          summary.final_ratio,
                          traj.horizon(),
                          summary.nonincreasing};
}

std::size_t PropertyEScan::count(PropertyEStatus status) const {
  return static_cast<std::size_t>(std::count_if(
      verdicts.begin(), verdicts.end(), [&](const auto& v) { return v.status == status; }));
}

PropertyEScan scan_property_e(const Path& path, std::size_t k_max, const GridFamily& grids,
                              const DiagnosticConfig& config) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  PropertyEScan scan;
  HarmonicTable harmonics(path.length());
  for (const auto& cuts : grids.cut_sets) {
    for (std::size_t k = 1; k <= std::min(k_max, path.length()); ++k) {
      const auto grid = PatternGrid::product(cuts, k);
      const auto occ = cell_occurrences(path, grid);
      for (std::size_t c = 0; c < grid.cell_count(); ++c) {
        const auto summary = summarize_tail(occ.cell(c), occ.horizon, config.tail_fraction,
                                            config.tolerance, harmonics);
        scan.verdicts.push_back(PropertyEVerdict{classify_property_e(summary, occ.horizon, config),
                                                 grid.cell(c),
                                                 summary.estimate,
                                                 summary.final_count,
                                                 summary.final_ratio,
                                                 occ.horizon,
                                                 summary.nonincreasing});
      }
    }
  }
  return scan;
}

TightnessProfile check_property_t(const Path& path, std::span<const double> levels,
                                  const DiagnosticConfig& config) {
  if (levels.empty()) throw std::invalid_argument("tightness needs at least one level");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0) || (i > 0 && !(levels[i - 1] < levels[i]))) {
      throw std::invalid_argument("tightness levels must be positive and strictly increasing");
    }
  }
  TightnessProfile profile;
  profile.levels.assign(levels.begin(), levels.end());
  for (double level : levels) {
    const auto occ = occurrence_set(path, IntervalPattern::single(-level, level));
    const auto traj = density_trajectory(occ, occ.source_horizon);
    profile.fractions.push_back(
        estimate_limit_density(traj, config.tail_fraction, config.tolerance).value);
  }
  profile.verdict = profile.fractions.back() >= 1.0 - config.t_slack;
  return profile;
}

std::vector<double> default_tightness_levels(const Path& path, const DiagnosticConfig& config) {
  const auto xs = path.values();
  const auto prefix = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(config.tightness_prefix * static_cast<double>(xs.size()))));
  double base = 0.0;
  for (std::size_t i = 0; i < std::min(prefix, xs.size()); ++i) base = std::max(base, std::abs(xs[i]));
  if (!(base > 0.0)) base = 1.0;
  return {base, 2.0 * base, 4.0 * base, 8.0 * base};
}

EmpiricalMeasure empirical_measure(const Path& path, const PatternGrid& grid, std::size_t n) {
  if (grid.order() > path.length()) throw std::invalid_argument("grid order exceeds path length");
  const std::size_t max_n = path.length() - grid.order() + 1;
  if (n < 1 || n > max_n) {
    throw std::invalid_argument("empirical measure needs 1 <= n <= " + std::to_string(max_n));
  }
  const auto occ = cell_occurrences(path, grid);
  EmpiricalMeasure m{grid, {}, {}, n, occ.hits_below(n)};
  m.counts.resize(grid.cell_count());
  m.masses.resize(grid.cell_count());
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    m.counts[c] = occ.count_below(c, n);
    m.masses[c] = static_cast<double>(m.counts[c]) / static_cast<double>(n);
  }
  return m;
}

InducedFDD induced_fdd(const Path& path, std::size_t k_max, const std::vector<double>& cuts,
                       const DiagnosticConfig& config) {
  if (k_max < 1 || k_max > path.length()) {
    throw std::invalid_argument("k_max must lie in [1, path length]");
  }
  InducedFDD fdd;
  fdd.matched_n = path.length() - k_max + 1;
  HarmonicTable harmonics(path.length());
  for (std::size_t k = 1; k <= k_max; ++k) {
    auto grid = PatternGrid::product(cuts, k);
    const auto occ = cell_occurrences(path, grid);
    InducedLevel level{std::move(grid), {}, {}, occ.hits_below(fdd.matched_n)};
    for (std::size_t c = 0; c < level.grid.cell_count(); ++c) {
      level.estimates.push_back(summarize_tail(occ.cell(c), occ.horizon, config.tail_fraction,
                                               config.tolerance, harmonics)
                                    .estimate);
      level.counts.push_back(occ.count_below(c, fdd.matched_n));
    }
    fdd.levels.push_back(std::move(level));
  }
  return fdd;
}

ConsistencyResult consistency_report(const InducedFDD& fdd, std::size_t k) {
  if (k < 1 || k + 1 > fdd.levels.size()) {
    throw std::invalid_argument("consistency check needs tables for k and k+1");
  }
  if (fdd.matched_n == 0) throw std::invalid_argument("matched n must be positive");
  const auto& lower = fdd.levels[k - 1];
  const auto& upper = fdd.levels[k];
  if (lower.grid.order() != k || upper.grid.order() != k + 1 ||
      !(upper.grid.leading(k) == lower.grid) ||
      lower.counts.size() != lower.grid.cell_count() ||
      upper.counts.size() != upper.grid.cell_count()) {
    throw std::invalid_argument("incompatible grids for consistency check");
  }
  const std::size_t last = upper.grid.cells_along(k);
  ConsistencyResult out;
  out.k = k;
  out.boundary_hits = upper.boundary_hits;
  for (std::size_t c = 0; c < lower.grid.cell_count(); ++c) {
    std::size_t marginal = 0;
    for (std::size_t t = 0; t < last; ++t) marginal += upper.counts[c * last + t];
    const std::size_t a = lower.counts[c];
    out.count_gap = std::max(out.count_gap, a > marginal ? a - marginal : marginal - a);
  }
  const double n = static_cast<double>(fdd.matched_n);
  out.discrepancy = static_cast<double>(out.count_gap) / n;
  out.bound = static_cast<double>(k + out.boundary_hits) / n;
  return out;
}

double consistency_check(const InducedFDD& fdd, std::size_t k) {
  return consistency_report(fdd, k).discrepancy;
}

DeviationReport local_density_deviation(const Path& path, const IntervalPattern& pattern,
                                        std::size_t window, double epsilon,
                                        const DiagnosticConfig& config,
                                        std::optional<double> reference) {
  if (window < 1) throw std::invalid_argument("deviation window must be at least 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const auto occ = occurrence_set(path, pattern);
  const std::size_t horizon = occ.source_horizon;
  if (window > horizon) {
    throw std::invalid_argument("horizon " + std::to_string(horizon) +
                                " too short for deviation window " + std::to_string(window));
  }
  const double p = reference ? *reference
                             : estimate_limit_density(density_trajectory(occ, horizon),
                                                      config.tail_fraction, config.tolerance)
                                   .value;

  std::vector<std::size_t> prefix(horizon + 1, 0);
  {
    auto it = occ.indices.begin();
    for (std::size_t i = 0; i < horizon; ++i) {
      const bool in = it != occ.indices.end() && *it == i;
      if (in) ++it;
      prefix[i + 1] = prefix[i] + (in ? 1 : 0);
    }
  }

  OccurrenceSet deviating;
  deviating.source_horizon = horizon - window + 1;
  for (std::size_t n = 0; n < deviating.source_horizon; ++n) {
    const double local = static_cast<double>(prefix[n + window] - prefix[n]) /
                         static_cast<double>(window);
    if (std::abs(local - p) > epsilon) deviating.indices.push_back(n);
  }
  const auto traj = density_trajectory(deviating, deviating.source_horizon);
  return DeviationReport{window, epsilon, p,
                         estimate_limit_density(traj, config.tail_fraction, config.tolerance).value};
}

}  // namespace pathstat
