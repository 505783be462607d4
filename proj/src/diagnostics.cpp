#include "pathstat/diagnostics.hpp"

#include <algorithm>

namespace pathstat {

bool AnalysisReport::consistency_pass() const {
  return std::all_of(consistency.begin(), consistency.end(),
                     [](const ConsistencyResult& r) { return r.within_bound(); });
}

AnalysisReport analyze_path(const Path& path, const AnalysisConfig& config) {
  const auto& diag = config.diagnostic;
  AnalysisReport report;
  report.grids = default_grid_family(path, diag.grid_cells, diag.isolation_gap);
  for (const auto& cuts : config.extra_cut_sets) report.grids.add(cuts);

  report.property_e = scan_property_e(path, diag.k_max, report.grids, diag);

  const auto levels = config.tightness_levels.value_or(default_tightness_levels(path, diag));
  report.property_t = check_property_t(path, levels, diag);

  // Consistency always compares at least levels 1 and 2.
  const std::size_t fdd_order = std::min(std::max<std::size_t>(diag.k_max, 2), path.length());
  if (fdd_order >= 2) {
    for (const auto& cuts : report.grids.cut_sets) {
      const auto fdd = induced_fdd(path, fdd_order, cuts, diag);
      for (std::size_t k = 1; k < fdd_order; ++k) {
        report.consistency.push_back(consistency_report(fdd, k));
      }
    }
  }

  if (path.length() >= 10) {
    report.family =
        default_contraction_family(path, report.grids.cut_sets.front(), config.ergodicity, diag);
    report.ergodicity = ergodicity_diagnostic(path, report.family, report.grids, diag.k_max,
                                              config.ergodicity.tolerance, diag);
  }
  return report;
}

}  // namespace pathstat
