#pragma once

// The full per-path diagnostic suite: Property E scan, Property T, induced
// table consistency and the contraction ergodicity check.

#include <optional>
#include <vector>

#include "pathstat/contraction.hpp"
#include "pathstat/grid.hpp"
#include "pathstat/properties.hpp"

namespace pathstat {

struct AnalysisConfig {
  DiagnosticConfig diagnostic;
  ErgodicityConfig ergodicity;
  /// Overrides default_tightness_levels when set.
  std::optional<std::vector<double>> tightness_levels;
  /// Added to the default grid family.
  std::vector<std::vector<double>> extra_cut_sets;
};

struct AnalysisReport {
  GridFamily grids;
  PropertyEScan property_e;
  TightnessProfile property_t;
  std::vector<ConsistencyResult> consistency;  // per grid, then k
  std::vector<Contraction> family;
  ErgodicityVerdict ergodicity;

  bool property_e_pass() const { return property_e.pass(); }
  bool property_t_pass() const { return property_t.verdict; }
  bool consistency_pass() const;
  bool ergodicity_pass() const {
    return ergodicity.status == ErgodicityStatus::ConsistentWithErgodic;
  }
  bool pass() const {
    return property_e_pass() && property_t_pass() && consistency_pass() && ergodicity_pass();
  }
};

/// Runs every diagnostic with the default grid family (quantile grids plus
/// isolation cuts) and the default contraction family built on the finest
/// quantile grid.
AnalysisReport analyze_path(const Path& path, const AnalysisConfig& config = {});

}  // namespace pathstat
