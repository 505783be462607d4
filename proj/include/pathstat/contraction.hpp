#pragma once

// Asymptotically proportional contractions of the index set: construction,
// finite-horizon validation, path contraction, the ergodicity diagnostic and
// the adversarial witness construction.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pathstat/grid.hpp"
#include "pathstat/pathcore.hpp"
#include "pathstat/properties.hpp"

namespace pathstat {

/// Inclusive integer interval [start, end].
struct Block {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const noexcept { return end - start + 1; }
  bool operator==(const Block&) const = default;
};

struct Contraction {
  std::vector<Block> blocks;
  double target_density = 1.0;
  std::string label;

  std::size_t size() const noexcept;  // total number of covered indices
};

/// Length-m gaps alternating with blocks of length round(m c / (1 - c)),
/// m = 1, 2, ...; phase 0 starts with a block, phase 1 with a gap. A
/// trailing block that does not fit the horizon is dropped. c = 1 gives the
/// single block [0, horizon - 1].
Contraction build_alternating_contraction(double target_c, std::size_t horizon, int phase);

struct ContractionConfig {
  /// Block lengths must be nondecreasing after this leading fraction of blocks.
  double burn_in_fraction = 0.1;
  /// Final block length must be at least this multiple of the first.
  double growth_factor = 4.0;
  double tail_fraction = 0.5;
  double tolerance = 0.02;
};

struct ContractionValidation {
  bool ordering = false;
  bool growth = false;
  bool coverage = false;
  DensityEstimate coverage_estimate;
  std::string detail;  // first failing condition, empty when all pass

  bool pass() const noexcept { return ordering && growth && coverage; }
};

ContractionValidation validate_contraction(const Contraction& g, std::size_t horizon,
                                           const ContractionConfig& config);

/// Sorted covered indices of g.
std::vector<std::size_t> covered_indices(const Contraction& g);

/// Values of the path at the covered indices, in order.
Path contract_path(const Path& path, const Contraction& g);

enum class ErgodicityStatus { ConsistentWithErgodic, NonErgodicEvidence };

std::string_view to_string(ErgodicityStatus status);

struct ErgodicityOffender {
  std::size_t contraction = 0;  // index into the family
  IntervalPattern pattern;
  double path_density = 0.0;
  double contracted_density = 0.0;
};

struct ErgodicityVerdict {
  double worst_discrepancy = 0.0;
  std::optional<ErgodicityOffender> offending;
  ErgodicityStatus status = ErgodicityStatus::ConsistentWithErgodic;
  std::vector<double> per_contraction;  // worst discrepancy of each member
};

/// Compares tail density estimates of every grid cell (k <= k_max) on the
/// contracted paths against the original path. NonErgodicEvidence iff the
/// worst absolute difference exceeds tolerance.
ErgodicityVerdict ergodicity_diagnostic(const Path& path, const std::vector<Contraction>& family,
                                        const GridFamily& grids, std::size_t k_max,
                                        double tolerance, const DiagnosticConfig& config);

enum class AdversarialStatus { Complete, Truncated, Failed };

std::string_view to_string(AdversarialStatus status);

struct AdversarialStep {
  std::size_t m = 0;
  std::vector<std::size_t> v0;  // windows [j, j+m-1] with local density >= threshold
  std::vector<std::size_t> v1;  // every m-th element of v0
  std::vector<std::size_t> v2;  // v1 thinned to the target density
  std::vector<Block> h;         // [j, j+m-1] for j in v2
};

struct AdversarialConfig {
  double epsilon1 = 0.1;  // epsilon_m = epsilon1 / m
  /// Target density d; by default density_share times the smallest full-v1
  /// coverage over the schedule.
  std::optional<double> target_density;
  double density_share = 0.5;
};

struct AdversarialTrace {
  std::vector<std::size_t> m_schedule;
  double threshold = 0.0;
  double target_density = 0.0;
  std::vector<AdversarialStep> steps;
  std::vector<std::size_t> n_markers;  // join points N(m) between consecutive steps
  Contraction result;
  AdversarialStatus status = AdversarialStatus::Failed;
  std::optional<std::size_t> last_feasible_m;
  /// density of v0 at the last step relative to the first.
  double persistence = 0.0;
};

AdversarialTrace adversarial_contraction(const Path& path, const IntervalPattern& pattern,
                                         const std::vector<std::size_t>& m_schedule,
                                         double threshold, const AdversarialConfig& config = {});

/// min((p + 1) / 2, p + 0.25)
double default_adversarial_threshold(double p);

struct ErgodicityConfig {
  double tolerance = 0.05;
  std::vector<double> alternating_densities = {0.2, 0.5, 0.8};
  std::vector<std::size_t> m_schedule = {4, 8, 16, 32};
  /// Level-1 cells with estimated density inside this range get an
  /// adversarial member.
  double adversarial_min_density = 0.05;
  double adversarial_max_density = 0.95;
  /// Adversarial members are kept only when their target density and v0
  /// persistence reach these floors and the contraction validates.
  double min_target_density = 0.01;
  double min_persistence = 0.5;
  ContractionConfig contraction;
  AdversarialConfig adversarial;
};

/// Alternating members for every density and both phases, plus adversarial
/// members built from the level-1 cells of `cuts`.
std::vector<Contraction> default_contraction_family(const Path& path,
                                                    const std::vector<double>& cuts,
                                                    const ErgodicityConfig& config,
                                                    const DiagnosticConfig& diag);

}  // namespace pathstat
