#include "pathstat/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pathstat {
namespace {

std::string format_interval(const Interval& iv) {
  std::ostringstream out;
  out << '(' << iv.lo << ',' << iv.hi << ')';
  return out.str();
}

std::vector<DensityEstimate> cell_estimates(const Path& path, const PatternGrid& grid,
                                            const DiagnosticConfig& config,
                                            HarmonicTable& harmonics) {
  const auto occ = cell_occurrences(path, grid);
  std::vector<DensityEstimate> out;
  out.reserve(grid.cell_count());
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    out.push_back(
        summarize_tail(occ.cell(c), occ.horizon, config.tail_fraction, config.tolerance, harmonics)
            .estimate);
  }
  return out;
}

}  // namespace

std::size_t Contraction::size() const noexcept {
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.length();
  return total;
}

Contraction build_alternating_contraction(double target_c, std::size_t horizon, int phase) {
  if (!(target_c > 0.0 && target_c <= 1.0)) {
    throw std::invalid_argument("target density must lie in (0, 1]");
  }
  if (horizon < 10) throw std::invalid_argument("contraction horizon must be at least 10");
  if (phase != 0 && phase != 1) throw std::invalid_argument("phase must be 0 or 1");

  Contraction g;
  g.target_density = target_c;
  if (target_c == 1.0) {
    g.blocks.push_back({0, horizon - 1});
    return g;
  }
  const double ratio = target_c / (1.0 - target_c);
  std::size_t pos = 0;
  for (std::size_t m = 1; pos < horizon; ++m) {
    const auto len = static_cast<std::size_t>(std::llround(static_cast<double>(m) * ratio));
    if (phase == 1) pos += m;
    if (len > 0) {
      if (pos + len > horizon) break;
      g.blocks.push_back({pos, pos + len - 1});
      pos += len;
    }
    if (phase == 0) pos += m;
  }
  if (g.blocks.empty()) {
    throw std::invalid_argument("no block of the requested density fits the horizon");
  }
  return g;
}

std::vector<std::size_t> covered_indices(const Contraction& g) {
  std::vector<std::size_t> out;
  out.reserve(g.size());
  for (const auto& b : g.blocks) {
    for (std::size_t i = b.start; i <= b.end; ++i) out.push_back(i);
  }
  return out;
}

ContractionValidation validate_contraction(const Contraction& g, std::size_t horizon,
                                           const ContractionConfig& config) {
  ContractionValidation v;
  const auto& bs = g.blocks;

  v.ordering = !bs.empty();
  for (std::size_t i = 0; i < bs.size() && v.ordering; ++i) {
    if (bs[i].start > bs[i].end || bs[i].end >= horizon) v.ordering = false;
    if (i > 0 && !(bs[i].start > bs[i - 1].end)) v.ordering = false;
  }
  if (!v.ordering) {
    v.detail = bs.empty() ? "no blocks" : "blocks overlap, are unordered or leave the horizon";
    return v;
  }

  const bool spans = bs.size() == 1 && bs[0].start == 0 && bs[0].end + 1 == horizon;
  if (spans) {
    v.growth = true;
  } else {
    const auto burn = static_cast<std::size_t>(
        std::ceil(config.burn_in_fraction * static_cast<double>(bs.size())));
    bool nondecreasing = true;
    for (std::size_t i = std::max<std::size_t>(burn, 1); i < bs.size(); ++i) {
      if (bs[i].length() < bs[i - 1].length()) nondecreasing = false;
    }
    const double first = static_cast<double>(bs.front().length());
    v.growth = nondecreasing && static_cast<double>(bs.back().length()) >= config.growth_factor * first;
  }

  HarmonicTable harmonics(horizon);
  const auto idx = covered_indices(g);
  v.coverage_estimate =
      summarize_tail(idx, horizon, config.tail_fraction, config.tolerance, harmonics).estimate;
  v.coverage = v.coverage_estimate.converged &&
               std::abs(v.coverage_estimate.value - g.target_density) <= config.tolerance;

  if (!v.growth) {
    v.detail = "block lengths do not grow";
  } else if (!v.coverage) {
    v.detail = "coverage does not settle at the target density";
  }
  return v;
}

Path contract_path(const Path& path, const Contraction& g) {
  const auto xs = path.values();
  std::vector<double> out;
  out.reserve(g.size());
  for (std::size_t i = 0; i < g.blocks.size(); ++i) {
    const auto& b = g.blocks[i];
    if (b.start > b.end || b.end >= path.length()) {
      throw std::invalid_argument("contraction block outside the path");
    }
    if (i > 0 && !(b.start > g.blocks[i - 1].end)) {
      throw std::invalid_argument("contraction blocks must be strictly ordered");
    }
    out.insert(out.end(), xs.begin() + static_cast<std::ptrdiff_t>(b.start),
               xs.begin() + static_cast<std::ptrdiff_t>(b.end) + 1);
  }
  if (out.empty()) throw std::invalid_argument("contraction is empty");
  return Path(std::move(out));
}

std::string_view to_string(ErgodicityStatus status) {
  return status == ErgodicityStatus::NonErgodicEvidence ? "NonErgodicEvidence"
                                                        : "ConsistentWithErgodic";
}

std::string_view to_string(AdversarialStatus status) {
  switch (status) {
    case AdversarialStatus::Complete: return "Complete";
    case AdversarialStatus::Truncated: return "Truncated";
    case AdversarialStatus::Failed: return "Failed";
  }
  return "Failed";
}

ErgodicityVerdict ergodicity_diagnostic(const Path& path, const std::vector<Contraction>& family,
                                        const GridFamily& grids, std::size_t k_max,
                                        double tolerance, const DiagnosticConfig& config) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

  std::vector<Path> contracted;
  contracted.reserve(family.size());
  for (const auto& g : family) contracted.push_back(contract_path(path, g));

  ErgodicityVerdict verdict;
  verdict.per_contraction.assign(family.size(), 0.0);
  HarmonicTable harmonics(path.length());
  for (const auto& cuts : grids.cut_sets) {
    for (std::size_t k = 1; k <= std::min(k_max, path.length()); ++k) {
      const auto grid = PatternGrid::product(cuts, k);
      const auto base = cell_estimates(path, grid, config, harmonics);
      for (std::size_t i = 0; i < family.size(); ++i) {
        if (contracted[i].length() < k) continue;
        const auto est = cell_estimates(contracted[i], grid, config, harmonics);
        for (std::size_t c = 0; c < grid.cell_count(); ++c) {
          const double diff = std::abs(est[c].value - base[c].value);
          verdict.per_contraction[i] = std::max(verdict.per_contraction[i], diff);
          if (diff > verdict.worst_discrepancy) {
            verdict.worst_discrepancy = diff;
            verdict.offending = ErgodicityOffender{i, grid.cell(c), base[c].value, est[c].value};
          }
        }
      }
    }
  }
  verdict.status = verdict.worst_discrepancy > tolerance ? ErgodicityStatus::NonErgodicEvidence
                                                         : ErgodicityStatus::ConsistentWithErgodic;
  return verdict;
}

double default_adversarial_threshold(double p) { return std::min((p + 1.0) / 2.0, p + 0.25); }

AdversarialTrace adversarial_contraction(const Path& path, const IntervalPattern& pattern,
                                         const std::vector<std::size_t>& m_schedule,
                                         double threshold, const AdversarialConfig& config) {
  if (m_schedule.empty()) throw std::invalid_argument("m schedule must not be empty");
  for (std::size_t i = 0; i < m_schedule.size(); ++i) {
    if (m_schedule[i] < 1 || (i > 0 && m_schedule[i] <= m_schedule[i - 1])) {
      throw std::invalid_argument("m schedule must be positive and strictly increasing");
    }
  }
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("threshold must lie in (0, 1]");
  }
  if (config.target_density && !(*config.target_density > 0.0 && *config.target_density <= 1.0)) {
    throw std::invalid_argument("target density must lie in (0, 1]");
  }

  const auto occ = occurrence_set(path, pattern);
  const std::size_t horizon = occ.source_horizon;
  const double len = static_cast<double>(path.length());
  std::vector<std::size_t> prefix(horizon + 1, 0);
  {
    auto it = occ.indices.begin();
    for (std::size_t i = 0; i < horizon; ++i) {
      const bool in = it != occ.indices.end() && *it == i;
      if (in) ++it;
      prefix[i + 1] = prefix[i] + (in ? 1 : 0);
    }
  }

  AdversarialTrace trace;
  trace.m_schedule = m_schedule;
  trace.threshold = threshold;
  trace.status = AdversarialStatus::Complete;

  double min_coverage = 1.0;
  for (std::size_t m : m_schedule) {
    AdversarialStep step;
    step.m = m;
    if (m <= horizon) {
      const double need = threshold * static_cast<double>(m) - 1e-9;
      for (std::size_t j = 0; j + m <= horizon; ++j) {
        if (static_cast<double>(prefix[j + m] - prefix[j]) >= need) step.v0.push_back(j);
      }
    }
    if (step.v0.empty()) {
      trace.status = AdversarialStatus::Failed;
      break;
    }
    for (std::size_t i = 0; i < step.v0.size(); i += m) step.v1.push_back(step.v0[i]);
    min_coverage = std::min(min_coverage,
                            static_cast<double>(step.v1.size() * m) / len);
    trace.last_feasible_m = m;
    trace.steps.push_back(std::move(step));
  }
  if (trace.steps.empty()) return trace;

  const auto& first = trace.steps.front();
  const auto& last = trace.steps.back();
  const double first_density =
      static_cast<double>(first.v0.size()) / static_cast<double>(horizon - first.m + 1);
  const double last_density =
      static_cast<double>(last.v0.size()) / static_cast<double>(horizon - last.m + 1);
  trace.persistence = last_density / first_density;

  const double d = config.target_density.value_or(config.density_share * min_coverage);
  trace.target_density = d;

  // Earliest-first thinning: keep a window while coverage up to its end
  // stays below d.
  for (auto& step : trace.steps) {
    std::size_t covered = 0;
    for (std::size_t j : step.v1) {
      if (static_cast<double>(covered) < d * static_cast<double>(j + step.m)) {
        step.v2.push_back(j);
        step.h.push_back({j, j + step.m - 1});
        covered += step.m;
      }
    }
  }

  std::vector<Block> g = trace.steps.front().h;
  std::optional<std::size_t> previous_marker;
  for (std::size_t t = 1; t < trace.steps.size(); ++t) {
    const double eps = config.epsilon1 / static_cast<double>(trace.steps[t - 1].m);
    std::optional<std::size_t> marker;
    std::size_t covered = 0;
    for (const auto& b : g) {
      covered += b.length();
      if (previous_marker && b.end <= *previous_marker) continue;
      const double cov = static_cast<double>(covered) / static_cast<double>(b.end + 1);
      if (std::abs(cov - d) <= eps / 3.0) {
        marker = b.end;
        break;
      }
    }
    if (!marker) {
      if (trace.status == AdversarialStatus::Complete) trace.status = AdversarialStatus::Truncated;
      break;
    }
    std::vector<Block> joined;
    for (const auto& b : g) {
      if (b.end <= *marker) joined.push_back(b);
    }
    for (const auto& b : trace.steps[t].h) {
      if (b.start > *marker) joined.push_back(b);
    }
    g = std::move(joined);
    trace.n_markers.push_back(*marker);
    previous_marker = marker;
  }

  trace.result.blocks = std::move(g);
  trace.result.target_density = d;
  trace.result.label = "adversarial";
  return trace;
}

std::vector<Contraction> default_contraction_family(const Path& path,
                                                    const std::vector<double>& cuts,
                                                    const ErgodicityConfig& config,
                                                    const DiagnosticConfig& diag) {
  std::vector<Contraction> family;
  for (double c : config.alternating_densities) {
    for (int phase : {0, 1}) {
      auto g = build_alternating_contraction(c, path.length(), phase);
      std::ostringstream label;
      label << "alternating c=" << c << " phase=" << phase;
      g.label = label.str();
      family.push_back(std::move(g));
    }
  }

  const auto grid = PatternGrid::product(cuts, 1);
  const auto occ = cell_occurrences(path, grid);
  HarmonicTable harmonics(path.length());
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const double p =
        summarize_tail(occ.cell(c), occ.horizon, diag.tail_fraction, diag.tolerance, harmonics)
            .estimate.value;
    if (!(p > config.adversarial_min_density && p < config.adversarial_max_density)) continue;
    const auto pattern = grid.cell(c);
    auto trace = adversarial_contraction(path, pattern, config.m_schedule,
                                         default_adversarial_threshold(p), config.adversarial);
    if (trace.status == AdversarialStatus::Failed) continue;
    if (trace.target_density < config.min_target_density) continue;
    if (trace.persistence < config.min_persistence) continue;
    if (!validate_contraction(trace.result, path.length(), config.contraction).pass()) continue;
    trace.result.label = "adversarial cell " + format_interval(pattern[0]);
    family.push_back(std::move(trace.result));
  }
  return family;
}

}  // namespace pathstat
