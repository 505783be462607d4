#include "pathstat/report.hpp"

#include <cmath>

namespace pathstat {

Json number_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return nullptr;
  return v;
}

Json pattern_json(const IntervalPattern& pattern) {
  Json out = Json::array();
  for (const auto& iv : pattern.intervals()) out.push_back({number_json(iv.lo), number_json(iv.hi)});
  return out;
}

Json property_e_json(const PropertyEScan& scan, const GridFamily& grids) {
  Json verdicts = Json::array();
  // Scan order is grid-major, then k, then cell; recover the grid index from
  // the cell counts.
  std::size_t grid = 0;
  std::size_t remaining = 0;
  std::size_t last_k = 0;
  for (const auto& v : scan.verdicts) {
    const std::size_t k = v.pattern.order();
    if (remaining == 0) {
      if (k <= last_k) ++grid;
      std::size_t cells = 1;
      for (std::size_t j = 0; j < k; ++j) cells *= grids.cut_sets[grid].size() + 1;
      remaining = cells;
      last_k = k;
    }
    --remaining;
    verdicts.push_back({{"grid", grid},
                        {"k", k},
                        {"cell", pattern_json(v.pattern)},
                        {"status", to_string(v.status)},
                        {"value", v.estimate.value},
                        {"oscillation", v.estimate.oscillation},
                        {"final_count", v.final_count}});
  }
  return {{"pass", scan.pass()},
          {"counts",
           {{"Empty", scan.count(PropertyEStatus::Empty)},
            {"PositiveDensity", scan.count(PropertyEStatus::PositiveDensity)},
            {"Violation", scan.count(PropertyEStatus::Violation)},
            {"Inconclusive", scan.count(PropertyEStatus::Inconclusive)}}},
          {"verdicts", std::move(verdicts)}};
}

Json property_t_json(const TightnessProfile& profile) {
  return {{"levels", profile.levels}, {"fractions", profile.fractions}, {"verdict", profile.verdict}};
}

Json consistency_json(const std::vector<ConsistencyResult>& results, std::size_t per_grid) {
  Json out = Json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out.push_back({{"grid", per_grid == 0 ? 0 : i / per_grid},
                   {"k", r.k},
                   {"discrepancy", r.discrepancy},
                   {"count_gap", r.count_gap},
                   {"boundary_hits", r.boundary_hits},
                   {"bound", r.bound},
                   {"within_bound", r.within_bound()}});
  }
  return out;
}

Json ergodicity_json(const ErgodicityVerdict& verdict, const std::vector<Contraction>& family,
                     double tolerance) {
  Json members = Json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    members.push_back({{"label", family[i].label},
                       {"target_density", family[i].target_density},
                       {"blocks", family[i].blocks.size()},
                       {"covered", family[i].size()},
                       {"worst_discrepancy",
                        i < verdict.per_contraction.size() ? verdict.per_contraction[i] : 0.0}});
  }
  Json offending = nullptr;
  if (verdict.offending) {
    const auto& o = *verdict.offending;
    offending = {{"contraction", o.contraction},
                 {"label", o.contraction < family.size() ? family[o.contraction].label : ""},
                 {"cell", pattern_json(o.pattern)},
                 {"path_density", o.path_density},
                 {"contracted_density", o.contracted_density}};
  }
  return {{"verdict", to_string(verdict.status)},
          {"worst_discrepancy", verdict.worst_discrepancy},
          {"tolerance", tolerance},
          {"offending", std::move(offending)},
          {"contractions", std::move(members)}};
}

Json analysis_json(const AnalysisReport& report, const AnalysisConfig& config) {
  Json grids = Json::array();
  for (const auto& cuts : report.grids.cut_sets) grids.push_back(cuts);
  const std::size_t per_grid =
      report.grids.size() == 0 ? 0 : report.consistency.size() / report.grids.size();
  return {{"pass", report.pass()},
          {"grids", std::move(grids)},
          {"propertyE", property_e_json(report.property_e, report.grids)},
          {"propertyT", property_t_json(report.property_t)},
          {"consistency",
           {{"pass", report.consistency_pass()},
            {"checks", consistency_json(report.consistency, per_grid)}}},
          {"ergodicity",
           ergodicity_json(report.ergodicity, report.family, config.ergodicity.tolerance)}};
}

Json contraction_json(const Contraction& g) {
  Json blocks = Json::array();
  for (const auto& b : g.blocks) blocks.push_back({b.start, b.end});
  return {{"label", g.label}, {"target_density", g.target_density}, {"blocks", std::move(blocks)}};
}

Json adversarial_trace_json(const AdversarialTrace& trace) {
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    Json h = Json::array();
    for (const auto& b : s.h) h.push_back({b.start, b.end});
    steps.push_back({{"m", s.m}, {"V0", s.v0}, {"V1", s.v1}, {"V2", s.v2}, {"H", std::move(h)}});
  }
  Json last_m = nullptr;
  if (trace.last_feasible_m) last_m = *trace.last_feasible_m;
  return {{"status", to_string(trace.status)},
          {"m_schedule", trace.m_schedule},
          {"threshold", trace.threshold},
          {"target_density", trace.target_density},
          {"last_feasible_m", std::move(last_m)},
          {"persistence", trace.persistence},
          {"N_markers", trace.n_markers},
          {"steps", std::move(steps)},
          {"result", contraction_json(trace.result)}};
}

Json rejection_summary_json(const StationarityTest& test, const RejectionRecord& record,
                            double slack) {
  return {{"kind", test.kind},
          {"n", test.window},
          {"tau", test.tau},
          {"alpha", test.alpha},
          {"start", record.start},
          {"stride", record.stride},
          {"windows", record.indicators.size()},
          {"upper_density", record.upper_density},
          {"tail_profile", record.tail_profile},
          {"bound", test.alpha + slack},
          {"compliant", record.upper_density <= test.alpha + slack}};
}

}  // namespace pathstat
