#pragma once

// JSON encodings of diagnostic results. Infinite interval endpoints are
// written as the strings "-inf" and "inf".

#include "json.hpp"

#include "pathstat/contraction.hpp"
#include "pathstat/diagnostics.hpp"
#include "pathstat/stattests.hpp"

namespace pathstat {

using Json = nlohmann::ordered_json;

Json number_json(double v);
Json pattern_json(const IntervalPattern& pattern);

Json property_e_json(const PropertyEScan& scan, const GridFamily& grids);
Json property_t_json(const TightnessProfile& profile);
Json consistency_json(const std::vector<ConsistencyResult>& results, std::size_t per_grid);
Json ergodicity_json(const ErgodicityVerdict& verdict, const std::vector<Contraction>& family,
                     double tolerance);
Json analysis_json(const AnalysisReport& report, const AnalysisConfig& config);

Json contraction_json(const Contraction& g);
Json adversarial_trace_json(const AdversarialTrace& trace);

Json rejection_summary_json(const StationarityTest& test, const RejectionRecord& record,
                            double slack);

}  // namespace pathstat
