// Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "pathstat/contraction.hpp"
#include "pathstat/diagnostics.hpp"
#include "pathstat/generators.hpp"
#include "pathstat/properties.hpp"
#include "pathstat/stattests.hpp"

using namespace pathstat;

namespace {

constexpr double kZ95 = 1.6448536269514722;
constexpr double kZ975 = 1.959963984540054;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Path make(const GeneratorParams& params, std::size_t len, std::uint64_t seed = 0) {
  return generate(GeneratorSpec{params, len, seed});
}

bool has_peak_violation(const PropertyEScan& scan, double peak) {
  for (const auto& v : scan.verdicts) {
    if (v.status != PropertyEStatus::Violation) continue;
    for (const auto& iv : v.pattern.intervals()) {
      if (iv.contains(peak)) return true;
    }
  }
  return false;
}

double tail_density(const Path& path, const IntervalPattern& pattern) {
  const auto occ = occurrence_set(path, pattern);
  return estimate_limit_density(density_trajectory(occ, occ.source_horizon), 0.5, 0.02).value;
}

// Examples of non-stationary and stationary single paths.
Outcome criterion1() {
  std::ostringstream d;
  bool ok = true;

  const auto mono = analyze_path(make(gen::Monotone{1.0}, 10000));
  const auto mono_violations = mono.property_e.count(PropertyEStatus::Violation);
  ok = ok && !mono.property_t_pass() && mono_violations >= 1;
  d << "monotone: T top fraction " << mono.property_t.fractions.back() << ", E violations "
    << mono_violations;

  const auto peak = analyze_path(make(gen::UniquePeak{10.0}, 10000, 1));
  const bool peak_ok = has_peak_violation(peak.property_e, 10.0);
  ok = ok && peak_ok;
  d << "; unique_peak violation at peak cell " << (peak_ok ? "yes" : "no");

  const auto constant = analyze_path(make(gen::Constant{2.0}, 10000));
  const auto sine = analyze_path(make(gen::Sine{std::numbers::pi / 2, 0.0}, 10000));
  ok = ok && constant.pass() && sine.pass();
  d << "; constant pass " << constant.pass() << ", sine pass " << sine.pass()
    << " (ergodicity " << sine.ergodicity.worst_discrepancy << ")";
  return {ok, d.str()};
}

// Exact periodic densities of sin(n pi / 2).
Outcome criterion2() {
  const std::size_t len = 400;
  const auto path = make(gen::Sine{std::numbers::pi / 2, 0.0}, len);
  const std::vector<double> cuts = {-1.5, -0.5, 0.5, 1.5};
  bool ok = true;
  std::ostringstream d;

  // level 1 over all 400 values: cells 1, 2, 3 are the bounded middle cells
  const auto m1 = empirical_measure(path, PatternGrid::product(cuts, 1), len);
  ok = ok && m1.counts[1] * 4 == len && m1.counts[2] * 2 == len && m1.counts[3] * 4 == len &&
       m1.counts[0] == 0 && m1.counts[4] == 0 && m1.boundary_hits == 0;
  d << "level-1 counts " << m1.counts[1] << "/" << m1.counts[2] << "/" << m1.counts[3];

  // level 2 over the first 396 windows (a whole number of periods)
  const auto grid2 = PatternGrid::product(cuts, 2);
  const std::size_t n2 = 396;
  const auto m2 = empirical_measure(path, grid2, n2);
  // cell index 5a+b; values -1 -> 1, 0 -> 2, 1 -> 3
  const std::vector<std::size_t> realized = {2 * 5 + 3, 3 * 5 + 2, 2 * 5 + 1, 1 * 5 + 2};
  std::size_t in_realized = 0;
  for (std::size_t c = 0; c < grid2.cell_count(); ++c) {
    const bool hit = std::find(realized.begin(), realized.end(), c) != realized.end();
    if (hit) {
      ok = ok && m2.counts[c] * 4 == n2;
      in_realized += m2.counts[c];
    } else {
      ok = ok && m2.counts[c] == 0;
    }
  }
  d << "; level-2 realized total " << in_realized << "/" << n2;

  const auto fdd = induced_fdd(path, 2, cuts, DiagnosticConfig{});
  const auto r = consistency_report(fdd, 1);
  ok = ok && r.discrepancy == 0.0 && r.count_gap == 0;
  d << "; consistency discrepancy " << r.discrepancy;
  return {ok, d.str()};
}

// Marginalization bound, checked against brute-force window counts.
Outcome criterion3() {
  std::size_t checks = 0;
  std::size_t worst_gap = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto path = make(gen::IidNormal{}, 10000, seed);
    const std::vector<double> xs(path.values().begin(), path.values().end());
    const auto cuts = quantile_cuts(path, 8);
    const std::size_t k_max = 3;
    const auto fdd = induced_fdd(path, k_max, cuts, DiagnosticConfig{});
    const std::size_t n = fdd.matched_n;
    for (std::size_t k = 1; k < k_max; ++k) {
      const auto r = consistency_report(fdd, k);
      const auto [lower, lower_hits] = oracle::grid_counts(xs, cuts, k, n);
      const auto [upper, upper_hits] = oracle::grid_counts(xs, cuts, k + 1, n);
      const std::size_t cells = cuts.size() + 1;
      std::size_t gap = 0;
      for (std::size_t c = 0; c < lower.size(); ++c) {
        std::size_t marginal = 0;
        for (std::size_t last = 0; last < cells; ++last) marginal += upper[c * cells + last];
        gap = std::max(gap, lower[c] > marginal ? lower[c] - marginal : marginal - lower[c]);
      }
      if (gap != r.count_gap || upper_hits != r.boundary_hits || gap > k + upper_hits) {
        return {false, "seed " + std::to_string(seed) + " k=" + std::to_string(k) + ": gap " +
                           std::to_string(gap) + " vs library " + std::to_string(r.count_gap)};
      }
      worst_gap = std::max(worst_gap, gap);
      ++checks;
    }
  }
  return {true, std::to_string(checks) + " checks, worst count gap " + std::to_string(worst_gap)};
}

// Stationary ergodic generators pass the full suite on most seeds.
Outcome criterion4() {
  const std::vector<GeneratorParams> kinds = {gen::Ar1{0.5, 1.0}, gen::IidNormal{},
                                              gen::RandomPhaseSine{1.0}, gen::Constant{0.0}};
  bool ok = true;
  std::ostringstream d;
  for (const auto& p : kinds) {
    int passes = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) passes += analyze_path(make(p, 100000, seed)).pass();
    ok = ok && passes >= 95;
    d << format_generator(p) << " " << passes << "/100; ";
  }
  return {ok, d.str()};
}

// Block mixture shows non-ergodic evidence; AR(1) does not.
Outcome criterion5() {
  bool ok = true;
  double smallest = 1.0;
  int mixture_ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = analyze_path(make(gen::BlockMixture{0.0, 5.0}, 100000, seed));
    const auto& e = r.ergodicity;
    bool straddles = false;
    if (e.offending) {
      for (const auto& iv : e.offending->pattern.intervals()) straddles = straddles || iv.contains(5.0);
    }
    const bool good = e.status == ErgodicityStatus::NonErgodicEvidence && e.worst_discrepancy >= 0.4 &&
                      straddles;
    mixture_ok += good;
    smallest = std::min(smallest, e.worst_discrepancy);
  }
  ok = mixture_ok == 20;

  int ar1_ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = analyze_path(make(gen::Ar1{0.5, 1.0}, 100000, seed));
    ar1_ok += r.ergodicity.status == ErgodicityStatus::ConsistentWithErgodic;
  }
  ok = ok && ar1_ok >= 19;
  std::ostringstream d;
  d << "block_mixture " << mixture_ok << "/20 (smallest worst discrepancy " << smallest
    << "); ar1 consistent " << ar1_ok << "/20";
  return {ok, d.str()};
}

// Adversarial witness on the block mixture.
Outcome criterion6() {
  const auto path = make(gen::BlockMixture{0.0, 5.0}, 100000, 1);
  const auto cell = IntervalPattern::single(4.0, 6.0);
  const auto trace = adversarial_contraction(path, cell, {4, 8, 16, 32}, 0.75);
  const auto v = validate_contraction(trace.result, path.length(), ContractionConfig{});
  if (trace.result.blocks.empty()) return {false, "no contraction built"};
  const double global = tail_density(path, cell);
  const double contracted = tail_density(contract_path(path, trace.result), cell);
  std::ostringstream d;
  d << "status " << to_string(trace.status) << ", target density " << trace.target_density
    << ", valid " << v.pass() << ", global " << global << ", contracted " << contracted;
  return {v.pass() && std::abs(contracted - global) >= 0.3, d.str()};
}

// Rejection upper density of a size-0.05 test on iid paths.
Outcome criterion7() {
  const std::size_t n = 20;
  const auto test = make_builtin_test("threshold_exceedance", n, kZ95 / std::sqrt(double(n)));
  int within = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = apply_moving_window(make(gen::IidNormal{}, 100000, seed), test);
    within += r.upper_density <= 0.06;
    worst = std::max(worst, r.upper_density);
  }
  std::ostringstream d;
  d << within << "/50 seeds within 0.06, largest " << worst;
  return {within >= 48, d.str()};
}

// Suites of growing window size: bounded on iid paths, power one on a trend.
Outcome criterion8() {
  const std::vector<std::size_t> sizes = {10, 20, 50, 100, 200};
  std::vector<StationarityTest> threshold;
  std::vector<StationarityTest> split;
  for (std::size_t n : sizes) {
    threshold.push_back(make_builtin_test("threshold_exceedance", n, kZ95 / std::sqrt(double(n))));
    // |difference of two half-window means| has sd 2 / sqrt(n) under N(0,1)
    split.push_back(make_builtin_test("mean_split", n, kZ975 * 2.0 / std::sqrt(double(n))));
  }
  std::ostringstream d;
  bool ok = true;
  // the 1/8 tail at n = 200 needs about 4e6 values to keep noise under the 0.01 slack
  const auto iid = asymptotic_suite(make(gen::IidNormal{}, 4000000, 8), threshold);
  d << "iid:";
  for (const auto& r : iid.records) {
    ok = ok && r.upper_density <= 0.06;
    d << " " << r.upper_density;
  }
  const auto trend = asymptotic_suite(make(gen::Monotone{0.1}, 100000), split);
  d << "; trend:";
  for (std::size_t i = 0; i < trend.records.size(); ++i) {
    const double u = trend.records[i].upper_density;
    if (i > 0) ok = ok && u >= trend.records[i - 1].upper_density;
    if (sizes[i] >= 50) ok = ok && u == 1.0;
    d << " " << u;
  }
  return {ok, d.str()};
}

// Local density deviation ladder on a sign path.
Outcome criterion9() {
  std::mt19937_64 rng(2024);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> signs(200000);
  for (auto& s : signs) s = coin(rng) ? 1.0 : -1.0;
  const Path path(signs);
  const auto positive = IntervalPattern::single(0.0, kInf);
  const DiagnosticConfig cfg;

  const auto at10 = local_density_deviation(path, positive, 10, 0.1, cfg, 0.5);
  const auto at1000 = local_density_deviation(path, positive, 1000, 0.1, cfg, 0.5);
  const double oracle10 = oracle::binomial_deviation(10, 0.5, 0.5, 0.1);

  // with the estimated density the binomial oracle uses the same reference
  const auto est10 = local_density_deviation(path, positive, 10, 0.1, cfg);
  const auto est1000 = local_density_deviation(path, positive, 1000, 0.1, cfg);
  const double est_oracle = oracle::binomial_deviation(10, 0.5, est10.reference_density, 0.1);

  const bool ok = at1000.deviation_density < 0.01 && at1000.deviation_density <= at10.deviation_density &&
                  std::abs(at10.deviation_density - oracle10) <= 0.05 &&
                  est1000.deviation_density < 0.01 &&
                  std::abs(est10.deviation_density - est_oracle) <= 0.05;
  std::ostringstream d;
  d << "p=0.5: N=10 " << at10.deviation_density << " (oracle " << oracle10 << "), N=1000 "
    << at1000.deviation_density << "; estimated p " << est10.reference_density << ": N=10 "
    << est10.deviation_density << " (oracle " << est_oracle << "), N=1000 "
    << est1000.deviation_density;
  return {ok, d.str()};
}

// Counting primitives against brute force on small random instances.
Outcome criterion10() {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> value(-4, 4);
  const std::vector<double> endpoints = {-kInf, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, kInf};
  std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t len = 1 + rng() % 50;
    std::vector<double> xs(len);
    for (auto& x : xs) x = value(rng) * 0.5;
    const Path path(xs);
    const std::size_t k = 1 + rng() % std::min<std::size_t>(3, len);

    oracle::Box box;
    std::vector<Interval> intervals;
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t a = pick(rng), b = pick(rng);
      while (a == b) b = pick(rng);
      if (a > b) std::swap(a, b);
      if (endpoints[a] == kInf || endpoints[b] == -kInf) continue;
      box.push_back({endpoints[a], endpoints[b]});
      intervals.push_back({endpoints[a], endpoints[b]});
    }
    if (box.size() != k) {
      --trial;
      continue;
    }
    const IntervalPattern pattern(intervals);

    const auto occ = occurrence_set(path, pattern);
    if (occ.indices != oracle::occurrences(xs, box)) return {false, "occurrence_set, trial " + std::to_string(trial)};
    for (std::size_t n = 0; n <= occ.source_horizon; ++n) {
      if (counting_prefix(occ, n) != oracle::count_below(xs, box, n)) {
        return {false, "counting_prefix, trial " + std::to_string(trial)};
      }
    }

    std::vector<double> cuts;
    for (double c : {-1.25, -0.5, 0.0, 0.75, 1.5}) {
      if (rng() % 2) cuts.push_back(c);
    }
    if (cuts.empty()) cuts.push_back(0.0);
    const auto grid = PatternGrid::product(cuts, k);
    const std::size_t n = 1 + rng() % (len - k + 1);
    const auto m = empirical_measure(path, grid, n);
    const auto [counts, hits] = oracle::grid_counts(xs, cuts, k, n);
    if (m.counts != counts || m.boundary_hits != hits) {
      return {false, "empirical_measure, trial " + std::to_string(trial)};
    }
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (m.masses[c] != static_cast<double>(counts[c]) / static_cast<double>(n)) {
        return {false, "empirical_measure mass, trial " + std::to_string(trial)};
      }
    }
  }
  return {true, "1000 instances identical"};
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "non-stationary and stationary examples", 5, criterion1},
      {2, "exact periodic densities", 1e9, criterion2},
      {3, "consistency bound on counts", 30, criterion3},
      {4, "stationary coverage", 300, criterion4},
      {5, "non-ergodic evidence", 120, criterion5},
      {6, "adversarial contraction", 1e9, criterion6},
      {7, "rejection density bound", 60, criterion7},
      {8, "growing-window suites", 60, criterion8},
      {9, "local deviation ladder", 30, criterion9},
      {10, "brute-force equivalence", 10, criterion10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.time_limit_s) {
      out.pass = false;
      out.detail += "; over time limit";
    }
    failures += !out.pass;
    std::printf("[%s] %2d %s (%.2f s): %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
