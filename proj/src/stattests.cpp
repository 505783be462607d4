#include "pathstat/stattests.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "pathstat/rng.hpp"

namespace pathstat {
namespace {

double mean_of(std::span<const double> w) {
  double s = 0.0;
  for (double v : w) s += v;
  return s / static_cast<double>(w.size());
}

double variance_of(std::span<const double> w) {
  const double mu = mean_of(w);
  double s = 0.0;
  for (double v : w) s += (v - mu) * (v - mu);
  return s / static_cast<double>(w.size());
}

double threshold_exceedance(std::span<const double> w) { return mean_of(w); }

double mean_split(std::span<const double> w) {
  const std::size_t h = w.size() / 2;
  return std::abs(mean_of(w.first(h)) - mean_of(w.subspan(h)));
}

double variance_split(std::span<const double> w) {
  const std::size_t h = w.size() / 2;
  return std::abs(variance_of(w.first(h)) - variance_of(w.subspan(h)));
}

double kpss_like(std::span<const double> w) {
  const double n = static_cast<double>(w.size());
  const double mu = mean_of(w);
  double partial = 0.0;
  double sum_sq = 0.0;
  double var = 0.0;
  for (double v : w) {
    partial += v - mu;
    sum_sq += partial * partial;
    var += (v - mu) * (v - mu);
  }
  var /= n;
  if (!(var > 0.0)) return 0.0;
  return sum_sq / (n * n * var);
}

std::size_t min_window(std::string_view kind) {
  if (kind == "mean_split") return 2;
  if (kind == "variance_split") return 4;
  return 1;
}

}  // namespace

std::vector<std::string_view> builtin_test_kinds() {
  return {"threshold_exceedance", "mean_split", "variance_split", "kpss_like"};
}

WindowStatistic builtin_statistic(std::string_view kind) {
  if (kind == "threshold_exceedance") return threshold_exceedance;
  if (kind == "mean_split") return mean_split;
  if (kind == "variance_split") return variance_split;
  if (kind == "kpss_like") return kpss_like;
  throw std::invalid_argument("unknown test kind '" + std::string(kind) + "'");
}

StationarityTest make_builtin_test(std::string_view kind, std::size_t window, double tau,
                                   double alpha) {
  auto statistic = builtin_statistic(kind);
  if (window < min_window(kind)) {
    throw std::invalid_argument(std::string(kind) + " needs a window of at least " +
                                std::to_string(min_window(kind)));
  }
  if (!std::isfinite(tau)) throw std::invalid_argument("test threshold must be finite");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  return StationarityTest{std::string(kind), window, tau, alpha, std::move(statistic)};
}

std::vector<double> rejection_tail_profile(std::span<const std::uint8_t> indicators) {
  if (indicators.empty()) throw std::invalid_argument("indicator sequence is empty");
  const std::size_t len = indicators.size();
  std::vector<double> profile;
  for (std::size_t div : {2, 4, 8}) {
    const std::size_t w = std::max<std::size_t>(1, (len + div - 1) / div);
    std::size_t ones = 0;
    for (std::size_t i = len - w; i < len; ++i) ones += indicators[i];
    profile.push_back(static_cast<double>(ones) / static_cast<double>(w));
  }
  return profile;
}

double rejection_upper_density(std::span<const std::uint8_t> indicators) {
  const auto profile = rejection_tail_profile(indicators);
  return *std::max_element(profile.begin(), profile.end());
}

RejectionRecord apply_moving_window(const Path& path, const StationarityTest& test,
                                    std::size_t start, std::size_t stride) {
  if (stride < 1) throw std::invalid_argument("stride must be at least 1");
  if (test.window < 1 || start + test.window > path.length()) {
    throw std::invalid_argument("window of size " + std::to_string(test.window) +
                                " at offset " + std::to_string(start) +
                                " does not fit a path of length " +
                                std::to_string(path.length()));
  }
  RejectionRecord rec;
  rec.start = start;
  rec.stride = stride;
  const std::size_t count = (path.length() - test.window - start) / stride + 1;
  rec.indicators.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    rec.indicators[i] = test.decide(window_view(path, test.window, start + i * stride)) ? 1 : 0;
  }
  rec.tail_profile = rejection_tail_profile(rec.indicators);
  rec.upper_density = *std::max_element(rec.tail_profile.begin(), rec.tail_profile.end());
  return rec;
}

SuiteResult asymptotic_suite(const Path& path, const std::vector<StationarityTest>& tests,
                             const SuiteConfig& config) {
  if (tests.empty()) throw std::invalid_argument("test suite is empty");
  for (std::size_t i = 1; i < tests.size(); ++i) {
    if (!(tests[i].window > tests[i - 1].window)) {
      throw std::invalid_argument("suite tests must have increasing window sizes");
    }
  }
  SuiteResult out;
  for (const auto& t : tests) {
    out.records.push_back(apply_moving_window(path, t, config.start, config.stride));
  }
  for (std::size_t i = tests.size(); i-- > 0;) {
    if (out.records[i].upper_density > tests[i].alpha + config.epsilon) break;
    out.stable_from = tests[i].window;
  }
  return out;
}

Calibration calibrate_test_size(std::string_view kind, std::size_t window, double alpha,
                                const GeneratorParams& generator, const MonteCarloConfig& mc) {
  const auto test = make_builtin_test(kind, window, 0.0, alpha);
  if (mc.replicates < 1000) throw std::invalid_argument("calibration needs at least 1000 replicates");

  std::vector<double> stats(mc.replicates);
  const auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const auto path = generate(GeneratorSpec{generator, window, derive_seed(mc.seed, r)});
      stats[r] = test.statistic(path.values());
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(mc.threads, 1, mc.replicates);
  if (threads == 1) {
    run(0, mc.replicates);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (mc.replicates + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t b = std::min(mc.replicates, t * chunk);
      const std::size_t e = std::min(mc.replicates, b + chunk);
      pool.emplace_back(run, b, e);
    }
    for (auto& th : pool) th.join();
  }

  std::sort(stats.begin(), stats.end());
  if (stats.front() == stats.back()) {
    throw CalibrationError("statistic " + std::string(kind) +
                           " is constant under the generator; no threshold achieves the size");
  }
  const double r = static_cast<double>(mc.replicates);
  const auto rank = [&](double pos) {
    const auto k = static_cast<long>(std::ceil(pos)) - 1;
    return static_cast<std::size_t>(std::clamp<long>(k, 0, static_cast<long>(mc.replicates) - 1));
  };
  const double centre = (1.0 - alpha) * r;
  const double sd = std::sqrt(r * alpha * (1.0 - alpha));
  Calibration cal;
  cal.tau = stats[rank(centre)];
  cal.standard_error = (stats[rank(centre + sd)] - stats[rank(centre - sd)]) / 2.0;
  cal.alpha = alpha;
  cal.replicates = mc.replicates;
  return cal;
}

}  // namespace pathstat
