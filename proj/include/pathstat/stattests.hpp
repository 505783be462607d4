#pragma once

// Stationarity tests as window decision functions, applied along a moving
// window, with the upper density of rejection offsets and Monte Carlo size
// calibration.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pathstat/generators.hpp"
#include "pathstat/pathcore.hpp"

namespace pathstat {

using WindowStatistic = std::function<double(std::span<const double>)>;

/// Rejects a window of length `window` iff statistic(window) > tau. The
/// built-in statistics are continuous, so the boundary {statistic = tau} is
/// a null set under continuous laws. A user-supplied statistic is assumed to
/// satisfy the same condition; it is not checked.
struct StationarityTest {
  std::string kind;
  std::size_t window = 0;
  double tau = 0.0;
  double alpha = 0.05;  // nominal size
  WindowStatistic statistic;

  bool decide(std::span<const double> values) const { return statistic(values) > tau; }
};

/// Built-in kinds: threshold_exceedance (window mean), mean_split
/// (|mean of first floor(n/2) - mean of the rest|), variance_split (same on
/// population variances), kpss_like (sum of squared centred partial sums
/// over n^2 times the variance; 0 for a constant window).
std::vector<std::string_view> builtin_test_kinds();

WindowStatistic builtin_statistic(std::string_view kind);

StationarityTest make_builtin_test(std::string_view kind, std::size_t window, double tau,
                                   double alpha = 0.05);

struct RejectionRecord {
  std::vector<std::uint8_t> indicators;
  std::size_t start = 0;
  std::size_t stride = 1;
  double upper_density = 0.0;
  /// Mean indicator over the last 1/2, 1/4 and 1/8 of the offsets.
  std::vector<double> tail_profile;

  std::size_t offset(std::size_t i) const noexcept { return start + i * stride; }
};

/// indicators[i] = decide(x_{start + i*stride}, ..., x_{start + i*stride + n - 1}).
RejectionRecord apply_moving_window(const Path& path, const StationarityTest& test,
                                    std::size_t start = 0, std::size_t stride = 1);

/// Mean over each tail of the ladder (ceil(len/2), ceil(len/4), ceil(len/8)).
std::vector<double> rejection_tail_profile(std::span<const std::uint8_t> indicators);

/// Maximum of rejection_tail_profile: finite stand-in for the upper density.
double rejection_upper_density(std::span<const std::uint8_t> indicators);

struct SuiteConfig {
  double epsilon = 0.01;
  std::size_t start = 0;
  std::size_t stride = 1;
};

struct SuiteResult {
  std::vector<RejectionRecord> records;
  /// Smallest window size from which every later test has
  /// upper_density <= alpha + epsilon; empty when the last test fails.
  std::optional<std::size_t> stable_from;
};

/// Tests must be sorted by strictly increasing window size.
SuiteResult asymptotic_suite(const Path& path, const std::vector<StationarityTest>& tests,
                             const SuiteConfig& config = {});

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MonteCarloConfig {
  std::size_t replicates = 1000;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

struct Calibration {
  double tau = 0.0;
  double standard_error = 0.0;
  double alpha = 0.0;
  std::size_t replicates = 0;
};

/// tau = empirical (1 - alpha) quantile of the statistic over independent
/// windows drawn from the generator, replicate r using seed
/// derive_seed(mc.seed, r). The standard error is half the spread of the
/// order statistics one binomial standard deviation either side.
Calibration calibrate_test_size(std::string_view kind, std::size_t window, double alpha,
                                const GeneratorParams& generator, const MonteCarloConfig& mc);

}  // namespace pathstat
