#pragma once

#include <cstdint>
#include <random>

namespace pathstat {

/// Deterministic stream "pathstat-rng-v1": std::mt19937_64 seeded through
/// SplitMix64, 53-bit uniforms and Marsaglia polar normals. Identical seeds
/// give identical streams on every platform.
class Rng {
 public:
  static constexpr const char* kName = "pathstat-rng-v1";

  explicit Rng(std::uint64_t seed);

  /// Uniform on [0, 1).
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of sub-stream `stream` of `base`; used for per-replicate seeds so
/// results do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

}  // namespace pathstat
