#pragma once

// Seeded synthetic paths: the textbook stationary / non-stationary examples
// and the validation zoo used by the acceptance and Monte Carlo runs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "pathstat/pathcore.hpp"

namespace pathstat {

namespace gen {
struct Constant { double c = 0.0; };
struct Monotone { double slope = 1.0; };
/// iid N(0,1) truncated to (-4, 4) with x_{L/2} = peak_height.
struct UniquePeak { double peak_height = 10.0; };
struct Sine { double theta = 1.0; double phi0 = 0.0; };
struct RandomPhaseSine { double theta = 1.0; };
struct IidNormal { double mu = 0.0; double sigma = 1.0; };
struct Ar1 { double rho = 0.5; double sigma = 1.0; };
/// Pair m consists of m values at level_a then m values at level_b, plus
/// N(0,1) noise everywhere.
struct BlockMixture { double level_a = 0.0; double level_b = 5.0; };
}  // namespace gen

using GeneratorParams = std::variant<gen::Constant, gen::Monotone, gen::UniquePeak, gen::Sine,
                                     gen::RandomPhaseSine, gen::IidNormal, gen::Ar1,
                                     gen::BlockMixture>;

struct GeneratorSpec {
  GeneratorParams params;
  std::size_t length = 1000;
  std::uint64_t seed = 0;

  std::string_view kind() const;
  bool is_random() const;
};

/// Throws std::invalid_argument for out-of-range parameters.
void validate(const GeneratorSpec& spec);

Path generate(const GeneratorSpec& spec);

/// Parses "kind(args)" with positional or name=value arguments, optionally
/// prefixed by "generate:" and followed by ",L=<length>" / ",seed=<seed>".
/// Example: "generate:ar1(rho=0.5,sigma=1),L=100000,seed=7".
GeneratorSpec parse_generator_spec(std::string_view text, std::size_t default_length = 1000,
                                   std::uint64_t default_seed = 0);

/// Canonical "kind(name=value,...)" form, without length or seed.
std::string format_generator(const GeneratorParams& params);

/// Oracle verdict table per generator kind. A missing entry means the
/// diagnostic carries no expectation for that kind.
struct ExpectedProfile {
  bool passes_all = true;
  std::optional<bool> property_e;
  std::optional<bool> property_t;
  std::optional<bool> ergodic;
  /// Lower bound on the ergodicity discrepancy, where the kind implies one.
  std::optional<double> min_ergodic_discrepancy;
  std::string rationale;
};

ExpectedProfile expected_profile(const GeneratorSpec& spec);

}  // namespace pathstat
