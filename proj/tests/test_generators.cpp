#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "pathstat/generators.hpp"

using namespace pathstat;

namespace {

std::vector<double> values(const Path& p) { return {p.values().begin(), p.values().end()}; }

}  // namespace

TEST(Generate, Constant) {
  EXPECT_EQ(values(generate(GeneratorSpec{gen::Constant{2.0}, 5, 0})),
            (std::vector<double>{2, 2, 2, 2, 2}));
}

TEST(Generate, QuarterTurnSine) {
  const auto xs = values(generate(GeneratorSpec{gen::Sine{std::numbers::pi / 2, 0.0}, 8, 0}));
  const std::vector<double> expected = {0, 1, 0, -1, 0, 1, 0, -1};
  ASSERT_EQ(xs.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(xs[i], expected[i], 1e-12);
}

TEST(Generate, Monotone) {
  EXPECT_EQ(values(generate(GeneratorSpec{gen::Monotone{1.0}, 4, 0})), (std::vector<double>{0, 1, 2, 3}));
}

TEST(Generate, UniquePeakIsNeverMatched) {
  const auto xs = values(generate(GeneratorSpec{gen::UniquePeak{}, 1001, 3}));
  EXPECT_EQ(xs[500], 10.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i != 500) {
      ASSERT_GT(xs[i], -4.0);
      ASSERT_LT(xs[i], 4.0);
    }
  }
}

TEST(Generate, BlockMixtureFollowsLayout) {
  const std::size_t len = 5000;
  const auto xs = values(generate(GeneratorSpec{gen::BlockMixture{0.0, 20.0}, len, 1}));
  const auto mask = oracle::level_b_mask(len);
  // noise is unit variance, so a level gap of 20 separates the blocks cleanly
  for (std::size_t i = 0; i < len; ++i) ASSERT_EQ(xs[i] > 10.0, mask[i]) << i;
}

TEST(Generate, Ar1MomentsMatchStationaryLaw) {
  const double rho = 0.6;
  const auto xs = values(generate(GeneratorSpec{gen::Ar1{rho, 1.0}, 200000, 5}));
  double mean = 0.0, var = 0.0, lag = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    var += (xs[i] - mean) * (xs[i] - mean);
    if (i > 0) lag += (xs[i] - mean) * (xs[i - 1] - mean);
  }
  EXPECT_NEAR(mean, 0.0, 0.03);
  EXPECT_NEAR(var / static_cast<double>(xs.size()), 1.0 / (1.0 - rho * rho), 0.05);
  EXPECT_NEAR(lag / var, rho, 0.01);
}

TEST(Generate, ReproducibleBitForBit) {
  for (const auto* text : {"iid_normal(0,1)", "ar1(0.5,1)", "random_phase_sine(1)", "unique_peak(10)",
                           "block_mixture(0,5)"}) {
    const auto spec = parse_generator_spec(text, 3000, 42);
    EXPECT_EQ(values(generate(spec)), values(generate(spec))) << text;
    auto other = spec;
    other.seed = 43;
    EXPECT_NE(values(generate(spec)), values(generate(other))) << text;
  }
}

TEST(Generate, InvalidParameters) {
  EXPECT_THROW(generate(GeneratorSpec{gen::Sine{0.0, 0.0}, 10, 0}), std::invalid_argument);
  EXPECT_THROW(generate(GeneratorSpec{gen::Sine{2 * std::numbers::pi, 0.0}, 10, 0}), std::invalid_argument);
  EXPECT_THROW(generate(GeneratorSpec{gen::Ar1{1.0, 1.0}, 10, 0}), std::invalid_argument);
  EXPECT_THROW(generate(GeneratorSpec{gen::IidNormal{0.0, 0.0}, 10, 0}), std::invalid_argument);
  EXPECT_THROW(generate(GeneratorSpec{gen::UniquePeak{3.0}, 10, 0}), std::invalid_argument);
  EXPECT_THROW(generate(GeneratorSpec{gen::Constant{std::nan("")}, 10, 0}), std::invalid_argument);
  EXPECT_THROW(generate(GeneratorSpec{gen::Constant{1.0}, 0, 0}), std::invalid_argument);
}

TEST(GeneratorSpecText, ParseForms) {
  const auto a = parse_generator_spec("generate:ar1(rho=0.5,sigma=2),L=1e5,seed=7");
  EXPECT_EQ(a.kind(), "ar1");
  EXPECT_EQ(std::get<gen::Ar1>(a.params).rho, 0.5);
  EXPECT_EQ(std::get<gen::Ar1>(a.params).sigma, 2.0);
  EXPECT_EQ(a.length, 100000u);
  EXPECT_EQ(a.seed, 7u);

  const auto b = parse_generator_spec("sine(1.5)", 64, 3);
  EXPECT_EQ(std::get<gen::Sine>(b.params).theta, 1.5);
  EXPECT_EQ(std::get<gen::Sine>(b.params).phi0, 0.0);
  EXPECT_EQ(b.length, 64u);
  EXPECT_EQ(b.seed, 3u);

  const auto c = parse_generator_spec("iid_normal");
  EXPECT_EQ(std::get<gen::IidNormal>(c.params).sigma, 1.0);
}

TEST(GeneratorSpecText, ParseErrors) {
  for (const auto* bad : {"", "brownian(1)", "ar1(rho=0.5,foo=1)", "ar1(0.5,1,2)", "ar1(x)",
                          "ar1(0.5", "constant(1),L=-3", "constant(1),depth=3"}) {
    EXPECT_THROW(parse_generator_spec(bad), std::invalid_argument) << bad;
  }
}

TEST(GeneratorSpecText, FormatRoundTrips) {
  const std::vector<GeneratorParams> all = {
      gen::Constant{2.5},      gen::Monotone{0.1},   gen::UniquePeak{12.0},
      gen::Sine{1.25, 0.5},    gen::RandomPhaseSine{2.0}, gen::IidNormal{1.0, 3.0},
      gen::Ar1{-0.3, 0.7},     gen::BlockMixture{-1.0, 4.0}};
  for (const auto& p : all) {
    const auto text = format_generator(p);
    const auto back = parse_generator_spec(text);
    EXPECT_EQ(format_generator(back.params), text);
    EXPECT_EQ(back.params.index(), p.index()) << text;
  }
}

TEST(ExpectedProfile, VerdictTable) {
  EXPECT_TRUE(expected_profile(GeneratorSpec{gen::Constant{}}).passes_all);
  EXPECT_TRUE(expected_profile(GeneratorSpec{gen::Ar1{}}).passes_all);
  const auto mono = expected_profile(GeneratorSpec{gen::Monotone{}});
  EXPECT_FALSE(mono.passes_all);
  EXPECT_EQ(mono.property_t, false);
  EXPECT_EQ(mono.property_e, false);
  EXPECT_EQ(expected_profile(GeneratorSpec{gen::UniquePeak{}}).property_e, false);
  const auto mix = expected_profile(GeneratorSpec{gen::BlockMixture{}});
  EXPECT_EQ(mix.ergodic, false);
  ASSERT_TRUE(mix.min_ergodic_discrepancy.has_value());
  EXPECT_GE(*mix.min_ergodic_discrepancy, 0.4);
}

namespace {

std::vector<double> arcsine_cell_mass(const std::vector<double>& cuts) {
  std::vector<double> mass;
  double lo = -1.0;
  for (std::size_t c = 0; c <= cuts.size(); ++c) {
    const double hi = c < cuts.size() ? cuts[c] : 1.0;
    mass.push_back(oracle::arcsine_cdf(hi) - oracle::arcsine_cdf(lo));
    lo = hi;
  }
  return mass;
}

std::vector<double> first_value_cell_mass(const std::vector<double>& cuts, std::uint64_t first,
                                          std::uint64_t seeds) {
  std::vector<double> mass(cuts.size() + 1, 0.0);
  for (std::uint64_t s = first; s < first + seeds; ++s) {
    const double x0 = generate(GeneratorSpec{gen::RandomPhaseSine{1.0}, 1, s})[0];
    mass[static_cast<std::size_t>(oracle::cell_of(x0, cuts))] += 1.0 / static_cast<double>(seeds);
  }
  return mass;
}

const std::vector<double> kArcsineCuts = {-0.75, -0.25, 0.25, 0.75};

}  // namespace

// A 1000-seed batch has sd about 0.013 per cell, so +-0.03 is a ~2.3 sd band;
// a few batches out of ten may miss it by chance.
TEST(RandomPhaseSine, ThousandSeedBatchesMatchArcsineLaw) {
  const auto oracle_mass = arcsine_cell_mass(kArcsineCuts);
  int within = 0;
  for (std::uint64_t batch = 0; batch < 10; ++batch) {
    const auto mass = first_value_cell_mass(kArcsineCuts, batch * 1000, 1000);
    bool ok = true;
    for (std::size_t c = 0; c < mass.size(); ++c) ok = ok && std::abs(mass[c] - oracle_mass[c]) <= 0.03;
    within += ok;
  }
  EXPECT_GE(within, 8);
}

TEST(RandomPhaseSine, PooledSeedsMatchArcsineLaw) {
  const auto oracle_mass = arcsine_cell_mass(kArcsineCuts);
  const auto mass = first_value_cell_mass(kArcsineCuts, 0, 100000);
  for (std::size_t c = 0; c < mass.size(); ++c) EXPECT_NEAR(mass[c], oracle_mass[c], 0.005) << c;
}
