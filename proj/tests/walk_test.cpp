#include <gtest/gtest.h>

#include "qshift/walk.hpp"

using namespace qshift;

namespace {

WalkConfig config(std::uint32_t m, std::uint32_t steps, ShiftVariant v = ShiftVariant::parallel) {
  WalkConfig c;
  c.m = m;
  c.steps = steps;
  c.variant = v;
  return c;
}

}  // namespace

TEST(Walk, ZeroStepsIsPointMass) {
  auto c = config(4, 0);
  c.initial_site = 5;
  const auto d = run_walk(c).distribution;
  EXPECT_EQ(d.probabilities[5], 1.0);
  EXPECT_EQ(classical_walk_oracle(c).probabilities[5], 1.0);
  EXPECT_EQ(compare_variants(c).max_deviation, 0.0);
}

TEST(Walk, OneStepSplitsEvenly) {
  for (auto v : kAllVariants) {
    auto c = config(4, 1, v);
    c.initial_site = 3;
    const auto d = run_walk(c).distribution;
    EXPECT_NEAR(d.probabilities[2], 0.5, 1e-12);
    EXPECT_NEAR(d.probabilities[4], 0.5, 1e-12);
    EXPECT_NEAR(d.total(), 1.0, 1e-12);
  }
}

TEST(Walk, WrapsAroundTheCycle) {
  auto c = config(4, 1);
  c.initial_site = 0;
  const auto d = run_walk(c).distribution;
  EXPECT_NEAR(d.probabilities[15], 0.5, 1e-12);
  EXPECT_NEAR(d.probabilities[1], 0.5, 1e-12);
}

TEST(Walk, MatchesOracle) {
  auto c = config(5, 10);
  c.initial_site = 16;
  const auto d = run_walk(c).distribution;
  EXPECT_LT(max_abs_difference(d, classical_walk_oracle(c)), 1e-10);
  EXPECT_LT(compare_variants(config(4, 8)).max_deviation, 1e-10);
  EXPECT_LT(compare_variants(config(5, 16)).per_variant.at(ShiftVariant::parallel), 1e-10);
}

TEST(Walk, CanaryInvertedOracleDisagrees) {
  // with coin |0> the two conventions walk in opposite directions, so the
  // asymmetric Hadamard walk must differ from its mirror image
  auto c = config(5, 6);
  c.initial_site = 10;
  const auto inverted = classical_walk_oracle(c, {.inverted_convention = true});
  for (auto v : kAllVariants) {
    c.variant = v;
    EXPECT_GT(max_abs_difference(run_walk(c).distribution, inverted), 0.05) << to_string(v);
  }
}

TEST(Walk, SymmetricCoinGivesSymmetricDistribution) {
  auto c = config(4, 2);
  c.initial_site = 8;
  c.initial_coin = coin_symmetric();
  for (const auto& d : {classical_walk_oracle(c), run_walk(c).distribution})
    for (std::size_t r = 1; r < 8; ++r)
      EXPECT_NEAR(d.probabilities[8 + r], d.probabilities[8 - r], 1e-12);
}

TEST(Walk, ParityOfSupport) {
  for (std::uint32_t t = 1; t < 16; ++t) {
    auto c = config(5, t);
    c.initial_site = 7;
    const auto d = run_walk(c).distribution;
    for (std::size_t k = 0; k < 32; ++k)
      if ((k + 7 + t) % 2 == 1) {
        EXPECT_LT(d.probabilities[k], 1e-20) << t << " " << k;
      }
  }
}

TEST(Walk, NormalizationOverManySteps) {
  auto c = config(4, 100, ShiftVariant::canonical);
  c.initial_coin = coin_symmetric();
  EXPECT_NEAR(run_walk(c).distribution.total(), 1.0, 1e-10);
}

TEST(Walk, Errors) {
  auto c = config(4, 1);
  c.initial_site = 16;
  EXPECT_THROW(run_walk(c), WalkError);
  c = config(4, 1);
  c.initial_coin = {1.0, 1.0};
  EXPECT_THROW(run_walk(c), WalkError);
  EXPECT_THROW(parse_coin("grover"), WalkError);
  EXPECT_THROW(classical_walk_oracle(config(kMaxOracleM + 1, 1)), WalkError);
  EXPECT_THROW(run_walk(config(3, 1)), BuildError);
}

TEST(Walk, DistributionCsv) {
  PositionDistribution d{{0.25, 0.75}};
  EXPECT_EQ(format_distribution(d), "site,probability\n0,0.25\n1,0.75\n");
}
