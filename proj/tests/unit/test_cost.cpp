#include <random>

#include <gtest/gtest.h>

#include "cadse/cost.hpp"
#include "cadse/error.hpp"

using namespace cadse;

namespace {
const CostSpec classic{CostKind::classic};
const CostSpec linear{CostKind::linear, 5.0, 3.0, 0.5};
const CostSpec cubic{CostKind::linear_cubic, 5.0, 3.0, 0.5};
}  // namespace

TEST(Cost, TableFixtures) {
  EXPECT_NEAR(evaluate_cost({17.46, -48.77}, classic), -31.31, 1e-9);
  EXPECT_NEAR(evaluate_cost({3.62, -18.99}, linear), -18.99, 1e-9);
  EXPECT_NEAR(evaluate_cost({6.28, -23.81}, cubic), -23.335448, 1e-9);
}

TEST(Cost, OriginValues) {
  EXPECT_EQ(evaluate_cost({0, 0}, classic), 0.0);
  // The cubic form keeps the below-band reward min(bdr - (l - b) * ..., 0).
  EXPECT_EQ(evaluate_cost({0, 0}, linear), 0.0);
  EXPECT_NEAR(evaluate_cost({0, 0}, cubic), -4.5, 1e-12);
}

TEST(Cost, BelowBandIsLinearReward) {
  EXPECT_NEAR(evaluate_cost({2.0, -10.0}, cubic), 2.0 - 4.5 - 10.0, 1e-12);
}

TEST(Cost, MonotoneInBothAxes) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  const double h = 1e-3;
  for (int k = 0; k < 1000; ++k) {
    const EfficiencyPoint p{u(rng), u(rng)};
    for (const auto& spec : {classic, linear, cubic}) {
      EXPECT_GE(evaluate_cost({p.bdr + h, p.bdde}, spec), evaluate_cost(p, spec));
      EXPECT_NEAR(evaluate_cost({p.bdr, p.bdde + h}, spec) - evaluate_cost(p, spec), h, 1e-9);
    }
  }
}

TEST(Cost, ClassicIsLinearWithZeroLimitUnitWeight) {
  const CostSpec degenerate{CostKind::linear, 0.0, 1.0, 0.5};
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> bdr(0.0, 40.0), bdde(-60.0, 10.0);
  for (int k = 0; k < 1000; ++k) {
    const EfficiencyPoint p{bdr(rng), bdde(rng)};
    EXPECT_EQ(evaluate_cost(p, classic), evaluate_cost(p, degenerate));
  }
}

TEST(Cost, LinearCubicContinuousAtJunctions) {
  for (double junction : {4.5, 5.5}) {
    const double left = evaluate_cost({junction - 1e-13, -7.0}, cubic);
    const double right = evaluate_cost({junction + 1e-13, -7.0}, cubic);
    EXPECT_NEAR(left, right, 1e-12);
    EXPECT_NEAR(evaluate_cost({junction, -7.0}, cubic), -7.0, 1e-12);
  }
}

TEST(Cost, InsideBandEqualsBdde) {
  for (double bdr = 4.5; bdr <= 5.5; bdr += 0.01) EXPECT_EQ(evaluate_cost({bdr, -12.25}, cubic), -12.25);
}

TEST(Cost, SpecValidation) {
  EXPECT_THROW((CostSpec{CostKind::linear, 5.0, 0.0, 0.5}).validate(), Error);
  EXPECT_THROW((CostSpec{CostKind::linear, -1.0, 3.0, 0.5}).validate(), Error);
  EXPECT_THROW((CostSpec{CostKind::linear, 5.0, 3.0, -0.5}).validate(), Error);
}

TEST(Cost, KindNames) {
  EXPECT_EQ(parse_cost_kind("linear-cubic"), CostKind::linear_cubic);
  EXPECT_EQ(parse_cost_kind("linear_cubic"), CostKind::linear_cubic);
  EXPECT_EQ(to_string(CostKind::linear_cubic), "linear-cubic");
  EXPECT_THROW((void)parse_cost_kind("quadratic"), Error);
}
