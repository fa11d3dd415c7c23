#include <random>
#include <set>

#include <gtest/gtest.h>

#include "cadse/error.hpp"
#include "cadse/rate_vector.hpp"

using namespace cadse;

TEST(SnapToGrid, OnGridValueIsKept) { EXPECT_DOUBLE_EQ(snap_to_grid(0.5, GridStep{}), 0.5); }

TEST(SnapToGrid, RoundsToNearestMultiple) { EXPECT_DOUBLE_EQ(snap_to_grid(0.99), 1.0); }

TEST(SnapToGrid, MidpointTiesGoTowardHalf) {
  EXPECT_DOUBLE_EQ(snap_to_grid(0.4375), 0.5);
  EXPECT_DOUBLE_EQ(snap_to_grid(0.5625), 0.5);
  EXPECT_DOUBLE_EQ(snap_to_grid(0.0625), 0.125);
  EXPECT_DOUBLE_EQ(snap_to_grid(0.9375), 0.875);
}

TEST(SnapToGrid, RejectsOutOfRange) {
  EXPECT_THROW((void)snap_to_grid(-0.01), Error);
  EXPECT_THROW((void)snap_to_grid(1.01), Error);
}

TEST(SnapToGrid, FinerGrid) {
  EXPECT_DOUBLE_EQ(snap_to_grid(0.2, GridStep(32)), 0.1875);
  EXPECT_THROW(GridStep(0), Error);
}

TEST(SnapToGrid, IsIdempotent) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 10000; ++k) {
    const double once = snap_to_grid(u(rng));
    EXPECT_EQ(snap_to_grid(once), once);
  }
}

TEST(CanonicalKey, AllOnes) { EXPECT_EQ(canonical_key(ToolRateVector::filled(3, 1.0)), "8,8,8"); }

TEST(CanonicalKey, MixedRates) {
  const std::vector<double> rates{1.0, 0.5, 0.0};
  EXPECT_EQ(canonical_key(ToolRateVector::from_rates(rates)), "8,4,0");
}

TEST(CanonicalKey, DiffersInOneTool) {
  const auto a = ToolRateVector::filled(4, 1.0);
  EXPECT_NE(canonical_key(a), canonical_key(a.with_rate(2, 0.75)));
}

TEST(CanonicalKey, OtherGridCarriesPrefix) {
  const auto v = ToolRateVector::filled(2, 0.5, GridStep(32));
  EXPECT_EQ(canonical_key(v), "32:16,16");
  EXPECT_EQ(parse_canonical_key("32:16,16"), v);
}

TEST(CanonicalKey, RandomRoundTripIsInjective) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> m(0, 8);
  std::set<std::string> keys;
  std::set<std::vector<int>> vectors;
  for (int k = 0; k < 10000; ++k) {
    std::vector<int> num(6);
    for (auto& x : num) x = m(rng);
    const ToolRateVector v(num);
    const auto key = canonical_key(v);
    EXPECT_EQ(parse_canonical_key(key), v);
    keys.insert(key);
    vectors.insert(num);
  }
  EXPECT_EQ(keys.size(), vectors.size());
}

TEST(CanonicalKey, ParseRejectsGarbage) {
  EXPECT_THROW((void)parse_canonical_key("8,x"), Error);
  EXPECT_THROW((void)parse_canonical_key("9,8"), Error);
  EXPECT_THROW((void)parse_canonical_key(""), Error);
}

TEST(RateVector, RejectsOffGridRates) {
  const std::vector<double> rates{0.3};
  EXPECT_THROW((void)ToolRateVector::from_rates(rates), Error);
  EXPECT_THROW(ToolRateVector(std::vector<int>{9}), Error);
}

TEST(RateVector, BinaryDetection) {
  EXPECT_TRUE(ToolRateVector(std::vector<int>{0, 8}).is_binary());
  EXPECT_FALSE(ToolRateVector(std::vector<int>{0, 4}).is_binary());
}

TEST(Diff, IdenticalIsEmpty) {
  const auto a = ToolRateVector::filled(3, 1.0);
  EXPECT_TRUE(diff(a, a).empty());
}

TEST(Diff, ReportsChangedCoordinates) {
  const ToolRateVector a(std::vector<int>{8, 8});
  const ToolRateVector b(std::vector<int>{8, 4});
  EXPECT_EQ(diff(a, b), (std::vector<RateDelta>{{1, 0.5}}));
  const ToolRateVector c(std::vector<int>{0, 8});
  EXPECT_EQ(diff(c, a), (std::vector<RateDelta>{{0, -1.0}}));
}

TEST(Diff, LengthMismatchThrows) {
  EXPECT_THROW((void)diff(ToolRateVector::filled(2, 1.0), ToolRateVector::filled(3, 1.0)), Error);
}
