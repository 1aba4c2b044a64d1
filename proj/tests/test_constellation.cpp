#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "pamdemap/constellation.hpp"
#include "pamdemap/error.hpp"

using namespace pamdemap;

namespace {

int hamming(std::uint32_t a, std::uint32_t b) { return std::popcount(a ^ b); }

}  // namespace

TEST(Constellation, ScaleFactor) {
  const auto c = build_pam8();
  EXPECT_NEAR(c.d(), 0.1543033499, 1e-10);
  EXPECT_DOUBLE_EQ(c.d(), std::sqrt(1.0 / 42.0));
}

TEST(Constellation, PointsAreOddMultiplesOfD) {
  const auto c = build_pam8();
  ASSERT_EQ(c.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i)
    EXPECT_NEAR(c.point(i), (2.0 * static_cast<double>(i) - 7.0) * c.d(), 1e-15);
  for (std::size_t i = 1; i < 8; ++i) EXPECT_LT(c.point(i - 1), c.point(i));
}

TEST(Constellation, LabelTable) {
  const auto c = build_pam8();
  const std::uint32_t expected[] = {0b000, 0b001, 0b011, 0b010, 0b110, 0b111, 0b101, 0b100};
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(c.label(i), expected[i]) << i;
}

TEST(Constellation, SumAndEnergy) {
  const auto c = build_pam8();
  const auto pts = c.points();
  EXPECT_NEAR(std::accumulate(pts.begin(), pts.end(), 0.0), 0.0, 1e-15);
  double e = 0.0;
  for (double x : pts) e += x * x;
  EXPECT_NEAR(e / 8.0, 0.5, 1e-12);
}

TEST(Constellation, GrayAdjacencyAndBijection) {
  const auto c = build_pam8();
  std::set<std::uint32_t> seen;
  for (std::size_t i = 0; i < 8; ++i) seen.insert(c.label(i));
  EXPECT_EQ(seen.size(), 8u);
  for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(hamming(c.label(i - 1), c.label(i)), 1);
}

TEST(Constellation, LabelSymmetry) {
  const auto c = build_pam8();
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NE(c.bit(i, 1), c.bit(7 - i, 1));
    EXPECT_EQ(c.bit(i, 2), c.bit(7 - i, 2));
    EXPECT_EQ(c.bit(i, 3), c.bit(7 - i, 3));
  }
}

TEST(Constellation, MapBits) {
  const auto c = build_pam8();
  const int zero[] = {0, 0, 0};
  const int msb[] = {1, 0, 0};
  EXPECT_DOUBLE_EQ(c.map_bits(zero), -7.0 * c.d());
  EXPECT_DOUBLE_EQ(c.map_bits(msb), 7.0 * c.d());
  for (std::size_t i = 0; i < 8; ++i) {
    const int bits[] = {c.bit(i, 1), c.bit(i, 2), c.bit(i, 3)};
    EXPECT_DOUBLE_EQ(c.map_bits(bits), c.point(i));
  }
  const int bad[] = {0, 2, 0};
  EXPECT_THROW(c.map_bits(bad), DemapError);
  const int short_word[] = {0, 1};
  EXPECT_THROW(c.map_bits(short_word), DemapError);
}

TEST(Constellation, IndexSets) {
  const auto c = build_pam8();
  EXPECT_EQ(c.index_set(1, 0).indices, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(c.index_set(2, 1).indices, (std::vector<std::size_t>{2, 3, 4, 5}));
  for (int k = 1; k <= 3; ++k) {
    auto s0 = c.index_set(k, 0).indices;
    auto s1 = c.index_set(k, 1).indices;
    EXPECT_EQ(s0.size(), 4u);
    EXPECT_EQ(s1.size(), 4u);
    std::set<std::size_t> all(s0.begin(), s0.end());
    all.insert(s1.begin(), s1.end());
    EXPECT_EQ(all.size(), 8u);
    for (auto i : s1) EXPECT_EQ(c.bit(i, k), 1);
  }
  EXPECT_THROW(c.index_set(0, 0), DemapError);
  EXPECT_THROW(c.index_set(4, 0), DemapError);
  EXPECT_THROW(c.index_set(1, 2), DemapError);
}

TEST(Constellation, OtherOrders) {
  for (int m = 1; m <= 6; ++m) {
    const auto c = Constellation::pam(m);
    double e = 0.0;
    for (double x : c.points()) e += x * x;
    EXPECT_NEAR(e / static_cast<double>(c.size()), 0.5, 1e-12) << m;
    for (std::size_t i = 1; i < c.size(); ++i) EXPECT_EQ(hamming(c.label(i - 1), c.label(i)), 1);
  }
}
