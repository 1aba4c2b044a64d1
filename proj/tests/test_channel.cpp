#include <gtest/gtest.h>

#include <cmath>

#include "pamdemap/channel.hpp"
#include "pamdemap/error.hpp"
#include "pamdemap/rng.hpp"

using namespace pamdemap;

TEST(Channel, SigmaFromSnr) {
  EXPECT_NEAR(ChannelParams::from_snr_db(0.0).sigma, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(ChannelParams::from_snr_db(10.0).sigma, std::sqrt(0.05), 1e-12);
  for (double s = -10.0; s <= 30.0; s += 0.5) {
    const auto p = ChannelParams::from_snr_db(s);
    EXPECT_NEAR(p.sigma, std::sqrt(1.0 / (2.0 * std::pow(10.0, s / 10.0))), 1e-12);
    EXPECT_NEAR(p.snr_linear(), std::pow(10.0, s / 10.0), 1e-9 * p.snr_linear());
    EXPECT_GT(ChannelParams::from_snr_db(s - 0.5).sigma, p.sigma);
  }
  EXPECT_THROW(ChannelParams::from_snr_db(NAN), DemapError);
  EXPECT_THROW(ChannelParams::from_snr_db(INFINITY), DemapError);
}

TEST(Channel, NoiseMoments) {
  const auto p = ChannelParams::from_snr_db(10.0);
  RandomStream rng(2024, 0);
  const int n = 1'000'000;
  const double x = 0.3;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = transmit(x, p, rng) - x;
    sum += e;
    sq += e * e;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_LT(std::abs(mean), 4.0 * p.sigma / 1000.0);
  EXPECT_NEAR(var, p.sigma * p.sigma, 0.01 * p.sigma * p.sigma);
}

TEST(Channel, TinyNoiseLimit) {
  ChannelParams p{300.0, 1e-15};
  RandomStream rng(1, 0);
  EXPECT_NEAR(transmit(0.25, p, rng), 0.25, 1e-12);
}

TEST(Channel, StreamsAreReproducibleAndDistinct) {
  RandomStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const double va = a.gaussian();
    EXPECT_EQ(va, b.gaussian());
    differs_c |= va != c.gaussian();
    differs_d |= va != d.gaussian();
  }
  EXPECT_TRUE(differs_c);
  EXPECT_TRUE(differs_d);
}

TEST(Channel, UniformIntegers) {
  RandomStream rng(11, 0);
  int counts[8] = {};
  const int n = 800'000;
  for (int i = 0; i < n; ++i) ++counts[rng.below(8)];
  for (int c : counts) EXPECT_NEAR(c, n / 8, 5.0 * std::sqrt(n / 8.0));
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}
