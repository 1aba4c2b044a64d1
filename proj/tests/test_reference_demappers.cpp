#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "pamdemap/reference_demappers.hpp"

using namespace pamdemap;

namespace {

// Straight transcription without any stabilization, valid at moderate inputs.
double naive_exact(double r, int k, const Constellation& c, const ChannelParams& p) {
  long double num = 0.0L, den = 0.0L;
  const long double s2 = 2.0L * p.sigma * p.sigma;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const long double e = std::exp(-(static_cast<long double>(r) - c.point(i)) *
                                   (static_cast<long double>(r) - c.point(i)) / s2);
    (c.bit(i, k) ? num : den) += e;
  }
  return static_cast<double>(std::log(num) - std::log(den));
}

double brute_maxlog(double r, int k, const Constellation& c, const ChannelParams& p) {
  double m0 = std::numeric_limits<double>::infinity(), m1 = m0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double dd = (r - c.point(i)) * (r - c.point(i));
    double& m = c.bit(i, k) ? m1 : m0;
    m = std::min(m, dd);
  }
  return p.snr_linear() * (m0 - m1);
}

}  // namespace

TEST(ExactLlr, ZeroAtOriginForMsb) {
  const auto c = build_pam8();
  for (double s : {-5.0, 0.0, 10.0, 30.0})
    EXPECT_NEAR(exact_llr(0.0, 1, c, ChannelParams::from_snr_db(s)), 0.0, 1e-12);
}

TEST(ExactLlr, EvenSymmetryOfInnerBits) {
  const auto c = build_pam8();
  const auto p = ChannelParams::from_snr_db(10.0);
  EXPECT_NEAR(exact_llr(0.3, 2, c, p), exact_llr(-0.3, 2, c, p), 1e-12);
}

TEST(ExactLlr, MatchesNaiveTranscription) {
  const auto c = build_pam8();
  for (double s : {0.0, 5.0, 10.0}) {
    const auto p = ChannelParams::from_snr_db(s);
    for (int k = 1; k <= 3; ++k)
      for (double r = -1.5; r <= 1.5; r += 0.01)
        EXPECT_NEAR(exact_llr(r, k, c, p), naive_exact(r, k, c, p), 1e-9) << s << " " << k << " " << r;
  }
  const auto p = ChannelParams::from_snr_db(10.0);
  EXPECT_NEAR(exact_llr(7 * c.d(), 1, c, p), naive_exact(7 * c.d(), 1, c, p), 1e-9);
}

TEST(ExactLlr, StableAtExtremes) {
  const auto c = build_pam8();
  const auto p = ChannelParams::from_snr_db(30.0);
  for (double r : {-10.0, -3.0, 0.0, 4.0, 10.0})
    for (int k = 1; k <= 3; ++k) EXPECT_TRUE(std::isfinite(exact_llr(r, k, c, p)));
}

TEST(ExactLlr, AllBitsAgreeWithSingleBit) {
  const auto c = build_pam8();
  const auto p = ChannelParams::from_snr_db(7.0);
  double out[3];
  for (double r = -2.0; r <= 2.0; r += 0.037) {
    exact_llrs(r, c, p, out);
    for (int k = 1; k <= 3; ++k) EXPECT_NEAR(out[k - 1], exact_llr(r, k, c, p), 1e-12);
    maxlog_llrs(r, c, p, out);
    for (int k = 1; k <= 3; ++k) EXPECT_NEAR(out[k - 1], maxlog_llr(r, k, c, p), 1e-12);
  }
}

TEST(MaxLogLlr, HandValues) {
  const auto c = build_pam8();
  const auto p = ChannelParams::from_snr_db(10.0);
  const double d = c.d();
  EXPECT_NEAR(maxlog_llr(0.0, 1, c, p), 0.0, 1e-12);
  EXPECT_NEAR(maxlog_llr(4 * d, 1, c, p), 240.0 / 42.0, 1e-9);
  EXPECT_NEAR(maxlog_llr(4 * d, 1, c, p), brute_maxlog(4 * d, 1, c, p), 1e-12);
  EXPECT_NEAR(maxlog_llr(0.0, 3, c, p), -80.0 / 42.0, 1e-9);
  EXPECT_NEAR(maxlog_llr(0.0, 3, c, p), brute_maxlog(0.0, 3, c, p), 1e-12);
  EXPECT_NEAR(maxlog_llr(0.0, 2, c, p), 10.0 * (25 * d * d - d * d), 1e-9);
  EXPECT_NEAR(maxlog_llr(0.0, 2, c, p), brute_maxlog(0.0, 2, c, p), 1e-12);
}

TEST(MaxLogLlr, MatchesBruteForce) {
  const auto c = build_pam8();
  for (double s : {0.0, 10.0, 20.0}) {
    const auto p = ChannelParams::from_snr_db(s);
    for (int k = 1; k <= 3; ++k)
      for (double r = -2.0; r <= 2.0; r += 0.0123)
        EXPECT_NEAR(maxlog_llr(r, k, c, p), brute_maxlog(r, k, c, p), 1e-12);
  }
}

TEST(MaxLogLlr, PiecewiseLinear) {
  const auto c = build_pam8();
  const auto p = ChannelParams::from_snr_db(10.0);
  const double h = 1e-3;
  for (int k = 1; k <= 3; ++k) {
    int kinks = 0;
    for (double r = -2.0; r <= 2.0; r += h) {
      const double d2 = maxlog_llr(r - h, k, c, p) - 2 * maxlog_llr(r, k, c, p) +
                        maxlog_llr(r + h, k, c, p);
      if (std::abs(d2) > 1e-9) ++kinks;
    }
    // Each kink shows up in at most two neighbouring second differences.
    EXPECT_GT(kinks, 0);
    EXPECT_LE(kinks, 2 * 7);
  }
}

TEST(ReferenceDemappers, Symmetry) {
  const auto c = build_pam8();
  for (double s : {0.0, 10.0}) {
    const auto p = ChannelParams::from_snr_db(s);
    for (double r = 0.0; r <= 2.0; r += 0.0173) {
      EXPECT_NEAR(exact_llr(-r, 1, c, p), -exact_llr(r, 1, c, p), 1e-9);
      EXPECT_NEAR(maxlog_llr(-r, 1, c, p), -maxlog_llr(r, 1, c, p), 1e-9);
      for (int k = 2; k <= 3; ++k) {
        EXPECT_NEAR(exact_llr(-r, k, c, p), exact_llr(r, k, c, p), 1e-9);
        EXPECT_NEAR(maxlog_llr(-r, k, c, p), maxlog_llr(r, k, c, p), 1e-9);
      }
    }
  }
}

TEST(ReferenceDemappers, TailAgreementForMsb) {
  const auto c = build_pam8();
  const auto p = ChannelParams::from_snr_db(10.0);
  const double d = c.d();
  // The gap is dominated by the runner-up point of the far class:
  // log(1 + exp(-SNR * ((r - 5d)^2 - (r - 7d)^2))) at r > 0.
  for (double r : {-20 * d, 20 * d}) {
    const double a = std::abs(r);
    const double lead = std::log1p(std::exp(-p.snr_linear() * ((a - 5 * d) * (a - 5 * d) - (a - 7 * d) * (a - 7 * d))));
    EXPECT_NEAR(std::abs(exact_llr(r, 1, c, p) - maxlog_llr(r, 1, c, p)), lead, 1e-3 * lead);
  }
  for (double r : {-25 * d, 25 * d}) EXPECT_NEAR(exact_llr(r, 1, c, p), maxlog_llr(r, 1, c, p), 1e-6);
  EXPECT_LT(std::abs(exact_llr(40 * d, 1, c, p) - maxlog_llr(40 * d, 1, c, p)),
            std::abs(exact_llr(25 * d, 1, c, p) - maxlog_llr(25 * d, 1, c, p)));
}

TEST(ReferenceDemappers, MsbSignsAgree) {
  const auto c = build_pam8();
  for (double s : {0.0, 10.0}) {
    const auto p = ChannelParams::from_snr_db(s);
    for (double r = -3.0; r <= 3.0; r += 0.001) {
      if (std::abs(r) < 1e-9) continue;
      EXPECT_EQ(exact_llr(r, 1, c, p) > 0, maxlog_llr(r, 1, c, p) > 0) << r;
    }
  }
}

// The exact LLRs of the inner bits cross zero away from the max-log midpoints
// at finite SNR, so hard decisions can differ between the two demappers.
TEST(ReferenceDemappers, InnerBitZeroCrossingsShiftWithSnr) {
  const auto c = build_pam8();
  const auto p = ChannelParams::from_snr_db(0.0);
  const double d = c.d();
  EXPECT_LT(maxlog_llr(5.0 * d, 2, c, p), 0.0);
  EXPECT_GT(exact_llr(5.0 * d, 2, c, p), 0.0);
}
