#include "pamdemap/reference_demappers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pamdemap/error.hpp"

namespace pamdemap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_out(const Constellation& c, std::span<double> out) {
  if (out.size() != static_cast<std::size_t>(c.bits_per_symbol()))
    throw DemapError("LLR output span has the wrong length");
}

}  // namespace

void exact_llrs(double r, const Constellation& c, const ChannelParams& p, std::span<double> out) {
  check_out(c, out);
  const auto pts = c.points();
  const double scale = 1.0 / (2.0 * p.sigma * p.sigma);

  // Exponents and their per-class maxima; one pass over the points per bit.
  double expo[64];
  const std::size_t m = pts.size();
  if (m > 64) throw DemapError("constellation too large for exact_llrs");
  for (std::size_t i = 0; i < m; ++i) {
    const double e = r - pts[i];
    expo[i] = -e * e * scale;
  }
  for (int k = 1; k <= c.bits_per_symbol(); ++k) {
    double peak[2] = {-kInf, -kInf};
    for (std::size_t i = 0; i < m; ++i) {
      const int b = c.bit(i, k);
      peak[b] = std::max(peak[b], expo[i]);
    }
    double sum[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < m; ++i) {
      const int b = c.bit(i, k);
      sum[b] += std::exp(expo[i] - peak[b]);
    }
    out[k - 1] = (peak[1] + std::log(sum[1])) - (peak[0] + std::log(sum[0]));
  }
}

void maxlog_llrs(double r, const Constellation& c, const ChannelParams& p, std::span<double> out) {
  check_out(c, out);
  const auto pts = c.points();
  const double snr = p.snr_linear();
  for (int k = 1; k <= c.bits_per_symbol(); ++k) {
    double best[2] = {kInf, kInf};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double e = r - pts[i];
      const int b = c.bit(i, k);
      best[b] = std::min(best[b], e * e);
    }
    out[k - 1] = snr * (best[0] - best[1]);
  }
}

double exact_llr(double r, int k, const Constellation& c, const ChannelParams& p) {
  const IndexSet ones = c.index_set(k, 1);
  const IndexSet zeros = c.index_set(k, 0);
  const double scale = 1.0 / (2.0 * p.sigma * p.sigma);
  auto log_sum = [&](const IndexSet& set) {
    double peak = -kInf;
    for (auto i : set.indices) {
      const double e = r - c.point(i);
      peak = std::max(peak, -e * e * scale);
    }
    double s = 0.0;
    for (auto i : set.indices) {
      const double e = r - c.point(i);
      s += std::exp(-e * e * scale - peak);
    }
    return peak + std::log(s);
  };
  return log_sum(ones) - log_sum(zeros);
}

double maxlog_llr(double r, int k, const Constellation& c, const ChannelParams& p) {
  auto nearest_sq = [&](const IndexSet& set) {
    double best = kInf;
    for (auto i : set.indices) {
      const double e = r - c.point(i);
      best = std::min(best, e * e);
    }
    return best;
  };
  return p.snr_linear() * (nearest_sq(c.index_set(k, 0)) - nearest_sq(c.index_set(k, 1)));
}

}  // namespace pamdemap
