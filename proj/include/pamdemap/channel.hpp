#pragma once

// Real AWGN channel, SNR = 1 / (2 sigma^2).

#include "pamdemap/rng.hpp"

namespace pamdemap {

struct ChannelParams {
  double snr_db = 0.0;
  double sigma = 0.0;

  static ChannelParams from_snr_db(double snr_db);

  double snr_linear() const noexcept { return 1.0 / (2.0 * sigma * sigma); }
};

/// r = x + n, n ~ N(0, sigma^2), drawn from `rng`.
inline double transmit(double x, const ChannelParams& p, RandomStream& rng) {
  return x + p.sigma * rng.gaussian();
}

}  // namespace pamdemap
