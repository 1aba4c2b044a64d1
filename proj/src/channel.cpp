#include "pamdemap/channel.hpp"

#include <cmath>
#include <string>

#include "pamdemap/error.hpp"

namespace pamdemap {

ChannelParams ChannelParams::from_snr_db(double snr_db) {
  if (!std::isfinite(snr_db)) throw DemapError("snr_db must be finite");
  const double snr = std::pow(10.0, snr_db / 10.0);
  const double sigma = std::sqrt(1.0 / (2.0 * snr));
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw DemapError("snr_db " + std::to_string(snr_db) + " gives a degenerate noise level");
  return {snr_db, sigma};
}

}  // namespace pamdemap
