#pragma once

// Uniform view of every demapper as r -> (L_1, ..., L_m).

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pamdemap/analog_model.hpp"
#include "pamdemap/calibration.hpp"
#include "pamdemap/channel.hpp"
#include "pamdemap/constellation.hpp"

namespace pamdemap {

class LlrSource {
 public:
  virtual ~LlrSource() = default;
  virtual const std::string& id() const = 0;
  virtual void llrs(double r, std::span<double> out) const = 0;
};

class ExactDemapper final : public LlrSource {
 public:
  ExactDemapper(Constellation c, ChannelParams p, std::string id = "exact")
      : c_(std::move(c)), p_(p), id_(std::move(id)) {}
  const std::string& id() const override { return id_; }
  void llrs(double r, std::span<double> out) const override;

 private:
  Constellation c_;
  ChannelParams p_;
  std::string id_;
};

class MaxLogDemapper final : public LlrSource {
 public:
  MaxLogDemapper(Constellation c, ChannelParams p, std::string id = "maxlog")
      : c_(std::move(c)), p_(p), id_(std::move(id)) {}
  const std::string& id() const override { return id_; }
  void llrs(double r, std::span<double> out) const override;

 private:
  Constellation c_;
  ChannelParams p_;
  std::string id_;
};

/// Analog demapper wrapped in its input map and per-bit output maps.
class CalibratedAnalogDemapper final : public LlrSource {
 public:
  CalibratedAnalogDemapper(AnalogDemapper demapper, std::vector<AffineMap> output_maps);
  const std::string& id() const override { return demapper_.id; }
  void llrs(double r, std::span<double> out) const override;

  /// Raw output voltage of bit k for a channel observation r.
  double vout(double r, int k) const;

  const AnalogDemapper& demapper() const noexcept { return demapper_; }
  const std::vector<AffineMap>& output_maps() const noexcept { return maps_; }

 private:
  AnalogDemapper demapper_;
  std::vector<AffineMap> maps_;
};

/// Fits (gamma_k, zeta_k) for every bit against the exact LLRs at p, over the
/// r-grid (calibration_grid(c) when empty).
std::vector<AffineMap> fit_output_maps(const AnalogDemapper& d, const Constellation& c,
                                       const ChannelParams& p,
                                       std::span<const double> grid = {});

CalibratedAnalogDemapper calibrate(AnalogDemapper d, const Constellation& c,
                                   const ChannelParams& p);

}  // namespace pamdemap
