#pragma once

// Transient behaviour of the analog demapper under a piecewise-constant input
// (one level per symbol): single-pole settling toward the static response,
// plus a hold whenever a cell of the bit leaves its cut-off region and its
// bipolar mirror must first come out of saturation.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pamdemap/analog_model.hpp"
#include "pamdemap/channel.hpp"
#include "pamdemap/llr_source.hpp"

namespace pamdemap {

struct DynamicsParams {
  double tau = 0.4e-9;        ///< settling time constant, seconds
  double t_plateau = 0.0;     ///< hold after a saturation exit, seconds
  int samples_per_symbol = 200;
  double sample_fraction = 0.95;

  static DynamicsParams mosfet() { return {0.4e-9, 0.0, 200, 0.95}; }
  static DynamicsParams bjt() { return {0.4e-9, 2.0e-9, 200, 0.95}; }
  void validate() const;
};

struct TransientTrace {
  std::vector<double> time;  ///< seconds, uniform
  std::vector<double> vout;  ///< volts
};

/// True iff some cell is cut off (ideal hinge inactive) at prev_vin and
/// conducting at next_vin.
bool detect_saturation_exit(double prev_vin, double next_vin, std::span<const CellSpec> cells);

/// Output state of one bit position. Advances exactly (no time-step error):
/// a pending hold is consumed first, then the output relaxes exponentially.
class SettlingState {
 public:
  SettlingState(double initial, const DynamicsParams& params)
      : value_(initial), target_(initial), tau_(params.tau), plateau_(params.t_plateau) {}

  void start_symbol(double target, bool saturation_exit);
  void advance(double dt);
  double value() const noexcept { return value_; }

 private:
  double value_;
  double target_;
  double hold_left_ = 0.0;
  double tau_;
  double plateau_;
};

/// Trace of bit k for a sequence of channel observations held for one symbol
/// period each. The output starts settled at the first symbol's level.
TransientTrace simulate_transient(std::span<const double> symbol_seq, double symbol_rate,
                                  const AnalogDemapper& d, int k, const DynamicsParams& dp);

/// Output of bit k sampled at sample_fraction of every symbol period.
std::vector<double> sample_outputs(std::span<const double> symbol_seq, double symbol_rate,
                                   const AnalogDemapper& d, int k, const DynamicsParams& dp);

/// Transmitted symbol indices and channel observations.
struct SymbolStream {
  std::vector<std::size_t> indices;
  std::vector<double> r;
};

/// One noise draw per symbol. Deterministic in (seed, n).
SymbolStream generate_symbols(const Constellation& c, const ChannelParams& p, std::size_t n,
                              std::uint64_t seed);

struct RateRow {
  double rate_sps = 0.0;
  std::string demapper_id;
  std::uint64_t errors = 0;
  std::uint64_t bits = 0;
  double ber = 0.0;
};

inline constexpr std::size_t kMinRateSymbols = 10000;

/// Hard-decision BER of the calibrated analog demapper driven through the
/// transient model, one row per symbol rate, on a common symbol stream.
std::vector<RateRow> ber_vs_rate(std::span<const double> rates, const Constellation& c,
                                 const ChannelParams& p, const CalibratedAnalogDemapper& demapper,
                                 const DynamicsParams& dp, std::size_t n_symbols,
                                 std::uint64_t seed, std::size_t workers = 0);

/// Hard-decision error count of any LLR source on a symbol stream.
RateRow static_ber(const Constellation& c, const SymbolStream& symbols, const LlrSource& source);

}  // namespace pamdemap
