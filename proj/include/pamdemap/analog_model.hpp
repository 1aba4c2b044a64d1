#pragma once

// Behavioral model of the current-steering demapper cell and of the
// differential combination of cells into one output per bit position.
//
// All currents are carried as output-voltage drops I * R_out, so every
// quantity here is in volts. A cell is a hinge: zero on one side of its
// reference voltage, a linear ramp on the other, clipped at isat_v.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pamdemap/calibration.hpp"
#include "pamdemap/channel.hpp"
#include "pamdemap/constellation.hpp"

namespace pamdemap {

enum class Polarity { pos, neg };

/// ramp_below: output grows as vin drops below vref, zero above it.
/// ramp_above: the mirror image (vin and vref swapped at the differential pair).
enum class Orientation { ramp_below, ramp_above };

struct CellSpec {
  double vref = 0.0;
  double gain = 0.0;      ///< output volts per input volt on the ramp
  double isat_v = 0.0;    ///< saturation ceiling I_bias * R_out
  double knee_eps = 0.0;  ///< smooth-hinge width in input volts; 0 is an ideal corner
  Polarity polarity = Polarity::pos;
  Orientation orientation = Orientation::ramp_below;

  bool operator==(const CellSpec&) const = default;
};

/// Signed contribution of one cell to the output drop (pos cells positive).
double cell_output_v(double vin, const CellSpec& cell);

/// True when the ideal (corner-free) ramp of the cell carries current at vin.
/// False is the region where the cell's output mirror is cut off.
bool hinge_active(double vin, const CellSpec& cell);

/// Continuous piecewise-linear function. slopes has one more entry than
/// breakpoints; slopes.front() and slopes.back() are the unbounded end segments.
struct PwlFunction {
  std::vector<double> breakpoints;
  std::vector<double> slopes;
  double anchor_v = 0.0;
  double anchor_value = 0.0;

  double operator()(double v) const;
  double slope_at(double v) const;  ///< right derivative
  void validate() const;
};

struct AnalogDemapper {
  std::string id = "analog";
  double vdd = 1.6;
  double vin_min = 0.0;
  double vin_max = 0.64;
  AffineMap input_map;
  std::vector<std::vector<CellSpec>> cells;  ///< index k-1 holds the cells of bit k

  int bits() const noexcept { return static_cast<int>(cells.size()); }
  std::span<const CellSpec> cells_for(int k) const;
  void validate() const;
};

/// Upper limit of the input swing that keeps the input pair in saturation.
inline constexpr double kMaxInputVoltage = 0.64;

/// V_out,k = vdd - (sum_pos - sum_neg). Inputs outside [vin_min, vin_max] are
/// extrapolated linearly with the ideal slope at the nearest range edge.
double demap_static(double vin, const AnalogDemapper& d, int k);

/// Max-log LLR of bit k seen through the inverse input map, as an exact PWL
/// function of the input voltage.
PwlFunction maxlog_pwl_voltage(int k, const Constellation& c, const ChannelParams& p,
                               const AffineMap& input_map);

struct SynthesisOptions {
  double vin_min = 0.0;
  double vin_max = kMaxInputVoltage;
  /// Largest isat_v any cell may have. When set, all gains are scaled down
  /// uniformly until every cell fits; when empty, gains are used as given.
  std::optional<double> isat_ceiling;
};

struct SynthesisResult {
  std::vector<CellSpec> cells;
  double scale = 1.0;  ///< uniform gain factor applied to the target slopes
};

/// Decomposes a PWL target into hinge cells so that, with knee_eps = 0,
///   vdd - demap(v) = scale * (target(v) - target(c)) + const   on [vin_min, vin_max].
/// One cell per slope change plus one full-range cell for the slope at the
/// centre; every cell saturates exactly at the range edge it ramps toward.
SynthesisResult synthesize_cells(const PwlFunction& target, double vdd, double knee_eps,
                                 const SynthesisOptions& options = {});

/// Circuit constants shared by the analog modes.
struct CircuitConstants {
  double vdd = 1.6;
  double rout_ohm = 3000.0;
  double vin_min = 0.0;
  double vin_max = kMaxInputVoltage;
  double map_vmin = 0.04;  ///< image of the lowest constellation point
  double map_vmax = 0.60;  ///< image of the highest constellation point
};

struct AnalogModeParams {
  std::string id;
  double knee_eps = 0.0;
  double ibias_a = 0.0;  ///< 0 disables the bias ceiling

  static AnalogModeParams ideal();
  static AnalogModeParams bjt();
  static AnalogModeParams mosfet();
};

/// Synthesizes all bit positions from the max-log targets at `p`.
AnalogDemapper build_analog_demapper(const Constellation& c, const ChannelParams& p,
                                     const AnalogModeParams& mode,
                                     const CircuitConstants& circuit = {});

}  // namespace pamdemap
