#include "pamdemap/analog_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pamdemap/error.hpp"
#include "pamdemap/reference_demappers.hpp"

namespace pamdemap {
namespace {

// ln(1 + e^t) without overflow.
double softplus(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double ramp_coordinate(double vin, const CellSpec& cell) {
  return cell.orientation == Orientation::ramp_below ? cell.vref - vin : vin - cell.vref;
}

double polarity_sign(const CellSpec& cell) {
  return cell.polarity == Polarity::pos ? 1.0 : -1.0;
}

// d(net drop)/d(vin) of the ideal cells just inside a range edge, moving
// inward in direction `inward` (+1 from the lower edge, -1 from the upper).
double ideal_slope_inside(std::span<const CellSpec> cells, double edge, double inward) {
  double slope = 0.0;
  for (const auto& cell : cells) {
    if (cell.gain <= 0.0 || cell.isat_v <= 0.0) continue;
    const double du_dv = cell.orientation == Orientation::ramp_below ? -1.0 : 1.0;
    const double u0 = ramp_coordinate(edge, cell);
    const double cap = cell.isat_v / cell.gain;
    const double tol = 1e-9 * std::max(1.0, std::abs(cap));
    const bool rising = du_dv * inward > 0.0;
    const bool active = rising ? (u0 > -tol && u0 < cap - tol) : (u0 > tol && u0 <= cap + tol);
    if (active) slope += polarity_sign(cell) * cell.gain * du_dv;
  }
  return slope;
}

double net_drop(double vin, std::span<const CellSpec> cells) {
  double drop = 0.0;
  for (const auto& cell : cells) drop += cell_output_v(vin, cell);
  return drop;
}

void check_cell(const CellSpec& cell, double vin_min, double vin_max, const std::string& where) {
  auto fail = [&](const std::string& msg) { throw DemapError(where + ": " + msg); };
  if (!std::isfinite(cell.vref) || !std::isfinite(cell.gain) || !std::isfinite(cell.isat_v) ||
      !std::isfinite(cell.knee_eps))
    fail("cell parameters must be finite");
  if (cell.gain < 0.0) fail("gain must be >= 0");
  if (cell.isat_v < 0.0) fail("isat_v must be >= 0");
  if (cell.knee_eps < 0.0) fail("knee_eps must be >= 0");
  const double tol = 1e-12;
  if (cell.vref < vin_min - tol || cell.vref > vin_max + tol)
    fail("vref " + std::to_string(cell.vref) + " V outside the input range");
}

}  // namespace

double cell_output_v(double vin, const CellSpec& cell) {
  if (!std::isfinite(vin)) throw DemapError("cell_output_v: input voltage is not finite");
  if (cell.gain <= 0.0 || cell.isat_v <= 0.0) return 0.0;

  const double u = ramp_coordinate(vin, cell);
  double out;
  if (cell.knee_eps == 0.0) {
    out = std::min(cell.gain * std::max(u, 0.0), cell.isat_v);
  } else {
    const double eps = cell.knee_eps;
    const double cap = cell.isat_v / cell.gain;
    const double hinge = eps * softplus(u / eps);
    out = cell.gain * (cap - eps * softplus((cap - hinge) / eps));
  }
  return polarity_sign(cell) * out;
}

bool hinge_active(double vin, const CellSpec& cell) {
  return cell.gain > 0.0 && cell.isat_v > 0.0 && ramp_coordinate(vin, cell) > 0.0;
}

// ---------------------------------------------------------------------------
// PwlFunction

void PwlFunction::validate() const {
  if (slopes.size() != breakpoints.size() + 1)
    throw DemapError("PWL function needs exactly one more slope than breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw DemapError("PWL breakpoints must be strictly increasing");
  for (double s : slopes)
    if (!std::isfinite(s)) throw DemapError("PWL slopes must be finite");
  if (!std::isfinite(anchor_v) || !std::isfinite(anchor_value))
    throw DemapError("PWL anchor must be finite");
}

double PwlFunction::slope_at(double v) const {
  const auto seg = std::upper_bound(breakpoints.begin(), breakpoints.end(), v) - breakpoints.begin();
  return slopes[static_cast<std::size_t>(seg)];
}

double PwlFunction::operator()(double v) const {
  // Integrate the slopes from the anchor to v, one segment at a time.
  double x = anchor_v;
  double value = anchor_value;
  if (v >= x) {
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    while (it != breakpoints.end() && *it < v) {
      value += slopes[static_cast<std::size_t>(it - breakpoints.begin())] * (*it - x);
      x = *it;
      ++it;
    }
    return value + slopes[static_cast<std::size_t>(it - breakpoints.begin())] * (v - x);
  }
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
  while (it != breakpoints.begin() && *(it - 1) > v) {
    --it;
    value -= slopes[static_cast<std::size_t>(it - breakpoints.begin()) + 1] * (x - *it);
    x = *it;
  }
  return value - slopes[static_cast<std::size_t>(it - breakpoints.begin())] * (x - v);
}

// ---------------------------------------------------------------------------
// AnalogDemapper

std::span<const CellSpec> AnalogDemapper::cells_for(int k) const {
  if (k < 1 || k > bits())
    throw DemapError("bit position k must be in [1, " + std::to_string(bits()) + "], got " +
                     std::to_string(k));
  return cells[static_cast<std::size_t>(k - 1)];
}

void AnalogDemapper::validate() const {
  if (!(vdd > 0.0) || !std::isfinite(vdd)) throw DemapError("demapper '" + id + "': vdd must be > 0");
  if (!(vin_max > vin_min)) throw DemapError("demapper '" + id + "': need vin_max > vin_min");
  if (vin_max > kMaxInputVoltage + 1e-12)
    throw DemapError("demapper '" + id + "': vin_max exceeds " + std::to_string(kMaxInputVoltage) +
                     " V");
  if (!(input_map.scale > 0.0) || !std::isfinite(input_map.offset))
    throw DemapError("demapper '" + id + "': input map scale must be > 0");
  if (cells.empty()) throw DemapError("demapper '" + id + "': no bit positions");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const std::string where = "demapper '" + id + "' bit " + std::to_string(k + 1);
    if (cells[k].empty()) throw DemapError(where + ": needs at least one cell");
    for (const auto& cell : cells[k]) check_cell(cell, vin_min, vin_max, where);
  }
}

double demap_static(double vin, const AnalogDemapper& d, int k) {
  if (!std::isfinite(vin)) throw DemapError("demap_static: input voltage is not finite");
  const auto cells = d.cells_for(k);
  if (vin < d.vin_min) {
    const double slope = ideal_slope_inside(cells, d.vin_min, 1.0);
    return d.vdd - (net_drop(d.vin_min, cells) + slope * (vin - d.vin_min));
  }
  if (vin > d.vin_max) {
    const double slope = ideal_slope_inside(cells, d.vin_max, -1.0);
    return d.vdd - (net_drop(d.vin_max, cells) + slope * (vin - d.vin_max));
  }
  return d.vdd - net_drop(vin, cells);
}

// ---------------------------------------------------------------------------
// Max-log target

PwlFunction maxlog_pwl_voltage(int k, const Constellation& c, const ChannelParams& p,
                               const AffineMap& input_map) {
  if (input_map.scale == 0.0 || !std::isfinite(input_map.scale) ||
      !std::isfinite(input_map.offset))
    throw DemapError("maxlog_pwl_voltage: input map is degenerate");

  // The nearest point of a class changes at midpoints of class neighbours.
  std::vector<double> kinks;
  for (int b = 0; b <= 1; ++b) {
    const IndexSet set = c.index_set(k, b);
    for (std::size_t j = 1; j < set.indices.size(); ++j)
      kinks.push_back(0.5 * (c.point(set.indices[j - 1]) + c.point(set.indices[j])));
  }
  std::sort(kinks.begin(), kinks.end());
  const double tol = 1e-12 * c.outer();
  kinks.erase(std::unique(kinks.begin(), kinks.end(),
                          [&](double a, double b) { return std::abs(a - b) <= tol; }),
              kinks.end());

  // Slope of SNR * ((r-a0)^2 - (r-a1)^2) inside each segment is 2*SNR*(a1-a0).
  const double snr = p.snr_linear();
  auto slope_near = [&](double r) {
    double best[2] = {std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity()};
    double arg[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double e = (r - c.point(i)) * (r - c.point(i));
      const int b = c.bit(i, k);
      if (e < best[b]) {
        best[b] = e;
        arg[b] = c.point(i);
      }
    }
    return 2.0 * snr * (arg[1] - arg[0]);
  };

  const double pad = 2.0 * c.d();
  std::vector<double> r_breaks;
  std::vector<double> r_slopes;
  for (std::size_t j = 0; j <= kinks.size(); ++j) {
    const double lo = j == 0 ? kinks.empty() ? 0.0 : kinks.front() - pad : kinks[j - 1];
    const double hi = j == kinks.size() ? (kinks.empty() ? 0.0 : kinks.back() + pad) : kinks[j];
    const double s = slope_near(j == 0 ? lo : j == kinks.size() ? hi : 0.5 * (lo + hi));
    if (!r_slopes.empty() && std::abs(s - r_slopes.back()) <= 1e-12 * std::abs(s) + 1e-300) {
      continue;  // not a real kink
    }
    if (j > 0) r_breaks.push_back(kinks[j - 1]);
    r_slopes.push_back(s);
  }

  PwlFunction f;
  const double alpha = input_map.scale;
  for (double r : r_breaks) f.breakpoints.push_back(input_map.apply(r));
  for (double s : r_slopes) f.slopes.push_back(s / alpha);
  if (alpha < 0.0) {
    std::reverse(f.breakpoints.begin(), f.breakpoints.end());
    std::reverse(f.slopes.begin(), f.slopes.end());
  }
  f.anchor_v = input_map.offset;
  f.anchor_value = maxlog_llr(0.0, k, c, p);
  return f;
}

// ---------------------------------------------------------------------------
// Synthesis

SynthesisResult synthesize_cells(const PwlFunction& target, double vdd, double knee_eps,
                                 const SynthesisOptions& options) {
  target.validate();
  const double lo = options.vin_min;
  const double hi = options.vin_max;
  if (!(hi > lo)) throw DemapError("synthesize_cells: need vin_max > vin_min");
  if (!(vdd > 0.0)) throw DemapError("synthesize_cells: vdd must be > 0");
  if (knee_eps < 0.0 || !std::isfinite(knee_eps))
    throw DemapError("synthesize_cells: knee_eps must be >= 0");
  const auto& bps = target.breakpoints;
  for (double b : bps)
    if (b < lo || b > hi)
      throw DemapError("synthesize_cells: breakpoint " + std::to_string(b) +
                       " V lies outside the input range");

  // Split at the breakpoint nearest the centre, or at the centre itself when
  // two breakpoints are equally near. Ramps above the split point up, ramps
  // below it point down.
  const double centre = 0.5 * (lo + hi);
  const double tie_tol = 1e-12 * (hi - lo);
  std::size_t split = bps.size();
  double best = std::numeric_limits<double>::infinity();
  bool tied = false;
  for (std::size_t j = 0; j < bps.size(); ++j) {
    const double dist = std::abs(bps[j] - centre);
    if (dist < best - tie_tol) {
      best = dist;
      split = j;
      tied = false;
    } else if (dist <= best + tie_tol) {
      tied = true;
    }
  }
  if (tied) split = bps.size();
  const double split_v = split == bps.size() ? centre : bps[split];

  std::vector<CellSpec> cells;
  auto add = [&](double vref, double delta, Orientation orientation) {
    if (delta == 0.0) return;
    CellSpec cell;
    cell.vref = vref;
    cell.gain = std::abs(delta);
    cell.isat_v = cell.gain * (orientation == Orientation::ramp_above ? hi - vref : vref - lo);
    cell.knee_eps = knee_eps;
    cell.polarity = delta > 0.0 ? Polarity::pos : Polarity::neg;
    cell.orientation = orientation;
    cells.push_back(cell);
  };

  // f(v) = f(c) + sR (v-c)+ - sL (c-v)+ + sum_{b>c} ds (v-b)+ + sum_{b<c} ds (b-v)+
  std::size_t left_seg = 0;
  if (split == bps.size()) {
    while (left_seg < bps.size() && bps[left_seg] < centre) ++left_seg;
  } else {
    left_seg = split;
  }
  const std::size_t right_seg = split == bps.size() ? left_seg : split + 1;
  add(split_v, target.slopes[right_seg], Orientation::ramp_above);
  add(split_v, -target.slopes[left_seg], Orientation::ramp_below);
  for (std::size_t j = 0; j < bps.size(); ++j) {
    if (j == split) continue;
    const double delta = target.slopes[j + 1] - target.slopes[j];
    add(bps[j], delta, bps[j] > split_v ? Orientation::ramp_above : Orientation::ramp_below);
  }

  SynthesisResult result;
  if (options.isat_ceiling) {
    if (!(*options.isat_ceiling > 0.0))
      throw DemapError("synthesize_cells: isat ceiling must be > 0");
    double largest = 0.0;
    for (const auto& cell : cells) largest = std::max(largest, cell.isat_v);
    if (largest > *options.isat_ceiling) result.scale = *options.isat_ceiling / largest;
  }
  for (auto& cell : cells) {
    cell.gain *= result.scale;
    cell.isat_v *= result.scale;
  }

  // The ideal drop is piecewise linear, so its extremes sit on the edges or
  // breakpoints.
  std::vector<CellSpec> ideal = cells;
  for (auto& cell : ideal) cell.knee_eps = 0.0;
  double dmin = net_drop(lo, ideal), dmax = dmin;
  for (double v : bps) {
    dmin = std::min(dmin, net_drop(v, ideal));
    dmax = std::max(dmax, net_drop(v, ideal));
  }
  dmin = std::min(dmin, net_drop(hi, ideal));
  dmax = std::max(dmax, net_drop(hi, ideal));
  if (dmax - dmin > vdd * (1.0 + 1e-12))
    throw DemapError("synthesize_cells: required output swing " + std::to_string(dmax - dmin) +
                     " V exceeds vdd = " + std::to_string(vdd) + " V");

  result.cells = std::move(cells);
  return result;
}

// ---------------------------------------------------------------------------
// Mode presets

AnalogModeParams AnalogModeParams::ideal() { return {"analog-ideal", 0.0, 100e-6}; }
AnalogModeParams AnalogModeParams::bjt() { return {"analog-bjt", 1e-3, 100e-6}; }
AnalogModeParams AnalogModeParams::mosfet() { return {"analog-mosfet", 25e-3, 10e-6}; }

AnalogDemapper build_analog_demapper(const Constellation& c, const ChannelParams& p,
                                     const AnalogModeParams& mode,
                                     const CircuitConstants& circuit) {
  AnalogDemapper d;
  d.id = mode.id;
  d.vdd = circuit.vdd;
  d.vin_min = circuit.vin_min;
  d.vin_max = circuit.vin_max;
  d.input_map = input_map(c, circuit.map_vmin, circuit.map_vmax);

  SynthesisOptions options{circuit.vin_min, circuit.vin_max, std::nullopt};
  if (mode.ibias_a > 0.0) options.isat_ceiling = mode.ibias_a * circuit.rout_ohm;

  for (int k = 1; k <= c.bits_per_symbol(); ++k) {
    const PwlFunction target = maxlog_pwl_voltage(k, c, p, d.input_map);
    d.cells.push_back(synthesize_cells(target, circuit.vdd, mode.knee_eps, options).cells);
  }
  d.validate();
  return d;
}

}  // namespace pamdemap
