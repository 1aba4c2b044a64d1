#include "pamdemap/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pamdemap/error.hpp"
#include "pamdemap/metrics.hpp"
#include "pamdemap/parallel.hpp"
#include "pamdemap/rng.hpp"

namespace pamdemap {

void DynamicsParams::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DemapError("dynamics: tau must be > 0");
  if (!(t_plateau >= 0.0) || !std::isfinite(t_plateau))
    throw DemapError("dynamics: t_plateau must be >= 0");
  if (samples_per_symbol < 2) throw DemapError("dynamics: samples_per_symbol must be >= 2");
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0))
    throw DemapError("dynamics: sample_fraction must be in (0, 1]");
}

bool detect_saturation_exit(double prev_vin, double next_vin, std::span<const CellSpec> cells) {
  for (const auto& cell : cells)
    if (!hinge_active(prev_vin, cell) && hinge_active(next_vin, cell)) return true;
  return false;
}

void SettlingState::start_symbol(double target, bool saturation_exit) {
  target_ = target;
  if (saturation_exit) hold_left_ = std::max(hold_left_, plateau_);
}

void SettlingState::advance(double dt) {
  if (hold_left_ > 0.0) {
    const double h = std::min(hold_left_, dt);
    hold_left_ -= h;
    dt -= h;
  }
  if (dt > 0.0) value_ = target_ + (value_ - target_) * std::exp(-dt / tau_);
}

namespace {

void check_inputs(std::span<const double> symbol_seq, double symbol_rate,
                  const DynamicsParams& dp) {
  if (symbol_seq.empty()) throw DemapError("transient: empty symbol sequence");
  if (!(symbol_rate > 0.0) || !std::isfinite(symbol_rate))
    throw DemapError("transient: symbol rate must be > 0");
  dp.validate();
}

}  // namespace

TransientTrace simulate_transient(std::span<const double> symbol_seq, double symbol_rate,
                                  const AnalogDemapper& d, int k, const DynamicsParams& dp) {
  check_inputs(symbol_seq, symbol_rate, dp);
  const auto cells = d.cells_for(k);
  const double period = 1.0 / symbol_rate;
  const auto sps = static_cast<std::size_t>(dp.samples_per_symbol);
  const double dt = period / static_cast<double>(sps);

  TransientTrace trace;
  trace.time.reserve(symbol_seq.size() * sps + 1);
  trace.vout.reserve(symbol_seq.size() * sps + 1);

  double prev_vin = d.input_map.apply(symbol_seq.front());
  SettlingState state(demap_static(prev_vin, d, k), dp);
  for (std::size_t j = 0; j < symbol_seq.size(); ++j) {
    const double vin = d.input_map.apply(symbol_seq[j]);
    state.start_symbol(demap_static(vin, d, k),
                       j > 0 && detect_saturation_exit(prev_vin, vin, cells));
    prev_vin = vin;
    for (std::size_t i = 0; i < sps; ++i) {
      trace.time.push_back(static_cast<double>(j * sps + i) * dt);
      trace.vout.push_back(state.value());
      state.advance(dt);
    }
  }
  trace.time.push_back(static_cast<double>(symbol_seq.size() * sps) * dt);
  trace.vout.push_back(state.value());
  return trace;
}

std::vector<double> sample_outputs(std::span<const double> symbol_seq, double symbol_rate,
                                   const AnalogDemapper& d, int k, const DynamicsParams& dp) {
  check_inputs(symbol_seq, symbol_rate, dp);
  const auto cells = d.cells_for(k);
  const double period = 1.0 / symbol_rate;
  const double before = dp.sample_fraction * period;
  const double after = period - before;

  std::vector<double> out;
  out.reserve(symbol_seq.size());
  double prev_vin = d.input_map.apply(symbol_seq.front());
  SettlingState state(demap_static(prev_vin, d, k), dp);
  for (std::size_t j = 0; j < symbol_seq.size(); ++j) {
    const double vin = d.input_map.apply(symbol_seq[j]);
    state.start_symbol(demap_static(vin, d, k),
                       j > 0 && detect_saturation_exit(prev_vin, vin, cells));
    prev_vin = vin;
    state.advance(before);
    out.push_back(state.value());
    state.advance(after);
  }
  return out;
}

SymbolStream generate_symbols(const Constellation& c, const ChannelParams& p, std::size_t n,
                              std::uint64_t seed) {
  SymbolStream s;
  s.indices.resize(n);
  s.r.resize(n);
  // Same blocking as the GMI engine, so streams do not depend on scheduling.
  for (std::size_t begin = 0, b = 0; begin < n; begin += kSamplesPerBlock, ++b) {
    RandomStream rng(seed, b);
    const std::size_t end = std::min(n, begin + kSamplesPerBlock);
    for (std::size_t i = begin; i < end; ++i) {
      s.indices[i] = static_cast<std::size_t>(rng.below(c.size()));
      s.r[i] = transmit(c.point(s.indices[i]), p, rng);
    }
  }
  return s;
}

RateRow static_ber(const Constellation& c, const SymbolStream& symbols, const LlrSource& source) {
  const auto m = static_cast<std::size_t>(c.bits_per_symbol());
  std::vector<double> llr(m);
  RateRow row;
  row.demapper_id = source.id();
  for (std::size_t i = 0; i < symbols.r.size(); ++i) {
    source.llrs(symbols.r[i], llr);
    for (std::size_t k = 0; k < m; ++k)
      row.errors += static_cast<std::uint64_t>(
          hard_decide(llr[k]) != c.bit(symbols.indices[i], static_cast<int>(k) + 1));
  }
  row.bits = symbols.r.size() * m;
  row.ber = row.bits ? static_cast<double>(row.errors) / static_cast<double>(row.bits) : 0.0;
  return row;
}

std::vector<RateRow> ber_vs_rate(std::span<const double> rates, const Constellation& c,
                                 const ChannelParams& p, const CalibratedAnalogDemapper& demapper,
                                 const DynamicsParams& dp, std::size_t n_symbols,
                                 std::uint64_t seed, std::size_t workers) {
  if (n_symbols < kMinRateSymbols)
    throw DemapError("ber_vs_rate: need at least " + std::to_string(kMinRateSymbols) +
                     " symbols, got " + std::to_string(n_symbols));
  dp.validate();
  for (double rate : rates)
    if (!(rate > 0.0) || !std::isfinite(rate))
      throw DemapError("ber_vs_rate: symbol rates must be > 0");

  const SymbolStream symbols = generate_symbols(c, p, n_symbols, seed);
  const auto& maps = demapper.output_maps();
  const int m = c.bits_per_symbol();

  return parallel_map(rates.size(), workers, [&](std::size_t i) {
    RateRow row;
    row.rate_sps = rates[i];
    row.demapper_id = demapper.id();
    for (int k = 1; k <= m; ++k) {
      const auto v = sample_outputs(symbols.r, rates[i], demapper.demapper(), k, dp);
      for (std::size_t j = 0; j < v.size(); ++j) {
        const double llr = maps[static_cast<std::size_t>(k - 1)].apply(v[j]);
        row.errors += static_cast<std::uint64_t>(hard_decide(llr) != c.bit(symbols.indices[j], k));
      }
    }
    row.bits = n_symbols * static_cast<std::size_t>(m);
    row.ber = static_cast<double>(row.errors) / static_cast<double>(row.bits);
    return row;
  });
}

}  // namespace pamdemap
