#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pamdemap/dynamics.hpp"
#include "pamdemap/error.hpp"
#include "pamdemap/metrics.hpp"

using namespace pamdemap;

namespace {

struct Fixture {
  Constellation c = build_pam8();
  ChannelParams p = ChannelParams::from_snr_db(10.0);
  AnalogDemapper bjt = build_analog_demapper(c, p, AnalogModeParams::bjt());
  AnalogDemapper mos = build_analog_demapper(c, p, AnalogModeParams::mosfet());
};

// Longest run of consecutive samples (after the first symbol) with no change.
double longest_flat(const TransientTrace& t, double from) {
  double best = 0.0, start = -1.0;
  for (std::size_t i = 1; i < t.vout.size(); ++i) {
    if (t.time[i] <= from) continue;
    if (t.vout[i] == t.vout[i - 1]) {
      if (start < 0.0) start = t.time[i - 1];
      best = std::max(best, t.time[i] - start);
    } else {
      start = -1.0;
    }
  }
  return best;
}

}  // namespace

TEST(DynamicsParams, Validation) {
  EXPECT_NO_THROW(DynamicsParams::bjt().validate());
  EXPECT_THROW((DynamicsParams{0.0, 0.0, 200, 0.95}.validate()), DemapError);
  EXPECT_THROW((DynamicsParams{1e-9, -1.0, 200, 0.95}.validate()), DemapError);
  EXPECT_THROW((DynamicsParams{1e-9, 0.0, 1, 0.95}.validate()), DemapError);
  EXPECT_THROW((DynamicsParams{1e-9, 0.0, 200, 0.0}.validate()), DemapError);
  EXPECT_THROW((DynamicsParams{1e-9, 0.0, 200, 1.5}.validate()), DemapError);
}

TEST(SaturationExit, Examples) {
  Fixture f;
  const CellSpec cell{0.3, 1.0, 1.0, 0.0, Polarity::pos, Orientation::ramp_below};
  const std::vector<CellSpec> one{cell};
  EXPECT_FALSE(detect_saturation_exit(0.4, 0.4, one));
  EXPECT_TRUE(detect_saturation_exit(0.4, 0.2, one));
  EXPECT_FALSE(detect_saturation_exit(0.2, 0.4, one));
  const double d = f.c.d();
  const auto& m = f.bjt.input_map;
  EXPECT_TRUE(detect_saturation_exit(m.apply(3 * d), m.apply(7 * d), f.bjt.cells_for(1)));
  EXPECT_FALSE(detect_saturation_exit(m.apply(-7 * d), m.apply(-5 * d), f.bjt.cells_for(1)));
}

TEST(Transient, Errors) {
  Fixture f;
  EXPECT_THROW(simulate_transient(std::vector<double>{}, 1e8, f.bjt, 1, DynamicsParams::bjt()),
               DemapError);
  EXPECT_THROW(simulate_transient(std::vector<double>{0.1}, 0.0, f.bjt, 1, DynamicsParams::bjt()),
               DemapError);
}

TEST(Transient, SlowRateSettlesToStatic) {
  Fixture f;
  const std::vector<double> seq{-0.9, 0.2, 0.75, -0.3, 0.05, 1.0};
  for (const auto* d : {&f.bjt, &f.mos}) {
    for (int k = 1; k <= 3; ++k) {
      const auto v = sample_outputs(seq, 1e6, *d, k, DynamicsParams::bjt());
      for (std::size_t j = 0; j < seq.size(); ++j)
        EXPECT_NEAR(v[j], demap_static(d->input_map.apply(seq[j]), *d, k), 1e-6);
    }
  }
}

TEST(Transient, StaticConsistencyWithInstantSettling) {
  Fixture f;
  const DynamicsParams instant{1e-18, 0.0, 4, 0.95};
  const std::vector<double> seq{-0.9, 0.2, 0.75, -0.3, 0.05, 1.0, 0.4};
  for (double rate : {1e7, 3.5e8, 1e9}) {
    for (int k = 1; k <= 3; ++k) {
      const auto v = sample_outputs(seq, rate, f.mos, k, instant);
      for (std::size_t j = 0; j < seq.size(); ++j)
        EXPECT_NEAR(v[j], demap_static(f.mos.input_map.apply(seq[j]), f.mos, k), 1e-9);
    }
  }
}

TEST(Transient, TraceShapeAndSampling) {
  Fixture f;
  const std::vector<double> seq{0.1, -0.4, 0.6};
  const auto dp = DynamicsParams::bjt();
  const auto t = simulate_transient(seq, 2e8, f.bjt, 2, dp);
  ASSERT_EQ(t.time.size(), seq.size() * 200 + 1);
  ASSERT_EQ(t.vout.size(), t.time.size());
  const double dt = t.time[1] - t.time[0];
  for (std::size_t i = 1; i < t.time.size(); ++i) EXPECT_NEAR(t.time[i] - t.time[i - 1], dt, 1e-20);
  // Sampling at a grid instant agrees with the trace.
  DynamicsParams on_grid = dp;
  on_grid.sample_fraction = 0.5;
  const auto s = sample_outputs(seq, 2e8, f.bjt, 2, on_grid);
  for (std::size_t j = 0; j < seq.size(); ++j) EXPECT_NEAR(s[j], t.vout[j * 200 + 100], 1e-12);
}

TEST(Transient, Causality) {
  Fixture f;
  const std::vector<double> seq{0.3, 1.0, -0.2, -1.0, 0.5, 0.1};
  const auto full = simulate_transient(seq, 3e8, f.bjt, 1, DynamicsParams::bjt());
  for (std::size_t n = 1; n < seq.size(); ++n) {
    const auto part = simulate_transient(std::span(seq).first(n), 3e8, f.bjt, 1, DynamicsParams::bjt());
    for (std::size_t i = 0; i < part.vout.size(); ++i) EXPECT_EQ(part.vout[i], full.vout[i]);
  }
}

TEST(Transient, PlateauOnSaturationExit) {
  Fixture f;
  const double d = f.c.d();
  const auto dp = DynamicsParams::bjt();
  const double period = 10e-9;
  const double step = period / dp.samples_per_symbol;
  const std::vector<double> up{3 * d, 7 * d};
  const auto t_up = simulate_transient(up, 1.0 / period, f.bjt, 1, dp);
  EXPECT_NEAR(longest_flat(t_up, period), dp.t_plateau, step * 1.0001);
  const std::vector<double> down{-7 * d, -5 * d};
  const auto t_down = simulate_transient(down, 1.0 / period, f.bjt, 1, dp);
  EXPECT_LE(longest_flat(t_down, period), step * 1.0001);
}

TEST(Transient, MosfetSettlesWithinTwoNanoseconds) {
  Fixture f;
  const double d = f.c.d();
  const auto dp = DynamicsParams::mosfet();
  const double period = 10e-9;
  for (const auto& seq : {std::vector<double>{3 * d, 7 * d}, std::vector<double>{-7 * d, -5 * d}}) {
    const auto t = simulate_transient(seq, 1.0 / period, f.mos, 1, dp);
    const double initial = t.vout.front();
    const double final_v = demap_static(f.mos.input_map.apply(seq[1]), f.mos, 1);
    for (std::size_t i = 0; i < t.time.size(); ++i)
      if (t.time[i] >= period + 2e-9 - 1e-15) {
        EXPECT_LE(std::abs(t.vout[i] - final_v), 0.01 * std::abs(final_v - initial));
      }
  }
}

TEST(BerVsRate, MosfetFlatBjtRising) {
  Fixture f;
  const auto bjt = calibrate(f.bjt, f.c, f.p);
  const auto mos = calibrate(f.mos, f.c, f.p);
  const std::vector<double> rates{1e6, 1e8, 2e8, 3.5e8, 5e8};
  const std::size_t n = 20000;
  const auto syms = generate_symbols(f.c, f.p, n, 17);
  const auto mos_static = static_ber(f.c, syms, mos);
  const auto rows_m = ber_vs_rate(rates, f.c, f.p, mos, DynamicsParams::mosfet(), n, 17, 2);
  for (const auto& r : rows_m) {
    if (r.rate_sps > 3.5e8) continue;
    const double se = BerEstimate::from_counts(mos_static.errors, mos_static.bits).std_error();
    EXPECT_LE(std::abs(r.ber - mos_static.ber), 3.0 * std::sqrt(2.0) * se) << r.rate_sps;
  }
  const auto rows_b = ber_vs_rate(rates, f.c, f.p, bjt, DynamicsParams::bjt(), n, 17, 2);
  const auto bjt_static = static_ber(f.c, syms, bjt);
  EXPECT_EQ(rows_b.front().errors, bjt_static.errors);
  for (std::size_t i = 1; i < rows_b.size(); ++i) {
    const double se = BerEstimate::from_counts(rows_b[i].errors, rows_b[i].bits).std_error();
    EXPECT_GE(rows_b[i].ber + 2.0 * se, rows_b[i - 1].ber);
  }
  EXPECT_GT(rows_b.back().ber, bjt_static.ber);
  for (const auto& r : rows_b) {
    EXPECT_GE(r.ber, 0.0);
    EXPECT_LE(r.ber, 0.5);
  }
  EXPECT_THROW(ber_vs_rate(rates, f.c, f.p, mos, DynamicsParams::mosfet(), 100, 1, 1), DemapError);
}

TEST(SymbolStream, Deterministic) {
  Fixture f;
  const auto a = generate_symbols(f.c, f.p, 40000, 3);
  const auto b = generate_symbols(f.c, f.p, 40000, 3);
  EXPECT_EQ(a.r, b.r);
  EXPECT_EQ(a.indices, b.indices);
  const auto prefix = generate_symbols(f.c, f.p, 1000, 3);
  for (std::size_t i = 0; i < 1000; ++i) EXPECT_EQ(prefix.r[i], a.r[i]);
}
