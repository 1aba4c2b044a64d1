#pragma once

// Bit-wise mutual information, GMI, rate penalty, hard-decision BER and
// energy accounting, plus the paired Monte Carlo engine that produces them.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pamdemap/channel.hpp"
#include "pamdemap/constellation.hpp"
#include "pamdemap/llr_source.hpp"

namespace pamdemap {

struct BitLlr {
  int bit = 0;
  double llr = 0.0;
};

/// log2(1 + e^x), linear asymptote for large x.
double log2_1p_exp(double x) noexcept;

/// Per-sample loss term log2(1 + exp((-1)^b L)).
inline double mi_loss(int bit, double llr) noexcept { return log2_1p_exp(bit ? -llr : llr); }

/// 1 - mean of mi_loss over the samples. Needs both bit values present.
double mi_bitwise(std::span<const BitLlr> samples);

double gmi(std::span<const double> per_bit_mi);

/// 100 * (exact - approx) / exact; exact must be > 0.
double rate_penalty(double gmi_approx, double gmi_exact);

/// 1 iff llr >= 0.
inline int hard_decide(double llr) noexcept { return llr >= 0.0 ? 1 : 0; }

/// Joules per bit.
double energy_per_bit(double power_w, double symbol_rate, int bits_per_symbol);

struct GmiEstimate {
  std::vector<double> per_bit_mi;
  double gmi = 0.0;
  double std_error = 0.0;  ///< of gmi, from the per-sample spread of the bit-averaged loss
  std::uint64_t n_samples = 0;
};

struct BerEstimate {
  std::uint64_t errors = 0;
  std::uint64_t bits = 0;
  double ber = 0.0;

  static BerEstimate from_counts(std::uint64_t errors, std::uint64_t bits);
  double std_error() const;  ///< binomial
};

/// Results of running several demappers over one shared set of noisy samples.
struct PairedEvaluation {
  std::vector<std::string> ids;
  std::vector<GmiEstimate> gmi;
  std::vector<BerEstimate> ber;
  std::vector<std::vector<std::uint64_t>> bit_errors;  ///< [source][k-1]

  std::size_t index_of(const std::string& id) const;
  /// Standard error of gmi[a] - gmi[b] under the pairing.
  double difference_std_error(std::size_t a, std::size_t b) const;

  // Second moments of the per-sample bit-averaged loss, E[u_a u_b].
  std::vector<std::vector<double>> loss_cross_moment;
};

/// Draws n symbols uniformly, passes them through the channel, and feeds the
/// same observations to every source. Sample block b uses stream (seed, b), so
/// the result is identical for any worker count.
PairedEvaluation evaluate_paired(const Constellation& c, const ChannelParams& p,
                                 std::span<const LlrSource* const> sources, std::uint64_t n,
                                 std::uint64_t seed, std::size_t workers = 0);

}  // namespace pamdemap
