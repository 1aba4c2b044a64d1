#include "pamdemap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pamdemap/error.hpp"
#include "pamdemap/parallel.hpp"
#include "pamdemap/rng.hpp"

namespace pamdemap {

double log2_1p_exp(double x) noexcept {
  constexpr double inv_ln2 = 1.0 / std::numbers::ln2;
  if (x > 36.0) return x * inv_ln2;  // log1p(e^-x) below double resolution
  if (x > 0.0) return (x + std::log1p(std::exp(-x))) * inv_ln2;
  return std::log1p(std::exp(x)) * inv_ln2;
}

double mi_bitwise(std::span<const BitLlr> samples) {
  if (samples.empty()) throw DemapError("mi_bitwise: no samples");
  bool seen[2] = {false, false};
  double loss = 0.0;
  for (const auto& s : samples) {
    if (s.bit != 0 && s.bit != 1) throw DemapError("mi_bitwise: bit values must be 0 or 1");
    seen[s.bit] = true;
    loss += mi_loss(s.bit, s.llr);
  }
  if (!seen[0] || !seen[1]) throw DemapError("mi_bitwise: both bit values must be represented");
  return 1.0 - loss / static_cast<double>(samples.size());
}

double gmi(std::span<const double> per_bit_mi) {
  if (per_bit_mi.empty()) throw DemapError("gmi: no bit positions");
  double s = 0.0;
  for (double v : per_bit_mi) s += v;
  return s / static_cast<double>(per_bit_mi.size());
}

double rate_penalty(double gmi_approx, double gmi_exact) {
  if (!(gmi_exact > 0.0)) throw DemapError("rate_penalty: reference GMI must be > 0");
  return 100.0 * (gmi_exact - gmi_approx) / gmi_exact;
}

double energy_per_bit(double power_w, double symbol_rate, int bits_per_symbol) {
  if (!(power_w > 0.0) || !(symbol_rate > 0.0) || bits_per_symbol <= 0)
    throw DemapError("energy_per_bit: inputs must be positive");
  return power_w / (symbol_rate * static_cast<double>(bits_per_symbol));
}

BerEstimate BerEstimate::from_counts(std::uint64_t errors, std::uint64_t bits) {
  if (bits == 0) throw DemapError("BER needs at least one bit");
  if (errors > bits) throw DemapError("BER error count exceeds bit count");
  return {errors, bits, static_cast<double>(errors) / static_cast<double>(bits)};
}

double BerEstimate::std_error() const {
  return std::sqrt(std::max(ber * (1.0 - ber), 0.0) / static_cast<double>(bits));
}

std::size_t PairedEvaluation::index_of(const std::string& id) const {
  const auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) throw DemapError("no demapper with id '" + id + "' in the evaluation");
  return static_cast<std::size_t>(it - ids.begin());
}

double PairedEvaluation::difference_std_error(std::size_t a, std::size_t b) const {
  const double n = static_cast<double>(gmi.at(a).n_samples);
  // gmi = 1 - E[u]; var(u_a - u_b) = E[(u_a-u_b)^2] - (E[u_a]-E[u_b])^2.
  const double ma = 1.0 - gmi[a].gmi;
  const double mb = 1.0 - gmi[b].gmi;
  const double m2 = loss_cross_moment[a][a] - 2.0 * loss_cross_moment[a][b] +
                    loss_cross_moment[b][b];
  const double var = std::max(m2 - (ma - mb) * (ma - mb), 0.0);
  return std::sqrt(var / n);
}

namespace {

struct Tally {
  // Per source: sum of loss per bit, cross sums of u, errors per bit.
  std::vector<double> bit_loss;        // [s * m + k]
  std::vector<double> cross;           // [s * S + t]
  std::vector<std::uint64_t> errors;   // [s * m + k]
  std::vector<std::uint64_t> bit_ones; // [k] count of b_k = 1
};

}  // namespace

PairedEvaluation evaluate_paired(const Constellation& c, const ChannelParams& p,
                                 std::span<const LlrSource* const> sources, std::uint64_t n,
                                 std::uint64_t seed, std::size_t workers) {
  if (sources.empty()) throw DemapError("evaluate_paired: no demappers");
  if (n == 0) throw DemapError("evaluate_paired: sample count must be > 0");
  const std::size_t S = sources.size();
  const std::size_t m = static_cast<std::size_t>(c.bits_per_symbol());
  const std::size_t blocks = (n + kSamplesPerBlock - 1) / kSamplesPerBlock;

  auto run_block = [&](std::size_t b) {
    Tally t;
    t.bit_loss.assign(S * m, 0.0);
    t.cross.assign(S * S, 0.0);
    t.errors.assign(S * m, 0);
    t.bit_ones.assign(m, 0);
    RandomStream rng(seed, b);
    const std::uint64_t begin = b * kSamplesPerBlock;
    const std::uint64_t end = std::min<std::uint64_t>(n, begin + kSamplesPerBlock);
    std::vector<double> llr(m), u(S);
    std::vector<int> bits(m);
    for (std::uint64_t i = begin; i < end; ++i) {
      const auto idx = static_cast<std::size_t>(rng.below(c.size()));
      const double r = transmit(c.point(idx), p, rng);
      for (std::size_t k = 0; k < m; ++k) {
        bits[k] = c.bit(idx, static_cast<int>(k) + 1);
        t.bit_ones[k] += static_cast<std::uint64_t>(bits[k]);
      }
      for (std::size_t s = 0; s < S; ++s) {
        sources[s]->llrs(r, llr);
        double avg = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          const double loss = mi_loss(bits[k], llr[k]);
          t.bit_loss[s * m + k] += loss;
          avg += loss;
          t.errors[s * m + k] += static_cast<std::uint64_t>(hard_decide(llr[k]) != bits[k]);
        }
        u[s] = avg / static_cast<double>(m);
      }
      for (std::size_t s = 0; s < S; ++s)
        for (std::size_t q = s; q < S; ++q) t.cross[s * S + q] += u[s] * u[q];
    }
    return t;
  };

  const auto tallies = parallel_map(blocks, workers, run_block);

  Tally total;
  total.bit_loss.assign(S * m, 0.0);
  total.cross.assign(S * S, 0.0);
  total.errors.assign(S * m, 0);
  total.bit_ones.assign(m, 0);
  for (const auto& t : tallies) {
    for (std::size_t i = 0; i < total.bit_loss.size(); ++i) total.bit_loss[i] += t.bit_loss[i];
    for (std::size_t i = 0; i < total.cross.size(); ++i) total.cross[i] += t.cross[i];
    for (std::size_t i = 0; i < total.errors.size(); ++i) total.errors[i] += t.errors[i];
    for (std::size_t i = 0; i < m; ++i) total.bit_ones[i] += t.bit_ones[i];
  }
  for (std::size_t k = 0; k < m; ++k)
    if (total.bit_ones[k] == 0 || total.bit_ones[k] == n)
      throw DemapError("evaluate_paired: too few samples to see both values of every bit");

  const double nn = static_cast<double>(n);
  PairedEvaluation ev;
  ev.loss_cross_moment.assign(S, std::vector<double>(S, 0.0));
  for (std::size_t s = 0; s < S; ++s)
    for (std::size_t q = s; q < S; ++q)
      ev.loss_cross_moment[s][q] = ev.loss_cross_moment[q][s] = total.cross[s * S + q] / nn;

  for (std::size_t s = 0; s < S; ++s) {
    ev.ids.push_back(sources[s]->id());
    GmiEstimate g;
    g.n_samples = n;
    std::uint64_t errs = 0;
    std::vector<std::uint64_t> per_bit_errs;
    for (std::size_t k = 0; k < m; ++k) {
      g.per_bit_mi.push_back(1.0 - total.bit_loss[s * m + k] / nn);
      errs += total.errors[s * m + k];
      per_bit_errs.push_back(total.errors[s * m + k]);
    }
    g.gmi = gmi(g.per_bit_mi);
    const double mean_u = 1.0 - g.gmi;
    const double var_u = std::max(ev.loss_cross_moment[s][s] - mean_u * mean_u, 0.0);
    g.std_error = std::sqrt(var_u / nn);
    ev.gmi.push_back(std::move(g));
    ev.ber.push_back(BerEstimate::from_counts(errs, n * m));
    ev.bit_errors.push_back(std::move(per_bit_errs));
  }
  return ev;
}

}  // namespace pamdemap
