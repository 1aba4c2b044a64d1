#include "pamdemap/constellation.hpp"

#include <cmath>
#include <string>

#include "pamdemap/error.hpp"

namespace pamdemap {

Constellation Constellation::pam(int bits_per_symbol) {
  if (bits_per_symbol < 1 || bits_per_symbol > 16)
    throw DemapError("bits_per_symbol must be in [1, 16], got " + std::to_string(bits_per_symbol));

  Constellation c;
  c.bits_ = bits_per_symbol;
  const std::size_t m = std::size_t{1} << bits_per_symbol;

  // Mean of (2i - m + 1)^2 over i is (m^2 - 1)/3.
  const double mean_sq = (static_cast<double>(m) * static_cast<double>(m) - 1.0) / 3.0;
  c.d_ = std::sqrt(0.5 / mean_sq);

  c.points_.resize(m);
  c.labels_.resize(m);
  c.index_by_label_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    c.points_[i] = (2.0 * static_cast<double>(i) - static_cast<double>(m - 1)) * c.d_;
    const auto gray = static_cast<std::uint32_t>(i ^ (i >> 1));
    c.labels_[i] = gray;
    c.index_by_label_[gray] = i;
  }
  return c;
}

void Constellation::check_bit_position(int k) const {
  if (k < 1 || k > bits_)
    throw DemapError("bit position k must be in [1, " + std::to_string(bits_) + "], got " +
                     std::to_string(k));
}

int Constellation::bit(std::size_t i, int k) const {
  check_bit_position(k);
  return static_cast<int>((labels_.at(i) >> (bits_ - k)) & 1U);
}

std::size_t Constellation::index_of_label(std::uint32_t label) const {
  if (label >= index_by_label_.size()) throw DemapError("label out of range");
  return index_by_label_[label];
}

double Constellation::map_bits(std::span<const int> bits) const {
  if (bits.size() != static_cast<std::size_t>(bits_))
    throw DemapError("expected " + std::to_string(bits_) + " bits, got " +
                     std::to_string(bits.size()));
  std::uint32_t label = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw DemapError("bit values must be 0 or 1");
    label = (label << 1) | static_cast<std::uint32_t>(b);
  }
  return points_[index_by_label_[label]];
}

IndexSet Constellation::index_set(int k, int b) const {
  check_bit_position(k);
  if (b != 0 && b != 1) throw DemapError("bit value must be 0 or 1");
  IndexSet set{k, b, {}};
  set.indices.reserve(points_.size() / 2);
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (bit(i, k) == b) set.indices.push_back(i);
  return set;
}

}  // namespace pamdemap
