#pragma once

// Unit-energy PAM constellations with binary-reflected Gray labels.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pamdemap {

/// Bit positions are 1-based in the public interface: k = 1 is the MSB of a
/// label, k = bits_per_symbol() is the LSB.
struct IndexSet {
  int k = 1;
  int b = 0;
  std::vector<std::size_t> indices;
};

class Constellation {
 public:
  /// 2^bits_per_symbol equally spaced amplitudes with mean energy 0.5.
  static Constellation pam(int bits_per_symbol);

  int bits_per_symbol() const noexcept { return bits_; }
  std::size_t size() const noexcept { return points_.size(); }
  double d() const noexcept { return d_; }
  double outer() const noexcept { return points_.back(); }

  std::span<const double> points() const noexcept { return points_; }
  double point(std::size_t i) const { return points_.at(i); }

  /// Label word of point i, MSB = bit 1.
  std::uint32_t label(std::size_t i) const { return labels_.at(i); }
  int bit(std::size_t i, int k) const;

  /// Bits are given as {b1, b2, ...}; returns the point with that label.
  double map_bits(std::span<const int> bits) const;
  std::size_t index_of_label(std::uint32_t label) const;

  IndexSet index_set(int k, int b) const;

 private:
  Constellation() = default;
  void check_bit_position(int k) const;

  int bits_ = 0;
  double d_ = 0.0;
  std::vector<double> points_;
  std::vector<std::uint32_t> labels_;
  std::vector<std::size_t> index_by_label_;
};

inline Constellation build_pam8() { return Constellation::pam(3); }

}  // namespace pamdemap
