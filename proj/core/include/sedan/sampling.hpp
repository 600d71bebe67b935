#pragma once

#include <cstdint>
#include <random>

#include "sedan/config.hpp"

namespace sedan {

/// Seeded generator. mt19937_64 output is specified bit-for-bit by the
/// standard, and all derived draws below use only raw output bits, so
/// sequences are identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  bool coin() { return (gen_() >> 63) != 0; }
  /// Uniform in [0, 2^bits); bits in [0, 64].
  std::uint64_t bits(unsigned bits);
  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 gen_;
};

/// Geometric: bit width g counts failures before the first success of a
/// trial that succeeds with probability 2^-kGeometricStopBits (capped at
/// 30), then the index is uniform in [0, 2^g).
inline constexpr unsigned kGeometricWidthCap = 30;
inline constexpr unsigned kGeometricStopBits = 4;
std::uint64_t draw_geometric_index(Rng& rng);
/// Uniform in [0, 2^uniform_bits).
std::uint64_t draw_uniform_index(Rng& rng, unsigned uniform_bits);
std::uint64_t draw_index(Rng& rng, Distribution dist, unsigned uniform_bits);

}  // namespace sedan
