#include "sedan/sampling.hpp"

namespace sedan {

std::uint64_t Rng::bits(unsigned bits) {
  if (bits == 0) return 0;
  if (bits >= 64) return gen_();
  return gen_() >> (64 - bits);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % bound;
}

std::uint64_t draw_geometric_index(Rng& rng) {
  unsigned width = 0;
  while (width < kGeometricWidthCap && rng.bits(kGeometricStopBits) != 0) ++width;
  return rng.bits(width);
}

std::uint64_t draw_uniform_index(Rng& rng, unsigned uniform_bits) {
  return rng.bits(uniform_bits);
}

std::uint64_t draw_index(Rng& rng, Distribution dist, unsigned uniform_bits) {
  return dist == Distribution::kGeometric ? draw_geometric_index(rng)
                                          : draw_uniform_index(rng, uniform_bits);
}

}  // namespace sedan
