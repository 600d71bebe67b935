#include "sedan/config.hpp"

namespace sedan {

std::string_view to_string(TestMode m) {
  switch (m) {
    case TestMode::kRandom: return "random";
    case TestMode::kExhaustive: return "exhaustive";
    case TestMode::kMixed: return "mixed";
  }
  return "random";
}

std::string_view to_string(Distribution d) {
  return d == Distribution::kGeometric ? "geometric" : "uniform";
}

std::optional<TestMode> parse_test_mode(std::string_view s) {
  if (s == "random") return TestMode::kRandom;
  if (s == "exhaustive") return TestMode::kExhaustive;
  if (s == "mixed") return TestMode::kMixed;
  return std::nullopt;
}

std::optional<Distribution> parse_distribution(std::string_view s) {
  if (s == "geometric") return Distribution::kGeometric;
  if (s == "uniform") return Distribution::kUniform;
  return std::nullopt;
}

namespace {

// splitmix64 finalizer
std::uint64_t finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return finalize(seed + 0x9e3779b97f4a7c15ULL * (salt + 1));
}

std::uint64_t mix_seed(std::uint64_t seed, std::string_view salt) {
  // FNV-1a over the salt, so the result does not depend on std::hash.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : salt) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix_seed(seed, h);
}

}  // namespace sedan
