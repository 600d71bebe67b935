#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sedan {

enum class TestMode { kRandom, kExhaustive, kMixed };
enum class Distribution { kGeometric, kUniform };

/// Parameters of a testing run.
struct TestConfig {
  std::size_t trials = 100;
  TestMode mode = TestMode::kRandom;
  Distribution dist = Distribution::kGeometric;
  std::uint64_t seed = 24;
  /// Per-variable index bound for exhaustive enumeration.
  std::uint64_t exhaustive_bound = 8;
  /// Hard cap on trials for a single goal, whatever `trials` says.
  std::size_t trial_cap = 1000000;
  /// Forces a seed that depends only on the global seed and goal id.
  bool deterministic = false;
  /// Uniform index draws are in [0, 2^uniform_bits).
  unsigned uniform_bits = 24;
  /// Counterexamples / witnesses shown in reports.
  std::size_t display_cap = 3;
};

std::string_view to_string(TestMode m);
std::string_view to_string(Distribution d);
std::optional<TestMode> parse_test_mode(std::string_view s);
std::optional<Distribution> parse_distribution(std::string_view s);

/// Derives a child seed; stable across platforms.
std::uint64_t mix_seed(std::uint64_t seed, std::string_view salt);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace sedan
