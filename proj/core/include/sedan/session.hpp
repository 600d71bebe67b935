#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sedan/config.hpp"
#include "sedan/error.hpp"
#include "sedan/forms.hpp"
#include "sedan/testgen.hpp"
#include "sedan/waterfall.hpp"
#include "sedan/world.hpp"

namespace sedan {

struct SessionFlags {
  /// seed, trials, mode and dist seed the world's testing defaults.
  TestConfig test;
  bool backtrack = true;
  std::size_t max_rewrite_depth = 8;
  /// Unset: on for thm, off for test?.
  std::optional<bool> deterministic;
};

enum class FormStatus { kAdmitted, kProved, kFailed, kFalsified, kPassed, kError };

std::string_view to_string(FormStatus s);

struct FormOutcome {
  std::size_t index = 0;
  std::string file;
  SourcePos pos;
  Form::Kind kind = Form::Kind::kDefun;
  /// Defined name or printed conjecture.
  std::string label;
  FormStatus status = FormStatus::kAdmitted;
  std::string message;
  std::uint64_t seed = 0;
  std::optional<TestReport> test;
  std::optional<ProofResult> proof;
  /// Rendered narrative for test? and thm.
  std::string text;
};

struct SessionOutcome {
  SessionFlags flags;
  std::vector<FormOutcome> forms;
  /// Set when processing stopped early.
  std::optional<std::string> error;
  int exit_code = 0;
  World world;
};

/// Admits the forms of a file in order into a fresh world, running every
/// test? and thm. Stops at the first error.
SessionOutcome process_file(const std::string& path, const SessionFlags& flags);
/// Same for in-memory text; includes resolve against `base_dir`.
SessionOutcome process_text(std::string_view text, const SessionFlags& flags,
                            const std::string& base_dir = ".", const std::string& file = "<input>");

/// Human-readable narrative of the session.
std::string render_text(const SessionOutcome& outcome);
/// Single JSON document; byte-identical for identical inputs and flags.
std::string render_structured(const SessionOutcome& outcome);

}  // namespace sedan
