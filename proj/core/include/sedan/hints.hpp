#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sedan/clause.hpp"
#include "sedan/config.hpp"
#include "sedan/testgen.hpp"
#include "sedan/world.hpp"

namespace sedan {

inline constexpr std::string_view kProcessNames[] = {"simplify", "eliminate-destructors",
                                                     "generalize"};

bool is_process_name(std::string_view name);

struct HintSettings {
  std::set<std::string> do_not;
  std::optional<std::size_t> trials;
  /// Name of a registered backtrack handler.
  std::optional<std::string> backtrack;
  /// Settings carry over to every descendant goal.
  bool replace = false;

  friend bool operator==(const HintSettings&, const HintSettings&) = default;
};

struct UserHint {
  std::string goal_id;
  HintSettings settings;
};

/// First hint whose goal id matches (case-insensitively), else empty
/// settings. Throws Error when a hint names an unknown process.
HintSettings select_hints(std::string_view goal_id, const std::vector<UserHint>& hints);

struct OverrideHint {
  std::string name;
  std::function<HintSettings(const HintSettings&)> transform;
};

/// Left fold in registration order.
HintSettings fold_override_hints(HintSettings settings, const std::vector<OverrideHint>& overrides);

/// Attaches the test-gen-checkpoint backtrack handler with replacement
/// semantics, keeping everything else.
OverrideHint testing_override();

/// Settings a child starts from: do-not and trials carry over always, the
/// handler only under replacement.
HintSettings inherited_settings(const HintSettings& parent);

/// Everything a backtrack handler may look at.
struct BacktrackContext {
  std::string processor;
  std::string goal_id;
  const Clause* goal = nullptr;
  const std::vector<Clause>* children = nullptr;
  /// Id and accumulated type alist of the first child.
  std::string first_child_id;
  TypeAlist first_child_alist;
  const HintSettings* settings = nullptr;
  const World* world = nullptr;
  TestConfig config;
};

struct BacktrackOutcome {
  bool redo = false;
  HintSettings settings;  // valid when redo
  /// Testing evidence behind a redo (first counterexample, printed).
  std::string reason;
  std::optional<TestReport> report;
};

using BacktrackHandler = std::function<std::optional<HintSettings>(const BacktrackContext&,
                                                                   BacktrackOutcome&)>;

/// Names of the registered handlers: test-gen-checkpoint and none.
std::vector<std::string> backtrack_handler_names();
bool is_backtrack_handler(std::string_view name);

/// Runs the named handler. A redo returns settings that extend the goal's
/// current settings; handler errors are swallowed and count as keep, as
/// does a redo that would not grow the do-not set.
BacktrackOutcome apply_backtrack(std::string_view handler, const BacktrackContext& ctx,
                                 std::string* diagnostic = nullptr);

/// On generalize, tests the first child; a counterexample asks for a redo
/// with generalize disabled.
std::optional<HintSettings> test_gen_checkpoint(const BacktrackContext& ctx,
                                                BacktrackOutcome& outcome);

}  // namespace sedan
