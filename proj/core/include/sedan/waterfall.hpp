#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sedan/clause.hpp"
#include "sedan/config.hpp"
#include "sedan/hints.hpp"
#include "sedan/history.hpp"
#include "sedan/testgen.hpp"
#include "sedan/world.hpp"

namespace sedan {

/// Hierarchical goal label: "Goal", "Goal'", "Subgoal 3'4'", "Subgoal 2.1".
struct GoalId {
  std::string base = "Goal";
  std::size_t primes = 0;

  std::string str() const;
  /// Id of the single child of a process.
  GoalId primed() const;
  /// Id of child `k` (1-based, counted from the last) of a case split.
  GoalId subgoal(std::size_t k) const;
};

struct WaterfallConfig {
  TestConfig test;
  /// Installs the testing override (backtrack on refuted generalizations).
  bool backtrack = true;
  /// Goals processed before the rest go to the pool untouched.
  std::size_t goal_budget = 300;
  bool test_checkpoints = true;
  /// Alternative values tried for each lifted don't-care.
  std::size_t spot_checks = 3;
};

/// One application of a proof process, kept or discarded.
struct ProcessLogEntry {
  std::string goal_id;
  std::string process;
  Clause parent;
  TypeAlist parent_alist;
  std::vector<std::string> child_ids;
  std::vector<Clause> children;
  /// Per child: child variable -> term over parent variables.
  std::vector<std::map<std::string, Term>> forward_maps;
  std::vector<std::string> notes;
  bool kept = true;
  /// Why a backtrack handler discarded the children.
  std::string discard_reason;
  std::optional<TestReport> backtrack_report;
  /// do-not set the goal re-entered with after a discard.
  std::vector<std::string> redo_do_not;
};

enum class GoalStatus { kProved, kReplaced, kCheckpoint, kBudget };

std::string_view to_string(GoalStatus s);

struct GoalRecord {
  std::string id;
  std::optional<std::string> parent;
  std::string process;
  Clause clause;
  HintSettings settings;
  GoalStatus status = GoalStatus::kCheckpoint;
  std::size_t redos = 0;
};

enum class LiftStatus { kVerified, kSpurious, kSubgoalLocal };

std::string_view to_string(LiftStatus s);

struct LiftedCounterexample {
  Binding local;
  LiftStatus status = LiftStatus::kSubgoalLocal;
  LiftResult lift;
  /// Lift failure or verification notes.
  std::string note;
  /// Every spot-checked don't-care alternative still falsified the goal.
  bool dont_care_checked = true;
};

struct CheckpointResult {
  std::string goal_id;
  Clause clause;
  TypeAlist alist;
  std::optional<TestReport> report;
  std::vector<LiftedCounterexample> lifted;
};

struct ProofResult {
  bool proved = false;
  /// Some verified top-level counterexample exists.
  bool falsified = false;
  Term conjecture;
  std::vector<std::string> top_vars;
  std::uint64_t seed = 0;
  std::vector<GoalRecord> goals;
  std::vector<ProcessLogEntry> log;
  std::vector<CheckpointResult> checkpoints;
  /// Distinct verified top-level counterexamples, in discovery order.
  std::vector<LiftResult> counterexamples;
  std::vector<std::string> diagnostics;
  History history;
};

/// Runs the goal through simplify -> eliminate-destructors -> generalize
/// until every goal is proved or stuck, then tests the stuck goals and lifts
/// their counterexamples. `config.test.seed` is the base seed; checkpoint
/// seeds derive from it and the goal id.
ProofResult run_waterfall(const Term& conjecture, const World& world,
                          const std::vector<UserHint>& hints, const WaterfallConfig& config);

/// The narrative for a proof attempt: checkpoints, their test reports and
/// the overall verdict.
std::string render_proof(const ProofResult& result, const World& world,
                         std::size_t display_cap = 3);

}  // namespace sedan
