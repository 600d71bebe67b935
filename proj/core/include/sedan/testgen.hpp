#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sedan/clause.hpp"
#include "sedan/config.hpp"
#include "sedan/datadef.hpp"
#include "sedan/eval.hpp"
#include "sedan/world.hpp"

namespace sedan {

struct TypeAlistEntry {
  std::string var;
  /// Never empty; {all} when nothing is known.
  std::vector<Restriction> restrictions;
};

/// Variable -> restrictions, in order of first appearance.
using TypeAlist = std::vector<TypeAlistEntry>;

const TypeAlistEntry* find_entry(const TypeAlist& alist, std::string_view var);

/// Appends `r` to var's list unless already present; drops a lone `all`.
void add_restriction(TypeAlist& alist, const std::string& var, const Restriction& r);

/// "((X . ALL))": each variable with its sampling type.
std::string to_string(const TypeAlist& alist, const World& world,
                      PrintStyle style = PrintStyle::kReport);

/// Datatype hypotheses (not (Tp x)) and equality hypotheses
/// (not (equal x 'v)) become restrictions; other variables get `all`.
TypeAlist extract_restrictions(const Clause& clause, const World& world);

/// Fills in `all` for clause variables missing from `alist` and orders the
/// result by first appearance in the clause.
TypeAlist complete_alist(const Clause& clause, TypeAlist alist);

/// Draws bindings for the variables of an alist.
class BindingSampler {
 public:
  BindingSampler(const World& world, const TypeAlist& alist, const TestConfig& config);

  /// Binding for trial `index` of the run; nullopt when a residual filter
  /// rejects the drawn value. Random draws consume the generator in trial
  /// order, so call with increasing indices.
  std::optional<Binding> next(std::size_t index);
  /// Trials the run will make.
  std::size_t trial_count() const { return trials_; }
  bool exhaustive() const { return exhaustive_; }

 private:
  const World& world_;
  std::vector<std::string> vars_;
  std::vector<TypeSelection> selections_;
  TestConfig config_;
  Rng rng_;
  bool exhaustive_ = false;
  std::size_t trials_ = 0;
};

struct TestReport {
  std::string goal_id;
  TypeAlist alist;
  std::vector<std::string> vars;
  std::uint64_t seed = 0;
  TestMode mode = TestMode::kRandom;
  Distribution dist = Distribution::kGeometric;
  std::size_t trials = 0;
  std::size_t satisfied = 0;
  std::size_t unique_satisfied = 0;
  std::size_t vacuous = 0;
  std::size_t erroring = 0;
  /// Per unique satisfying assignment.
  std::size_t counterexample_count = 0;
  std::size_t witness_count = 0;
  /// The same split counted per satisfying trial.
  std::size_t counterexample_trials = 0;
  std::size_t witness_trials = 0;
  /// Up to kStoredCounterexamples, in discovery order.
  std::vector<Binding> counterexamples;
  /// Up to the display cap.
  std::vector<Binding> witnesses;
  std::vector<std::string> errors;
  double elapsed_seconds = 0;
};

inline constexpr std::size_t kStoredCounterexamples = 64;

/// Runs the trials for one clause.
TestReport run_trials(const Clause& clause, const TypeAlist& alist, const TestConfig& config,
                      const World& world, std::string goal_id = {});

/// extract-restrictions + run-trials on an unsimplified conjecture.
TestReport top_level_test(const Term& conjecture, const TestConfig& config, const World& world);

/// Single clause view of a conjecture: hypotheses of nested implies/and,
/// then the conclusion.
Clause conjecture_clause(const Term& conjecture);

struct RenderOptions {
  /// Replaces the report's own counterexample lines when set.
  std::optional<std::vector<std::string>> counterexample_lines;
  /// Extra titled sections printed after the counterexamples.
  std::vector<std::pair<std::string, std::vector<std::string>>> extra_sections;
  std::size_t display_cap = 3;
};

/// The narrative text: type alist line, counterexample/witness sections and
/// the trial-count sentences.
std::string render_report(const TestReport& report, const World& world,
                          const RenderOptions& options = {});

}  // namespace sedan
