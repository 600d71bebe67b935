#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sedan/clause.hpp"
#include "sedan/eval.hpp"
#include "sedan/testgen.hpp"
#include "sedan/world.hpp"

namespace sedan {

/// One parent variable's fate in a child: a term over child variables, or
/// the don't-care marker when it vanished.
struct VarMapping {
  std::string var;
  std::optional<Term> term;  // nullopt = ?
};

struct HistoryNode {
  std::string id;
  std::optional<std::string> parent;
  std::string process;  // empty for the top goal
  Clause clause;
  /// Parent variable -> term over child variables (or ?).
  std::vector<VarMapping> var_map;
  /// Child variable -> restrictions, own process-derived ones merged with
  /// everything inherited from the parent.
  TypeAlist type_map;
  /// Child variable -> term over parent variables.
  std::map<std::string, Term> forward_map;
  bool liftable = true;
};

/// Lifted assignment for the top goal.
struct LiftResult {
  bool ok = false;
  std::string failure;
  Binding binding;
  /// Top-level variables bound to a don't-care.
  std::set<std::string> dont_care;
};

/// Value to use for a don't-care variable; receives the variable name.
using DontCareFiller = std::function<Value(const std::string&)>;

/// The testing history of one proof attempt: a tree of goals with variable
/// maps and accumulated type information.
class History {
 public:
  /// Stores the node. For a child, restrictions the parent has for a
  /// variable that maps straight to a child variable are merged into the
  /// child's type map, and parent variables missing from `var_map` are
  /// recorded as ?. Throws Error on a duplicate id or unknown parent.
  void record(HistoryNode node, const World& world);
  /// Removes a node and all of its descendants.
  void erase(std::string_view id);

  const HistoryNode* find(std::string_view id) const;
  const std::vector<HistoryNode>& nodes() const { return nodes_; }

  /// Own extracted restrictions first, inherited after. Throws Error for an
  /// unknown goal.
  TypeAlist accumulated_type_alist(std::string_view id, const World& world) const;

  /// Walks child -> parent applying variable maps. Fails when a
  /// non-liftable edge is crossed or a mapped expression errors.
  LiftResult lift(std::string_view id, const Binding& assignment, const World& world,
                  const DontCareFiller& filler = {}) const;

 private:
  std::vector<HistoryNode> nodes_;
};

/// Report form of a lifted binding; don't-care variables print as ?.
std::string lifted_to_string(const LiftResult& lift, const std::vector<std::string>& order,
                             PrintStyle style = PrintStyle::kReport);

}  // namespace sedan
