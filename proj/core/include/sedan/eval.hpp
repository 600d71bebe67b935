#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sedan/term.hpp"
#include "sedan/value.hpp"
#include "sedan/world.hpp"

namespace sedan {

/// Variable name -> value; ordered by name so printing is canonical.
using Binding = std::map<std::string, Value, std::less<>>;

/// Evaluates terms against a fixed world. Pure: the same term, binding and
/// world always yield the same value. Safe to share between threads.
class Evaluator {
 public:
  explicit Evaluator(const World& world) : world_(world) {}

  /// Throws EvalError on an unbound variable, an unknown function or when
  /// user-function recursion exceeds the world's depth cap.
  Value eval(const Term& term, const Binding& binding) const;
  /// Applies a function symbol to evaluated arguments.
  Value call(std::string_view fn, std::span<const Value> args) const;

  const World& world() const { return world_; }

 private:
  struct Frame;
  Value eval_in(const Term& term, const Frame& frame, std::size_t depth) const;
  Value apply(std::string_view fn, std::span<const Value> args, std::size_t depth) const;

  const World& world_;
};

/// Convenience wrapper.
Value evaluate(const Term& term, const Binding& binding, const World& world);

/// Report form of a binding: "(X 0)", "(A 1), (B 2) and (C 3)". Variables
/// appear in `order` when given, otherwise by name.
std::string binding_to_string(const Binding& b, PrintStyle style,
                              const std::vector<std::string>& order = {});

}  // namespace sedan
