#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "sedan/value.hpp"

namespace sedan {

/// A primitive function. Every builtin is total: it returns a value for
/// every argument tuple (car of an atom is nil, arithmetic on non-rationals
/// treats the operand as 0, division by zero yields 0).
struct Builtin {
  std::string_view name;
  std::size_t min_arity;
  std::size_t max_arity;
  /// Result is always t or nil.
  bool boolean;
  /// Arguments are evaluated on demand (if/and/or/implies); `apply` is then
  /// only used for already-evaluated arguments.
  bool lazy;
  Value (*apply)(std::span<const Value> args);
};

/// Looks up a builtin by name; nullptr when not a builtin.
const Builtin* find_builtin(std::string_view name);

std::span<const Builtin> all_builtins();

/// Exact integer power; negative exponents invert, and any power of 0
/// other than the 0th is 0.
Rational rational_expt(const Rational& base, long long exponent);

/// Coerces to rational (non-rationals become 0).
Rational fix_rational(const Value& v);

}  // namespace sedan
