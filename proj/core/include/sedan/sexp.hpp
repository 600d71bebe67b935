#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sedan/error.hpp"
#include "sedan/value.hpp"

namespace sedan {

/// A read s-expression that remembers where it came from. Atoms carry their
/// Value; lists carry children and an optional dotted tail.
struct Sexp {
  enum class Kind { kAtom, kList };

  Kind kind = Kind::kAtom;
  Value atom;
  std::vector<Sexp> items;
  std::vector<Sexp> tail;  // zero or one element: the dotted tail
  SourcePos pos;

  bool is_atom() const { return kind == Kind::kAtom; }
  bool is_list() const { return kind == Kind::kList; }
  bool is_symbol() const { return is_atom() && atom.is_symbol(); }
  bool is_symbol(std::string_view name) const {
    return is_symbol() && atom.symbol_name() == name;
  }
  /// A proper list (no dotted tail); nil reads as an atom, not a list.
  bool is_proper_list() const { return is_list() && tail.empty(); }
  const std::string& symbol_name() const { return atom.symbol_name(); }

  /// Converts to plain data, dropping positions.
  Value to_value() const;
};

/// Reads every top-level s-expression in `text`. `;` starts a line comment.
/// Supports integers, p/q rationals, "strings", #\c characters, |symbols|,
/// dotted pairs and the 'x quote shorthand.
std::vector<Sexp> read_all(std::string_view text);

/// Reads exactly one s-expression.
Sexp read_one(std::string_view text);

/// Parses a value literal (convenience for tests and reports).
Value read_value(std::string_view text);

/// Prints a Sexp back to text (quote forms are printed as 'x).
std::string to_string(const Sexp& s);

}  // namespace sedan
