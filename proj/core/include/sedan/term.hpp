#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sedan/sexp.hpp"
#include "sedan/value.hpp"

namespace sedan {

/// Symbolic expression: a variable, a quoted constant or a function
/// application. Immutable and shared; structural equality and hashing.
class Term {
 public:
  enum class Kind : unsigned char { kVar, kQuote, kApp };

  /// The constant nil.
  Term();

  static Term var(std::string name);
  static Term quote(Value v);
  static Term app(std::string fn, std::vector<Term> args);

  static Term nil() { return quote(Value::nil()); }
  static Term t() { return quote(Value::t()); }

  Kind kind() const { return node_->kind; }
  bool is_var() const { return kind() == Kind::kVar; }
  bool is_quote() const { return kind() == Kind::kQuote; }
  bool is_app() const { return kind() == Kind::kApp; }
  bool is_app(std::string_view fn) const { return is_app() && node_->name == fn; }
  bool is_nil() const { return is_quote() && value().is_nil(); }
  bool is_t() const { return is_quote() && value().is_t(); }

  /// Variable name or function symbol.
  const std::string& name() const { return node_->name; }
  const Value& value() const { return node_->value; }
  const std::vector<Term>& args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }

  std::size_t hash() const { return node_->hash; }
  /// Number of nodes in the tree.
  std::size_t size() const { return node_->size; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::string name;
    Value value;
    std::vector<Term> args;
    std::size_t hash = 0;
    std::size_t size = 1;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Deterministic total order on terms (for canonical output and sets).
bool term_less(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return term_less(a, b); }
};

/// Variables occurring outside quotes, in order of first occurrence.
std::vector<std::string> free_vars_ordered(const Term& t);
std::set<std::string> free_vars(const Term& t);
std::vector<std::string> free_vars_ordered(const std::vector<Term>& terms);

bool occurs_var(const Term& t, std::string_view var);
bool occurs_term(const Term& haystack, const Term& needle);

/// Simultaneous substitution of variables.
using Substitution = std::map<std::string, Term>;
Term substitute(const Term& t, const Substitution& s);
/// Replaces every occurrence of `from` (a subterm) by `to`.
Term replace_subterm(const Term& t, const Term& from, const Term& to);

/// Prints in surface syntax; canonical style re-reads to the same term.
std::string to_string(const Term& t, PrintStyle style = PrintStyle::kCanonical);

/// Translates surface syntax into a term: expands and/or/list/+/* to binary
/// nests, cond to if, first/second/third and c[ad]+r to car/cdr chains,
/// > <= >= to <, = to equal, endp/atom to (not (consp x)).
/// Built-in arities are checked here; user functions are checked on
/// admission.
Term translate(const Sexp& s);
Term parse_term(std::string_view text);

/// Boolean-valued function symbols (always return t or nil).
bool is_boolean_function(std::string_view fn);

}  // namespace sedan
