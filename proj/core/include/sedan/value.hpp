#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sedan {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// An element of the value universe: exact rationals, symbols, characters,
/// strings and cons pairs. Values are immutable and cheap to copy (shared
/// nodes). `nil` is both the empty list and false; every other value is
/// true.
class Value {
 public:
  enum class Kind : unsigned char { kRational, kCharacter, kString, kSymbol, kPair };

  /// Default-constructed value is nil.
  Value();

  static Value nil();
  static Value t();
  static Value boolean(bool b) { return b ? t() : nil(); }
  static Value integer(long long n);
  static Value integer(const Integer& n);
  static Value rational(const Rational& q);
  static Value symbol(std::string_view name);
  static Value character(char c);
  static Value string(std::string text);
  static Value cons(Value car, Value cdr);
  /// Proper list of the given elements.
  static Value list(const std::vector<Value>& elements);

  Kind kind() const;
  bool is_nil() const;
  bool is_t() const;
  bool truthy() const { return !is_nil(); }
  bool is_rational() const { return kind() == Kind::kRational; }
  bool is_integer() const;
  bool is_symbol() const { return kind() == Kind::kSymbol; }
  bool is_string() const { return kind() == Kind::kString; }
  bool is_character() const { return kind() == Kind::kCharacter; }
  bool is_pair() const { return kind() == Kind::kPair; }
  /// nil-terminated chain of pairs (nil itself included).
  bool is_true_list() const;

  const Rational& as_rational() const;
  const std::string& symbol_name() const;
  const std::string& string_text() const;
  char as_character() const;
  /// car/cdr of a pair; nil for any other value.
  const Value& car() const;
  const Value& cdr() const;

  /// Elements of a true list (stops at the first non-pair tail).
  std::vector<Value> list_elements() const;
  std::size_t list_length() const;

  friend bool operator==(const Value& a, const Value& b);
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

  std::size_t hash() const;

  struct Node;

 private:
  explicit Value(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Total order on values: rationals < characters < strings < symbols <
/// pairs; pairs compare lexicographically on (car, cdr).
std::strong_ordering compare(const Value& a, const Value& b);

struct ValueLess {
  bool operator()(const Value& a, const Value& b) const {
    return compare(a, b) < 0;
  }
};

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.hash(); }
};

/// Printing style. Canonical output re-reads to the same value; report style
/// upcases symbols the way ACL2 session transcripts do.
enum class PrintStyle { kCanonical, kReport };

std::string to_string(const Value& v, PrintStyle style = PrintStyle::kCanonical);
std::string rational_to_string(const Rational& q);

/// True when a bare symbol with this name would re-read as the same symbol.
bool symbol_needs_bars(std::string_view name);

}  // namespace sedan
