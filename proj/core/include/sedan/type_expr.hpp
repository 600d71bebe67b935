#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sedan/sexp.hpp"
#include "sedan/term.hpp"
#include "sedan/value.hpp"

namespace sedan {

struct TypeExpr;
using TypeExprPtr = std::shared_ptr<const TypeExpr>;

/// Syntax of a data definition body.
struct TypeExpr {
  enum class Kind { kNamed, kSingleton, kEnum, kOneOf, kCons, kListOf, kSet, kRecord, kCustom };

  Kind kind = Kind::kNamed;
  /// kNamed: referenced type; kRecord: record tag; kCustom: recognizer.
  std::string name;
  /// kCustom: enumerator function (natural -> value).
  std::string enumerator;
  /// kSingleton.
  Value value;
  /// kEnum, in declaration order.
  std::vector<Value> values;
  /// kOneOf: branches; kCons: (car, cdr); kListOf/kSet: element; kRecord:
  /// field types.
  std::vector<TypeExprPtr> children;
  /// kRecord field names, parallel to children.
  std::vector<std::string> fields;

  static TypeExprPtr named(std::string name);
  static TypeExprPtr singleton(Value v);
  static TypeExprPtr enumeration(std::vector<Value> values);
  static TypeExprPtr one_of(std::vector<TypeExprPtr> branches);
  static TypeExprPtr cons(TypeExprPtr car, TypeExprPtr cdr);
  static TypeExprPtr list_of(TypeExprPtr element);
  static TypeExprPtr set_of(TypeExprPtr element);
  static TypeExprPtr record(std::string tag, std::vector<std::string> fields,
                            std::vector<TypeExprPtr> types);
  static TypeExprPtr custom(std::string recognizer, std::string enumerator);
};

/// Parses the body of a defdata form. `defname` tags (record ...) bodies.
TypeExprPtr parse_type_expr(const Sexp& s, const std::string& defname);

std::string to_string(const TypeExpr& e);

/// Named types referenced anywhere inside `e`.
void collect_type_refs(const TypeExpr& e, std::vector<std::string>& out);

/// Built-in base types.
enum class BaseType {
  kNone,
  kAll,
  kNat,
  kPos,
  kNeg,
  kInteger,
  kRational,
  kBoolean,
  kSymbol,
  kString,
  kCharacter,
  kTrueList,
  kProperCons,
};

/// A registered data definition.
struct TypeEntry {
  std::string name;
  BaseType base = BaseType::kNone;
  TypeExprPtr expr;  // null for base types
  /// Members of the mutually recursive group this entry was registered in.
  std::vector<std::string> group;
  bool recursive = false;
  /// Finite types enumerate by cycling through their extent.
  bool finite = false;
  std::vector<Value> extent;
  std::string recognizer_name;  // e.g. loip
  std::string enumerator_name;  // e.g. nth-loi
  /// Recognizer body over the variable `x`, present for non-recursive user
  /// types whose shape can be opened by the simplifier.
  std::optional<Term> definition;
};

using TypeEntryPtr = std::shared_ptr<const TypeEntry>;

/// Name -> entry, plus the recognizer/enumerator function index.
class TypeTable {
 public:
  const TypeEntry* find(std::string_view name) const;
  /// Type whose recognizer is `fn` (loip -> loi, natp -> nat, ...).
  const TypeEntry* by_recognizer(std::string_view fn) const;
  const TypeEntry* by_enumerator(std::string_view fn) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  void insert(TypeEntryPtr entry);
  const std::map<std::string, TypeEntryPtr, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, TypeEntryPtr, std::less<>> entries_;
  std::map<std::string, std::string, std::less<>> recognizers_;
  std::map<std::string, std::string, std::less<>> enumerators_;
};

}  // namespace sedan
