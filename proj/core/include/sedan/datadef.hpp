#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sedan/config.hpp"
#include "sedan/sampling.hpp"
#include "sedan/type_expr.hpp"
#include "sedan/value.hpp"
#include "sedan/world.hpp"

namespace sedan {

/// Natural-number encodings shared by every enumerator.
namespace encoding {

/// Cantor pairing (i+j)(i+j+1)/2 + j. Saturates at UINT64_MAX.
std::uint64_t pair(std::uint64_t i, std::uint64_t j);
/// Inverse of `pair`; total on all of uint64.
std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t n);
/// 0, -1, 1, -2, 2, ...
Integer zigzag(std::uint64_t n);

}  // namespace encoding

/// Names of the built-in base types.
inline constexpr std::string_view kBaseTypeNames[] = {
    "all",     "nat",    "pos",    "neg",       "integer",   "rational",
    "boolean", "symbol", "string", "character", "true-list", "proper-cons"};

/// Seeds a type table and subtype graph with the base types and the edges
/// pos -> nat -> integer -> rational, neg -> integer, boolean -> symbol,
/// proper-cons -> true-list, and T -> all for every T.
void install_base_types(TypeTable& table, SubtypeGraph& graph);

struct DefdataMember {
  std::string name;
  TypeExprPtr expr;
};

/// Registers one definition or a mutually recursive group. Derives each
/// member's recognizer and enumerator by walking its TypeExpr, and adds the
/// subtype edges that follow from the syntax.
World register_defdata(const World& world, const std::vector<DefdataMember>& group);
World register_defdata(const World& world, const std::string& name, TypeExprPtr expr);

bool recognize(const World& world, std::string_view type, const Value& v);
bool recognize(const World& world, const TypeExpr& expr, const Value& v);

/// Total surjective map from naturals onto the type's extent.
Value enumerate(const World& world, std::string_view type, std::uint64_t n);
Value enumerate(const World& world, const TypeExpr& expr, std::uint64_t n);

/// enumerate(type, i) for an index drawn from `dist`.
Value sample(const World& world, std::string_view type, Rng& rng, Distribution dist,
             unsigned uniform_bits = 24);

struct SubtypeEvidence {
  bool ok = true;
  std::uint64_t index = 0;
  Value witness;
};

/// Checks recognize(super, enumerate(sub, i)) for i in [0, samples).
SubtypeEvidence check_subtype_evidence(const World& world, std::string_view sub,
                                       std::string_view super, std::size_t samples);

/// Adds sub -> super after an evidence check (skipped when `trust`).
/// Throws AdmissionError naming the witness index and value on failure.
World add_subtype_edge(const World& world, const std::string& sub, const std::string& super,
                       bool trust = false);

/// A type restriction on one variable: a registered type, a single value
/// (from an equality hypothesis) or an anonymous type expression (component
/// types propagated through destructor elimination).
struct Restriction {
  enum class Kind { kType, kSingleton, kExpr };

  Kind kind = Kind::kType;
  std::string type;
  Value value;
  TypeExprPtr expr;

  static Restriction of_type(std::string name);
  static Restriction of_value(Value v);
  static Restriction of_expr(TypeExprPtr e);

  bool is_all() const { return kind == Kind::kType && type == "all"; }
  friend bool operator==(const Restriction& a, const Restriction& b);
};

std::string to_string(const Restriction& r, PrintStyle style = PrintStyle::kCanonical);

bool satisfies(const World& world, const Restriction& r, const Value& v);
Value enumerate(const World& world, const Restriction& r, std::uint64_t n);
/// Restriction for the car/cdr of a value satisfying `r`, when derivable.
std::optional<Restriction> component_restriction(const World& world, const Restriction& r,
                                                 bool car);

/// Result of picking a sampling type for a variable.
struct TypeSelection {
  Restriction primary;
  /// Restrictions not implied by `primary`; used as rejection filters.
  std::vector<Restriction> residual;
};

/// Picks the smallest restriction using SCC equivalence and closure
/// reachability. Singletons always win. When no restriction is below all
/// the others the first one is primary and the rest become residual.
TypeSelection minimal_type(const World& world, std::span<const Restriction> restrictions);

}  // namespace sedan
