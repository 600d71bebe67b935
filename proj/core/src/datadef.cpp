#include "sedan/datadef.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "sedan/error.hpp"
#include "sedan/eval.hpp"

namespace sedan {

namespace encoding {

std::uint64_t pair(std::uint64_t i, std::uint64_t j) {
  const unsigned __int128 s = static_cast<unsigned __int128>(i) + j;
  const unsigned __int128 r = s * (s + 1) / 2 + j;
  return r > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(r);
}

namespace {

// Largest w with w(w+1)/2 <= n.
std::uint64_t triangle_root(std::uint64_t n) {
  const unsigned __int128 target = n;
  std::uint64_t lo = 0;
  std::uint64_t hi = 1ULL << 33;  // (2^33)(2^33+1)/2 > 2^64
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    const unsigned __int128 t = static_cast<unsigned __int128>(mid) * (mid + 1) / 2;
    if (t <= target) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t n) {
  const std::uint64_t w = triangle_root(n);
  const std::uint64_t t = static_cast<std::uint64_t>(static_cast<unsigned __int128>(w) * (w + 1) / 2);
  const std::uint64_t j = n - t;
  return {w - j, j};
}

Integer zigzag(std::uint64_t n) {
  if (n % 2 == 0) return Integer(n / 2);
  return -(Integer(n / 2) + 1);
}

}  // namespace encoding

namespace {

constexpr std::size_t kMaxEnumDepth = 4096;
constexpr std::size_t kFiniteCap = 10000;
constexpr std::size_t kSmokeIndices = 64;

constexpr std::string_view kCharAlphabet =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

constexpr std::string_view kSymbolTable[] = {"nil", "t",   "a",   "b",   "c",   "x",
                                             "y",   "z",   "foo", "bar", "baz", "red",
                                             "green", "blue", "sym", "key"};

struct BaseInfo {
  std::string_view name;
  BaseType base;
  std::string_view recognizer;
};

constexpr BaseInfo kBaseInfo[] = {
    {"all", BaseType::kAll, "allp"},
    {"nat", BaseType::kNat, "natp"},
    {"pos", BaseType::kPos, "posp"},
    {"neg", BaseType::kNeg, "negp"},
    {"integer", BaseType::kInteger, "integerp"},
    {"rational", BaseType::kRational, "rationalp"},
    {"boolean", BaseType::kBoolean, "booleanp"},
    {"symbol", BaseType::kSymbol, "symbolp"},
    {"string", BaseType::kString, "stringp"},
    {"character", BaseType::kCharacter, "characterp"},
    {"true-list", BaseType::kTrueList, "true-listp"},
    {"proper-cons", BaseType::kProperCons, "proper-consp"},
};

const TypeEntry& lookup(const World& world, std::string_view type) {
  const TypeEntry* e = world.types().find(type);
  if (!e) throw Error("unknown type " + std::string(type));
  return *e;
}

Value character_at(std::uint64_t n) { return Value::character(kCharAlphabet[n % kCharAlphabet.size()]); }

Value symbol_at(std::uint64_t n) {
  constexpr std::size_t kTable = std::size(kSymbolTable);
  if (n < kTable) return Value::symbol(kSymbolTable[n]);
  // Bijective base 26 over the remaining indices.
  std::uint64_t m = n - kTable + 1;
  std::string name;
  while (m > 0) {
    --m;
    name.push_back(static_cast<char>('a' + m % 26));
    m /= 26;
  }
  std::reverse(name.begin(), name.end());
  return Value::symbol(name);
}

Value string_at(std::uint64_t n) {
  std::string text;
  while (n > 0) {
    auto [h, t] = encoding::unpair(n - 1);
    text.push_back(kCharAlphabet[h % kCharAlphabet.size()]);
    n = t;
  }
  return Value::string(std::move(text));
}

Value rational_at(std::uint64_t n) {
  auto [i, j] = encoding::unpair(n);
  return Value::rational(Rational(encoding::zigzag(i), Integer(j) + 1));
}

Value base_enumerate(BaseType base, std::uint64_t n, std::size_t depth);

// List decode: 0 -> nil; n+1 -> (elem(head) . list(tail)).
template <typename Elem>
Value list_at(std::uint64_t n, Elem&& elem) {
  std::vector<Value> items;
  while (n > 0) {
    auto [h, t] = encoding::unpair(n - 1);
    items.push_back(elem(h));
    n = t;
  }
  return Value::list(items);
}

Value all_at(std::uint64_t n, std::size_t depth) {
  if (depth > kMaxEnumDepth) throw Error("enumeration depth exceeded for all");
  const std::uint64_t m = n / 6;
  switch (n % 6) {
    case 0:
      return Value::integer(encoding::zigzag(m));
    case 1:
      return symbol_at(m);
    case 2:
      return string_at(m);
    case 3:
      return character_at(m);
    case 4:
      return rational_at(m);
    default: {
      auto [i, j] = encoding::unpair(m);
      return Value::cons(all_at(i, depth + 1), all_at(j, depth + 1));
    }
  }
}

Value base_enumerate(BaseType base, std::uint64_t n, std::size_t depth) {
  switch (base) {
    case BaseType::kAll:
      return all_at(n, depth);
    case BaseType::kNat:
      return Value::integer(Integer(n));
    case BaseType::kPos:
      return Value::integer(Integer(n) + 1);
    case BaseType::kNeg:
      return Value::integer(-(Integer(n) + 1));
    case BaseType::kInteger:
      return Value::integer(encoding::zigzag(n));
    case BaseType::kRational:
      return rational_at(n);
    case BaseType::kBoolean:
      return Value::boolean(n % 2 == 0);
    case BaseType::kSymbol:
      return symbol_at(n);
    case BaseType::kString:
      return string_at(n);
    case BaseType::kCharacter:
      return character_at(n);
    case BaseType::kTrueList:
      return list_at(n, [depth](std::uint64_t i) { return all_at(i, depth + 1); });
    case BaseType::kProperCons: {
      auto [i, j] = encoding::unpair(n);
      return Value::cons(all_at(i, depth + 1),
                         base_enumerate(BaseType::kTrueList, j, depth + 1));
    }
    case BaseType::kNone:
      break;
  }
  throw Error("not a base type");
}

bool base_recognize(BaseType base, const Value& v) {
  switch (base) {
    case BaseType::kAll:
      return true;
    case BaseType::kNat:
      return v.is_integer() && v.as_rational() >= 0;
    case BaseType::kPos:
      return v.is_integer() && v.as_rational() > 0;
    case BaseType::kNeg:
      return v.is_integer() && v.as_rational() < 0;
    case BaseType::kInteger:
      return v.is_integer();
    case BaseType::kRational:
      return v.is_rational();
    case BaseType::kBoolean:
      return v.is_nil() || v.is_t();
    case BaseType::kSymbol:
      return v.is_symbol();
    case BaseType::kString:
      return v.is_string();
    case BaseType::kCharacter:
      return v.is_character();
    case BaseType::kTrueList:
      return v.is_true_list();
    case BaseType::kProperCons:
      return v.is_pair() && v.is_true_list();
    case BaseType::kNone:
      break;
  }
  return false;
}

Value enumerate_entry(const World& world, const TypeEntry& e, std::uint64_t n, std::size_t depth);
Value enumerate_expr(const World& world, const TypeExpr& expr, std::uint64_t n,
                     std::size_t depth);
bool recognize_entry(const World& world, const TypeEntry& e, const Value& v, std::size_t depth);
bool recognize_expr(const World& world, const TypeExpr& expr, const Value& v, std::size_t depth);

Value enumerate_entry(const World& world, const TypeEntry& e, std::uint64_t n,
                      std::size_t depth) {
  if (depth > kMaxEnumDepth) throw Error("enumeration depth exceeded for " + e.name);
  if (e.finite && !e.extent.empty()) return e.extent[n % e.extent.size()];
  if (e.base != BaseType::kNone) return base_enumerate(e.base, n, depth);
  return enumerate_expr(world, *e.expr, n, depth + 1);
}

// Nested unpair: k indices from one.
std::vector<std::uint64_t> split_index(std::uint64_t n, std::size_t k) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    auto [a, b] = encoding::unpair(n);
    out.push_back(a);
    n = b;
  }
  out.push_back(n);
  return out;
}

Value enumerate_expr(const World& world, const TypeExpr& expr, std::uint64_t n,
                     std::size_t depth) {
  if (depth > kMaxEnumDepth) throw Error("enumeration depth exceeded");
  using K = TypeExpr::Kind;
  switch (expr.kind) {
    case K::kNamed:
      return enumerate_entry(world, lookup(world, expr.name), n, depth + 1);
    case K::kSingleton:
      return expr.value;
    case K::kEnum:
      return expr.values[n % expr.values.size()];
    case K::kOneOf: {
      const std::size_t k = expr.children.size();
      return enumerate_expr(world, *expr.children[n % k], n / k, depth + 1);
    }
    case K::kCons: {
      const TypeExpr& car = *expr.children[0];
      const TypeExpr& cdr = *expr.children[1];
      // A singleton side needs no index of its own.
      if (cdr.kind == K::kSingleton) {
        return Value::cons(enumerate_expr(world, car, n, depth + 1), cdr.value);
      }
      if (car.kind == K::kSingleton) {
        return Value::cons(car.value, enumerate_expr(world, cdr, n, depth + 1));
      }
      auto [i, j] = encoding::unpair(n);
      return Value::cons(enumerate_expr(world, car, i, depth + 1),
                         enumerate_expr(world, cdr, j, depth + 1));
    }
    case K::kListOf:
      return list_at(n, [&](std::uint64_t i) {
        return enumerate_expr(world, *expr.children[0], i, depth + 1);
      });
    case K::kSet: {
      Value list = list_at(n, [&](std::uint64_t i) {
        return enumerate_expr(world, *expr.children[0], i, depth + 1);
      });
      std::vector<Value> items = list.list_elements();
      std::sort(items.begin(), items.end(), ValueLess{});
      items.erase(std::unique(items.begin(), items.end()), items.end());
      return Value::list(items);
    }
    case K::kRecord: {
      std::vector<Value> items{Value::symbol(expr.name)};
      const auto idx = split_index(n, expr.children.size());
      for (std::size_t f = 0; f < expr.fields.size(); ++f) {
        items.push_back(Value::cons(Value::symbol(expr.fields[f]),
                                    enumerate_expr(world, *expr.children[f], idx[f], depth + 1)));
      }
      return Value::list(items);
    }
    case K::kCustom: {
      Evaluator ev(world);
      const Value arg = Value::integer(Integer(n));
      return ev.call(expr.enumerator, std::span<const Value>(&arg, 1));
    }
  }
  throw Error("bad type expression");
}

bool recognize_entry(const World& world, const TypeEntry& e, const Value& v, std::size_t depth) {
  if (depth > kMaxEnumDepth) throw Error("recognizer depth exceeded for " + e.name);
  if (e.base != BaseType::kNone) return base_recognize(e.base, v);
  return recognize_expr(world, *e.expr, v, depth + 1);
}

bool recognize_expr(const World& world, const TypeExpr& expr, const Value& v, std::size_t depth) {
  if (depth > kMaxEnumDepth) throw Error("recognizer depth exceeded");
  using K = TypeExpr::Kind;
  switch (expr.kind) {
    case K::kNamed:
      return recognize_entry(world, lookup(world, expr.name), v, depth + 1);
    case K::kSingleton:
      return v == expr.value;
    case K::kEnum:
      return std::find(expr.values.begin(), expr.values.end(), v) != expr.values.end();
    case K::kOneOf:
      for (const auto& c : expr.children) {
        if (recognize_expr(world, *c, v, depth + 1)) return true;
      }
      return false;
    case K::kCons:
      return v.is_pair() && recognize_expr(world, *expr.children[0], v.car(), depth + 1) &&
             recognize_expr(world, *expr.children[1], v.cdr(), depth + 1);
    case K::kListOf: {
      const Value* cur = &v;
      while (cur->is_pair()) {
        if (!recognize_expr(world, *expr.children[0], cur->car(), depth + 1)) return false;
        cur = &cur->cdr();
      }
      return cur->is_nil();
    }
    case K::kSet: {
      if (!v.is_true_list()) return false;
      const auto items = v.list_elements();
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (!recognize_expr(world, *expr.children[0], items[i], depth + 1)) return false;
        if (i > 0 && compare(items[i - 1], items[i]) >= 0) return false;
      }
      return true;
    }
    case K::kRecord: {
      if (!v.is_true_list()) return false;
      const auto items = v.list_elements();
      if (items.size() != expr.fields.size() + 1) return false;
      if (items[0] != Value::symbol(expr.name)) return false;
      for (std::size_t f = 0; f < expr.fields.size(); ++f) {
        const Value& cell = items[f + 1];
        if (!cell.is_pair() || cell.car() != Value::symbol(expr.fields[f])) return false;
        if (!recognize_expr(world, *expr.children[f], cell.cdr(), depth + 1)) return false;
      }
      return true;
    }
    case K::kCustom: {
      Evaluator ev(world);
      return ev.call(expr.name, std::span<const Value>(&v, 1)).truthy();
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Registration helpers.

bool refs_any(const TypeExpr& e, const std::set<std::string>& names) {
  std::vector<std::string> refs;
  collect_type_refs(e, refs);
  return std::any_of(refs.begin(), refs.end(), [&](const auto& r) { return names.count(r) > 0; });
}

// Puts oneof branches that do not mention the group first, so index 0 of a
// recursive type always decodes through a base case.
TypeExprPtr order_branches(const TypeExprPtr& e, const std::set<std::string>& group) {
  if (e->kind == TypeExpr::Kind::kNamed || e->children.empty()) return e;
  auto copy = std::make_shared<TypeExpr>(*e);
  for (auto& c : copy->children) c = order_branches(c, group);
  if (copy->kind == TypeExpr::Kind::kOneOf) {
    std::stable_partition(copy->children.begin(), copy->children.end(),
                          [&](const TypeExprPtr& c) { return !refs_any(*c, group); });
  }
  return copy;
}

bool productive(const TypeExpr& e, const std::set<std::string>& group,
                const std::set<std::string>& known) {
  using K = TypeExpr::Kind;
  switch (e.kind) {
    case K::kNamed:
      return !group.count(e.name) || known.count(e.name);
    case K::kSingleton:
    case K::kCustom:
    case K::kListOf:
    case K::kSet:
      return true;
    case K::kEnum:
      return !e.values.empty();
    case K::kOneOf:
      return std::any_of(e.children.begin(), e.children.end(),
                         [&](const auto& c) { return productive(*c, group, known); });
    case K::kCons:
    case K::kRecord:
      return std::all_of(e.children.begin(), e.children.end(),
                         [&](const auto& c) { return productive(*c, group, known); });
  }
  return false;
}

// Group references reachable without passing through a constructor.
void unguarded_refs(const TypeExpr& e, const std::set<std::string>& group,
                    std::set<std::string>& out) {
  if (e.kind == TypeExpr::Kind::kNamed) {
    if (group.count(e.name)) out.insert(e.name);
  } else if (e.kind == TypeExpr::Kind::kOneOf) {
    for (const auto& c : e.children) unguarded_refs(*c, group, out);
  }
}

std::optional<std::vector<Value>> extent_of(const World& world, const TypeExpr& e) {
  using K = TypeExpr::Kind;
  auto dedupe = [](std::vector<Value> vs) {
    std::vector<Value> out;
    for (auto& v : vs) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    }
    return out;
  };
  switch (e.kind) {
    case K::kNamed: {
      const TypeEntry* t = world.types().find(e.name);
      if (t && t->finite) return t->extent;
      return std::nullopt;
    }
    case K::kSingleton:
      return std::vector<Value>{e.value};
    case K::kEnum:
      return dedupe(e.values);
    case K::kOneOf: {
      std::vector<Value> all;
      for (const auto& c : e.children) {
        auto sub = extent_of(world, *c);
        if (!sub) return std::nullopt;
        all.insert(all.end(), sub->begin(), sub->end());
        if (all.size() > kFiniteCap) return std::nullopt;
      }
      return dedupe(std::move(all));
    }
    case K::kCons: {
      auto a = extent_of(world, *e.children[0]);
      auto b = extent_of(world, *e.children[1]);
      if (!a || !b || a->size() * b->size() > kFiniteCap) return std::nullopt;
      std::vector<Value> out;
      for (const auto& x : *a) {
        for (const auto& y : *b) out.push_back(Value::cons(x, y));
      }
      return out;
    }
    case K::kRecord: {
      std::vector<std::vector<Value>> rows{{Value::symbol(e.name)}};
      for (std::size_t f = 0; f < e.fields.size(); ++f) {
        auto sub = extent_of(world, *e.children[f]);
        if (!sub) return std::nullopt;
        std::vector<std::vector<Value>> next;
        for (const auto& row : rows) {
          for (const auto& v : *sub) {
            auto r = row;
            r.push_back(Value::cons(Value::symbol(e.fields[f]), v));
            next.push_back(std::move(r));
            if (next.size() > kFiniteCap) return std::nullopt;
          }
        }
        rows = std::move(next);
      }
      std::vector<Value> out;
      for (const auto& row : rows) out.push_back(Value::list(row));
      return out;
    }
    default:
      return std::nullopt;
  }
}

Term call1(std::string fn, Term arg) { return Term::app(std::move(fn), {std::move(arg)}); }

Term and2(Term a, Term b) {
  if (a.is_t()) return b;
  if (b.is_t()) return a;
  return Term::app("and", {std::move(a), std::move(b)});
}

Term or_chain(std::vector<Term> parts) {
  Term out = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) out = Term::app("or", {parts[i], out});
  return out;
}

// Recognizer body of `e` applied to `x`, or nullopt when it has no
// first-order unfolding (listof, set, record).
std::optional<Term> definition_term(const World& world, const TypeExpr& e, const Term& x) {
  using K = TypeExpr::Kind;
  switch (e.kind) {
    case K::kNamed: {
      const TypeEntry* t = world.types().find(e.name);
      if (!t) return std::nullopt;
      if (t->base == BaseType::kAll) return Term::t();
      if (t->base == BaseType::kProperCons) {
        return and2(call1("consp", x), call1("true-listp", x));
      }
      return call1(t->recognizer_name, x);
    }
    case K::kSingleton:
      return Term::app("equal", {x, Term::quote(e.value)});
    case K::kEnum: {
      std::vector<Term> parts;
      for (const auto& v : e.values) parts.push_back(Term::app("equal", {x, Term::quote(v)}));
      return or_chain(std::move(parts));
    }
    case K::kOneOf: {
      std::vector<Term> parts;
      for (const auto& c : e.children) {
        auto t = definition_term(world, *c, x);
        if (!t) return std::nullopt;
        parts.push_back(*t);
      }
      return or_chain(std::move(parts));
    }
    case K::kCons: {
      auto a = definition_term(world, *e.children[0], call1("car", x));
      auto d = definition_term(world, *e.children[1], call1("cdr", x));
      if (!a || !d) return std::nullopt;
      return and2(call1("consp", x), and2(*a, *d));
    }
    case K::kCustom:
      return call1(e.name, x);
    default:
      return std::nullopt;
  }
}

std::string upcase(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

void install_base_types(TypeTable& table, SubtypeGraph& graph) {
  for (const auto& info : kBaseInfo) {
    auto e = std::make_shared<TypeEntry>();
    e->name = std::string(info.name);
    e->base = info.base;
    e->recognizer_name = std::string(info.recognizer);
    e->enumerator_name = "nth-" + e->name;
    if (info.base == BaseType::kBoolean) {
      e->finite = true;
      e->extent = {Value::t(), Value::nil()};
    }
    graph.add_vertex(e->name);
    table.insert(std::move(e));
  }
  const std::pair<const char*, const char*> edges[] = {
      {"pos", "nat"},     {"nat", "integer"},   {"integer", "rational"},
      {"neg", "integer"}, {"boolean", "symbol"}, {"proper-cons", "true-list"},
  };
  for (const auto& [a, b] : edges) graph.add_edge(a, b);
  for (const auto& info : kBaseInfo) {
    if (info.name != "all") graph.add_edge(std::string(info.name), "all");
  }
}

World register_defdata(const World& world, const std::string& name, TypeExprPtr expr) {
  return register_defdata(world, std::vector<DefdataMember>{{name, std::move(expr)}});
}

World register_defdata(const World& world, const std::vector<DefdataMember>& group) {
  if (group.empty()) throw AdmissionError("empty defdata");
  std::set<std::string> names;
  for (const auto& m : group) {
    if (!names.insert(m.name).second) throw AdmissionError("duplicate type " + m.name);
    for (const std::string& n : {m.name, m.name + "p", "nth-" + m.name}) {
      if (world.name_in_use(n)) throw AdmissionError("name " + n + " is already in use");
    }
  }
  // References resolve.
  for (const auto& m : group) {
    std::vector<std::string> refs;
    collect_type_refs(*m.expr, refs);
    for (const auto& r : refs) {
      if (!names.count(r) && !world.types().contains(r)) {
        throw AdmissionError("unknown type " + r + " in defdata " + m.name);
      }
    }
    std::function<void(const TypeExpr&)> check_custom = [&](const TypeExpr& e) {
      if (e.kind == TypeExpr::Kind::kCustom) {
        for (const auto& fn : {e.name, e.enumerator}) {
          if (world.arity(fn) != 1) {
            throw AdmissionError("custom type " + m.name + " needs a unary function " + fn);
          }
        }
      }
      for (const auto& c : e.children) check_custom(*c);
    };
    check_custom(*m.expr);
  }
  // Base case: least fixpoint of productive members.
  std::set<std::string> known;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& m : group) {
      if (!known.count(m.name) && productive(*m.expr, names, known)) {
        known.insert(m.name);
        changed = true;
      }
    }
  }
  for (const auto& m : group) {
    if (!known.count(m.name)) {
      throw AdmissionError("recursive type " + m.name + " has no base case");
    }
  }
  // No cycle of bare references (e.g. (oneof nil foo) inside foo).
  {
    std::map<std::string, std::set<std::string>> bare;
    for (const auto& m : group) unguarded_refs(*m.expr, names, bare[m.name]);
    std::map<std::string, int> state;
    std::function<void(const std::string&)> dfs = [&](const std::string& n) {
      state[n] = 1;
      for (const auto& s : bare[n]) {
        if (state[s] == 1) throw AdmissionError("type " + n + " refers to itself unguarded");
        if (state[s] == 0) dfs(s);
      }
      state[n] = 2;
    };
    for (const auto& m : group) {
      if (state[m.name] == 0) dfs(m.name);
    }
  }

  World w = world;
  const bool recursive_group = std::any_of(group.begin(), group.end(), [&](const auto& m) {
    return refs_any(*m.expr, names);
  });
  std::vector<std::string> group_names;
  for (const auto& m : group) group_names.push_back(m.name);
  for (const auto& m : group) {
    auto e = std::make_shared<TypeEntry>();
    e->name = m.name;
    e->expr = order_branches(m.expr, names);
    e->group = group_names;
    e->recursive = recursive_group;
    e->recognizer_name = m.name + "p";
    e->enumerator_name = "nth-" + m.name;
    if (!recursive_group) {
      if (auto ext = extent_of(w, *e->expr); ext && !ext->empty()) {
        e->finite = true;
        e->extent = std::move(*ext);
      }
      e->definition = definition_term(w, *e->expr, Term::var("x"));
    }
    w = w.with_type(e);
  }

  // Edges that follow from the syntax.
  for (const auto& m : group) {
    const TypeEntry& e = *w.types().find(m.name);
    const TypeExpr& x = *e.expr;
    using K = TypeExpr::Kind;
    switch (x.kind) {
      case K::kListOf:
      case K::kSet:
        w = w.with_subtype_edge(m.name, "true-list");
        break;
      case K::kNamed:
        w = w.with_subtype_edge(m.name, x.name);
        w = w.with_subtype_edge(x.name, m.name);
        break;
      case K::kOneOf:
        for (const auto& c : x.children) {
          if (c->kind == K::kNamed) w = w.with_subtype_edge(c->name, m.name);
        }
        break;
      case K::kRecord:
        w = w.with_subtype_edge(m.name, "proper-cons");
        break;
      default:
        break;
    }
    if (e.finite) {
      for (const auto& info : kBaseInfo) {
        if (info.base == BaseType::kAll) continue;
        if (std::all_of(e.extent.begin(), e.extent.end(),
                        [&](const Value& v) { return base_recognize(info.base, v); })) {
          w = w.with_subtype_edge(m.name, std::string(info.name));
        }
      }
    }
    w = w.with_subtype_edge(m.name, "all");
  }

  // Smoke test of the derived functions.
  for (const auto& m : group) {
    for (std::uint64_t n = 0; n < kSmokeIndices; ++n) {
      Value v;
      try {
        v = enumerate(w, m.name, n);
      } catch (const Error& err) {
        throw AdmissionError("enumerator for " + m.name + " failed at index " +
                             std::to_string(n) + ": " + err.what());
      }
      if (!recognize(w, m.name, v)) {
        throw AdmissionError("enumerator for " + m.name + " produced " + to_string(v) +
                             " at index " + std::to_string(n) + ", which " + m.name +
                             "p rejects");
      }
    }
  }
  return w;
}

bool recognize(const World& world, std::string_view type, const Value& v) {
  return recognize_entry(world, lookup(world, type), v, 0);
}

bool recognize(const World& world, const TypeExpr& expr, const Value& v) {
  return recognize_expr(world, expr, v, 0);
}

Value enumerate(const World& world, std::string_view type, std::uint64_t n) {
  return enumerate_entry(world, lookup(world, type), n, 0);
}

Value enumerate(const World& world, const TypeExpr& expr, std::uint64_t n) {
  return enumerate_expr(world, expr, n, 0);
}

Value sample(const World& world, std::string_view type, Rng& rng, Distribution dist,
             unsigned uniform_bits) {
  return enumerate(world, type, draw_index(rng, dist, uniform_bits));
}

SubtypeEvidence check_subtype_evidence(const World& world, std::string_view sub,
                                       std::string_view super, std::size_t samples) {
  for (std::uint64_t i = 0; i < samples; ++i) {
    Value v = enumerate(world, sub, i);
    if (!recognize(world, super, v)) return {false, i, v};
  }
  return {};
}

World add_subtype_edge(const World& world, const std::string& sub, const std::string& super,
                       bool trust) {
  for (const auto& n : {sub, super}) {
    if (!world.types().contains(n)) throw AdmissionError("unknown type " + n);
  }
  if (sub == super) return world;
  if (!trust) {
    const SubtypeEvidence ev =
        check_subtype_evidence(world, sub, super, world.settings.edge_evidence);
    if (!ev.ok) {
      throw AdmissionError(sub + " is not a subtype of " + super + ": index " +
                           std::to_string(ev.index) + " enumerates " + to_string(ev.witness) +
                           ", which " + super + " rejects");
    }
  }
  return world.with_subtype_edge(sub, super);
}

// ---------------------------------------------------------------------------
// Restrictions.

Restriction Restriction::of_type(std::string name) {
  Restriction r;
  r.kind = Kind::kType;
  r.type = std::move(name);
  return r;
}

Restriction Restriction::of_value(Value v) {
  Restriction r;
  r.kind = Kind::kSingleton;
  r.value = std::move(v);
  return r;
}

Restriction Restriction::of_expr(TypeExprPtr e) {
  if (e->kind == TypeExpr::Kind::kNamed) return of_type(e->name);
  if (e->kind == TypeExpr::Kind::kSingleton) return of_value(e->value);
  Restriction r;
  r.kind = Kind::kExpr;
  r.expr = std::move(e);
  return r;
}

bool operator==(const Restriction& a, const Restriction& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Restriction::Kind::kType:
      return a.type == b.type;
    case Restriction::Kind::kSingleton:
      return a.value == b.value;
    case Restriction::Kind::kExpr:
      return to_string(*a.expr) == to_string(*b.expr);
  }
  return false;
}

std::string to_string(const Restriction& r, PrintStyle style) {
  switch (r.kind) {
    case Restriction::Kind::kType:
      return to_string(Value::symbol(r.type), style);
    case Restriction::Kind::kSingleton:
      return "'" + to_string(r.value, style);
    case Restriction::Kind::kExpr: {
      std::string s = to_string(*r.expr);
      return style == PrintStyle::kReport ? upcase(std::move(s)) : s;
    }
  }
  return {};
}

bool satisfies(const World& world, const Restriction& r, const Value& v) {
  switch (r.kind) {
    case Restriction::Kind::kType:
      return recognize(world, r.type, v);
    case Restriction::Kind::kSingleton:
      return v == r.value;
    case Restriction::Kind::kExpr:
      return recognize(world, *r.expr, v);
  }
  return false;
}

Value enumerate(const World& world, const Restriction& r, std::uint64_t n) {
  switch (r.kind) {
    case Restriction::Kind::kType:
      return enumerate(world, r.type, n);
    case Restriction::Kind::kSingleton:
      return r.value;
    case Restriction::Kind::kExpr:
      return enumerate(world, *r.expr, n);
  }
  return Value::nil();
}

std::optional<Restriction> component_restriction(const World& world, const Restriction& r,
                                                 bool car) {
  if (r.kind == Restriction::Kind::kSingleton) {
    if (!r.value.is_pair()) return std::nullopt;
    return Restriction::of_value(car ? r.value.car() : r.value.cdr());
  }
  TypeExprPtr expr;
  std::string self;
  if (r.kind == Restriction::Kind::kExpr) {
    expr = r.expr;
  } else {
    const TypeEntry* e = world.types().find(r.type);
    if (!e) return std::nullopt;
    switch (e->base) {
      case BaseType::kTrueList:
      case BaseType::kProperCons:
        return car ? Restriction::of_type("all") : Restriction::of_type("true-list");
      case BaseType::kNone:
        break;
      default:
        return std::nullopt;
    }
    // Follow aliases.
    while (e->expr && e->expr->kind == TypeExpr::Kind::kNamed) {
      const TypeEntry* next = world.types().find(e->expr->name);
      if (!next || next == e) break;
      e = next;
      if (e->base != BaseType::kNone) return component_restriction(world, Restriction::of_type(e->name), car);
    }
    expr = e->expr;
    self = e->name;
  }
  if (!expr) return std::nullopt;
  switch (expr->kind) {
    case TypeExpr::Kind::kCons:
      return Restriction::of_expr(expr->children[car ? 0 : 1]);
    case TypeExpr::Kind::kListOf:
      if (car) return Restriction::of_expr(expr->children[0]);
      if (!self.empty()) return Restriction::of_type(self);
      return Restriction::of_expr(expr);
    case TypeExpr::Kind::kOneOf: {
      // Exactly one branch can be a pair.
      const TypeExpr* only = nullptr;
      for (const auto& c : expr->children) {
        const bool atomic = c->kind == TypeExpr::Kind::kSingleton && !c->value.is_pair();
        if (atomic) continue;
        if (only) return std::nullopt;
        only = c.get();
      }
      if (only && only->kind == TypeExpr::Kind::kCons) {
        return Restriction::of_expr(only->children[car ? 0 : 1]);
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

namespace {

// a ⊆ b, as far as the graph and syntax tell.
bool implies_restriction(const World& world, const Restriction& a, const Restriction& b) {
  if (b.is_all() || a == b) return true;
  if (a.kind == Restriction::Kind::kSingleton) return satisfies(world, b, a.value);
  if (a.kind == Restriction::Kind::kType && b.kind == Restriction::Kind::kType) {
    return world.subtypes().reaches(a.type, b.type);
  }
  return false;
}

}  // namespace

TypeSelection minimal_type(const World& world, std::span<const Restriction> restrictions) {
  std::vector<Restriction> rs;
  for (const auto& r : restrictions) {
    if (r.is_all()) continue;
    if (std::find(rs.begin(), rs.end(), r) == rs.end()) rs.push_back(r);
  }
  if (rs.empty()) return {Restriction::of_type("all"), {}};

  auto residual_for = [&](const Restriction& primary) {
    std::vector<Restriction> out;
    for (const auto& r : rs) {
      if (!(r == primary) && !implies_restriction(world, primary, r)) out.push_back(r);
    }
    return out;
  };

  for (const auto& r : rs) {
    if (r.kind == Restriction::Kind::kSingleton) return {r, residual_for(r)};
  }
  for (const auto& c : rs) {
    const bool below_all = std::all_of(rs.begin(), rs.end(), [&](const Restriction& o) {
      return implies_restriction(world, c, o);
    });
    if (below_all) {
      Restriction primary = c;
      // Equivalent candidates collapse to the component's representative.
      const bool tied = c.kind == Restriction::Kind::kType &&
                        std::any_of(rs.begin(), rs.end(), [&](const Restriction& o) {
                          return !(o == c) && o.kind == Restriction::Kind::kType &&
                                 world.subtypes().equivalent(c.type, o.type);
                        });
      if (tied) primary = Restriction::of_type(world.subtypes().representative(c.type));
      return {primary, {}};
    }
  }
  return {rs.front(), residual_for(rs.front())};
}

}  // namespace sedan
