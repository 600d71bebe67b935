#include "sedan/type_expr.hpp"

#include "sedan/error.hpp"

namespace sedan {

TypeExprPtr TypeExpr::named(std::string name) {
  auto e = std::make_shared<TypeExpr>();
  e->kind = Kind::kNamed;
  e->name = std::move(name);
  return e;
}

TypeExprPtr TypeExpr::singleton(Value v) {
  auto e = std::make_shared<TypeExpr>();
  e->kind = Kind::kSingleton;
  e->value = std::move(v);
  return e;
}

TypeExprPtr TypeExpr::enumeration(std::vector<Value> values) {
  auto e = std::make_shared<TypeExpr>();
  e->kind = Kind::kEnum;
  e->values = std::move(values);
  return e;
}

TypeExprPtr TypeExpr::one_of(std::vector<TypeExprPtr> branches) {
  auto e = std::make_shared<TypeExpr>();
  e->kind = Kind::kOneOf;
  e->children = std::move(branches);
  return e;
}

TypeExprPtr TypeExpr::cons(TypeExprPtr car, TypeExprPtr cdr) {
  auto e = std::make_shared<TypeExpr>();
  e->kind = Kind::kCons;
  e->children = {std::move(car), std::move(cdr)};
  return e;
}

TypeExprPtr TypeExpr::list_of(TypeExprPtr element) {
  auto e = std::make_shared<TypeExpr>();
  e->kind = Kind::kListOf;
  e->children = {std::move(element)};
  return e;
}

TypeExprPtr TypeExpr::set_of(TypeExprPtr element) {
  auto e = std::make_shared<TypeExpr>();
  e->kind = Kind::kSet;
  e->children = {std::move(element)};
  return e;
}

TypeExprPtr TypeExpr::record(std::string tag, std::vector<std::string> fields,
                             std::vector<TypeExprPtr> types) {
  auto e = std::make_shared<TypeExpr>();
  e->kind = Kind::kRecord;
  e->name = std::move(tag);
  e->fields = std::move(fields);
  e->children = std::move(types);
  return e;
}

TypeExprPtr TypeExpr::custom(std::string recognizer, std::string enumerator) {
  auto e = std::make_shared<TypeExpr>();
  e->kind = Kind::kCustom;
  e->name = std::move(recognizer);
  e->enumerator = std::move(enumerator);
  return e;
}

namespace {

[[noreturn]] void fail(const Sexp& s, const std::string& msg) { throw ParseError(msg, s.pos); }

bool is_field_spec(const Sexp& s) {
  return s.is_list() && s.items.size() == 1 && s.tail.size() == 1 && s.items[0].is_symbol();
}

TypeExprPtr parse_fields(const Sexp& s, std::size_t first, const std::string& tag) {
  std::vector<std::string> names;
  std::vector<TypeExprPtr> types;
  for (std::size_t i = first; i < s.items.size(); ++i) {
    const Sexp& f = s.items[i];
    if (!is_field_spec(f)) fail(f, "record field must be (name . type)");
    names.push_back(f.items[0].symbol_name());
    types.push_back(parse_type_expr(f.tail.front(), tag));
  }
  if (names.empty()) fail(s, "record needs at least one field");
  return TypeExpr::record(tag, std::move(names), std::move(types));
}

void expect_count(const Sexp& s, std::size_t n) {
  if (s.items.size() - 1 != n) {
    fail(s, "'" + s.items[0].symbol_name() + "' expects " + std::to_string(n) +
                " argument(s)");
  }
}

}  // namespace

TypeExprPtr parse_type_expr(const Sexp& s, const std::string& defname) {
  if (s.is_atom()) {
    if (s.atom.is_symbol() && !s.atom.is_nil() && !s.atom.is_t()) {
      return TypeExpr::named(s.atom.symbol_name());
    }
    return TypeExpr::singleton(s.atom);
  }
  if (!s.tail.empty() || !s.items[0].is_symbol()) fail(s, "malformed type expression");
  const std::string& head = s.items[0].symbol_name();
  if (head == "quote") {
    expect_count(s, 1);
    return TypeExpr::singleton(s.items[1].to_value());
  }
  if (head == "enum") {
    std::vector<Value> values;
    if (s.items.size() == 2) {
      Value v = s.items[1].to_value();
      // (enum '(a b c)) or (enum (a b c))
      if (v.is_pair() && v.car().is_symbol() && v.car().symbol_name() == "quote") {
        v = v.cdr().car();
      }
      values = v.list_elements();
    } else {
      for (std::size_t i = 1; i < s.items.size(); ++i) values.push_back(s.items[i].to_value());
    }
    if (values.empty()) fail(s, "enum needs at least one value");
    return TypeExpr::enumeration(std::move(values));
  }
  if (head == "oneof") {
    if (s.items.size() < 2) fail(s, "oneof needs at least one branch");
    std::vector<TypeExprPtr> branches;
    for (std::size_t i = 1; i < s.items.size(); ++i) {
      branches.push_back(parse_type_expr(s.items[i], defname));
    }
    if (branches.size() == 1) return branches.front();
    return TypeExpr::one_of(std::move(branches));
  }
  if (head == "cons") {
    expect_count(s, 2);
    return TypeExpr::cons(parse_type_expr(s.items[1], defname),
                          parse_type_expr(s.items[2], defname));
  }
  if (head == "list") {
    TypeExprPtr acc = TypeExpr::singleton(Value::nil());
    for (std::size_t i = s.items.size(); i-- > 1;) {
      acc = TypeExpr::cons(parse_type_expr(s.items[i], defname), acc);
    }
    return acc;
  }
  if (head == "listof") {
    expect_count(s, 1);
    return TypeExpr::list_of(parse_type_expr(s.items[1], defname));
  }
  if (head == "set") {
    expect_count(s, 1);
    return TypeExpr::set_of(parse_type_expr(s.items[1], defname));
  }
  if (head == "record") return parse_fields(s, 1, defname);
  if (head == "custom") {
    expect_count(s, 2);
    if (!s.items[1].is_symbol() || !s.items[2].is_symbol()) {
      fail(s, "custom expects a recognizer and an enumerator function name");
    }
    return TypeExpr::custom(s.items[1].symbol_name(), s.items[2].symbol_name());
  }
  // (Tag (field . type) ...) is an inline record constructor.
  if (s.items.size() >= 2 && is_field_spec(s.items[1])) return parse_fields(s, 1, head);
  fail(s, "unknown type constructor '" + head + "'");
}

std::string to_string(const TypeExpr& e) {
  switch (e.kind) {
    case TypeExpr::Kind::kNamed:
      return e.name;
    case TypeExpr::Kind::kSingleton:
      return to_string(Term::quote(e.value));
    case TypeExpr::Kind::kEnum:
      return "(enum '" + to_string(Value::list(e.values)) + ")";
    case TypeExpr::Kind::kOneOf: {
      std::string out = "(oneof";
      for (const auto& c : e.children) out += " " + to_string(*c);
      return out + ")";
    }
    case TypeExpr::Kind::kCons: {
      // Print nil-terminated chains with list sugar.
      std::vector<const TypeExpr*> items;
      const TypeExpr* cur = &e;
      while (cur->kind == TypeExpr::Kind::kCons) {
        items.push_back(cur->children[0].get());
        cur = cur->children[1].get();
      }
      if (cur->kind == TypeExpr::Kind::kSingleton && cur->value.is_nil()) {
        std::string out = "(list";
        for (const auto* i : items) out += " " + to_string(*i);
        return out + ")";
      }
      return "(cons " + to_string(*e.children[0]) + " " + to_string(*e.children[1]) + ")";
    }
    case TypeExpr::Kind::kListOf:
      return "(listof " + to_string(*e.children[0]) + ")";
    case TypeExpr::Kind::kSet:
      return "(set " + to_string(*e.children[0]) + ")";
    case TypeExpr::Kind::kRecord: {
      std::string out = "(" + e.name;
      for (std::size_t i = 0; i < e.fields.size(); ++i) {
        out += " (" + e.fields[i] + " . " + to_string(*e.children[i]) + ")";
      }
      return out + ")";
    }
    case TypeExpr::Kind::kCustom:
      return "(custom " + e.name + " " + e.enumerator + ")";
  }
  return "?";
}

void collect_type_refs(const TypeExpr& e, std::vector<std::string>& out) {
  if (e.kind == TypeExpr::Kind::kNamed) {
    out.push_back(e.name);
    return;
  }
  for (const auto& c : e.children) collect_type_refs(*c, out);
}

const TypeEntry* TypeTable::find(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : it->second.get();
}

const TypeEntry* TypeTable::by_recognizer(std::string_view fn) const {
  auto it = recognizers_.find(fn);
  return it == recognizers_.end() ? nullptr : find(it->second);
}

const TypeEntry* TypeTable::by_enumerator(std::string_view fn) const {
  auto it = enumerators_.find(fn);
  return it == enumerators_.end() ? nullptr : find(it->second);
}

void TypeTable::insert(TypeEntryPtr entry) {
  recognizers_[entry->recognizer_name] = entry->name;
  enumerators_[entry->enumerator_name] = entry->name;
  entries_[entry->name] = std::move(entry);
}

}  // namespace sedan
