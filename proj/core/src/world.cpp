#include "sedan/world.hpp"

#include <algorithm>

#include "sedan/builtins.hpp"
#include "sedan/datadef.hpp"
#include "sedan/error.hpp"

namespace sedan {

World::World() { install_base_types(types_, subtypes_); }

const FunctionDef* World::function(std::string_view name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : it->second.get();
}

const RewriteRule* World::rule(std::string_view name) const {
  for (const auto& r : rules_) {
    if (r->name == name) return r.get();
  }
  return nullptr;
}

long World::arity(std::string_view fn) const {
  if (const Builtin* b = find_builtin(fn)) {
    return b->min_arity == b->max_arity ? static_cast<long>(b->min_arity) : -2;
  }
  if (const FunctionDef* f = function(fn)) return static_cast<long>(f->formals.size());
  if (types_.by_recognizer(fn) || types_.by_enumerator(fn)) return 1;
  return -1;
}

bool World::is_boolean_function(std::string_view fn) const {
  if (sedan::is_boolean_function(fn)) return true;
  return types_.by_recognizer(fn) != nullptr;
}

bool World::name_in_use(std::string_view name) const {
  return find_builtin(name) || function(name) || types_.contains(name) ||
         types_.by_recognizer(name) || types_.by_enumerator(name) || rule(name);
}

World World::with_function(FunctionDef def) const {
  World w = *this;
  const std::string name = def.name;
  w.functions_[name] = std::make_shared<const FunctionDef>(std::move(def));
  return w;
}

World World::with_rule(RewriteRule rule) const {
  World w = *this;
  w.rules_.push_back(std::make_shared<const RewriteRule>(std::move(rule)));
  return w;
}

World World::with_type(TypeEntryPtr entry) const {
  World w = *this;
  w.subtypes_.add_vertex(entry->name);
  w.types_.insert(std::move(entry));
  return w;
}

World World::with_subtype_edge(const std::string& from, const std::string& to) const {
  World w = *this;
  w.subtypes_.add_edge(from, to);
  return w;
}

void check_term(const World& world, const Term& t, const std::vector<std::string>* bound,
                std::string_view self, std::size_t self_arity) {
  switch (t.kind()) {
    case Term::Kind::kQuote:
      return;
    case Term::Kind::kVar:
      if (bound && std::find(bound->begin(), bound->end(), t.name()) == bound->end()) {
        throw AdmissionError("unbound variable " + t.name());
      }
      return;
    case Term::Kind::kApp:
      break;
  }
  const std::size_t n = t.args().size();
  if (!self.empty() && t.name() == self) {
    if (n != self_arity) {
      throw AdmissionError(t.name() + " expects " + std::to_string(self_arity) +
                           " arguments, got " + std::to_string(n));
    }
  } else if (const Builtin* b = find_builtin(t.name())) {
    if (n < b->min_arity || n > b->max_arity) {
      throw AdmissionError("wrong number of arguments to " + t.name());
    }
  } else {
    const long a = world.arity(t.name());
    if (a < 0) throw AdmissionError("undefined function " + t.name());
    if (static_cast<std::size_t>(a) != n) {
      throw AdmissionError(t.name() + " expects " + std::to_string(a) + " arguments, got " +
                           std::to_string(n));
    }
  }
  for (const auto& a : t.args()) check_term(world, a, bound, self, self_arity);
}

World define_function(const World& world, const std::string& name,
                      const std::vector<std::string>& formals, const Term& body) {
  if (world.name_in_use(name)) throw AdmissionError("name " + name + " is already in use");
  for (std::size_t i = 0; i < formals.size(); ++i) {
    for (std::size_t j = i + 1; j < formals.size(); ++j) {
      if (formals[i] == formals[j]) throw AdmissionError("duplicate formal " + formals[i]);
    }
  }
  check_term(world, body, &formals, name, formals.size());
  FunctionDef def;
  def.name = name;
  def.formals = formals;
  def.body = body;
  def.recursive = [&] {
    bool found = false;
    std::vector<const Term*> stack{&body};
    while (!stack.empty() && !found) {
      const Term* t = stack.back();
      stack.pop_back();
      if (!t->is_app()) continue;
      if (t->name() == name) found = true;
      for (const auto& a : t->args()) stack.push_back(&a);
    }
    return found;
  }();
  return world.with_function(std::move(def));
}

namespace {

void split_conjuncts(const Term& t, std::vector<Term>& out) {
  if (t.is_app("and")) {
    split_conjuncts(t.arg(0), out);
    split_conjuncts(t.arg(1), out);
  } else if (!t.is_t()) {
    out.push_back(t);
  }
}

bool subset_vars(const std::vector<Term>& terms, const std::set<std::string>& allowed,
                 std::string* missing) {
  for (const auto& t : terms) {
    for (const auto& v : free_vars(t)) {
      if (!allowed.count(v)) {
        *missing = v;
        return false;
      }
    }
  }
  return true;
}

}  // namespace

World define_rule(const World& world, const std::string& name, const Term& formula,
                  bool enabled) {
  if (world.rule(name)) throw AdmissionError("rule " + name + " is already defined");
  check_term(world, formula, nullptr);
  RewriteRule rule;
  rule.name = name;
  rule.enabled = enabled;
  Term concl = formula;
  if (formula.is_app("implies")) {
    split_conjuncts(formula.arg(0), rule.hyps);
    concl = formula.arg(1);
  }
  if (concl.is_app("equal")) {
    rule.lhs = concl.arg(0);
    rule.rhs = concl.arg(1);
  } else if (concl.is_app("not") && concl.arg(0).is_app()) {
    rule.lhs = concl.arg(0);
    rule.rhs = Term::nil();
  } else if (concl.is_app()) {
    rule.lhs = concl;
    rule.rhs = Term::t();
    rule.iff = !world.is_boolean_function(concl.name());
  } else {
    throw AdmissionError("rule " + name + " does not conclude with a function application");
  }
  if (!rule.lhs.is_app() || rule.lhs.is_app("if")) {
    throw AdmissionError("rule " + name + " has an unusable left-hand side " +
                         to_string(rule.lhs));
  }
  const std::set<std::string> lhs_vars = free_vars(rule.lhs);
  std::string missing;
  std::vector<Term> others = rule.hyps;
  others.push_back(rule.rhs);
  if (!subset_vars(others, lhs_vars, &missing)) {
    throw AdmissionError("rule " + name + ": variable " + missing +
                         " does not occur in the left-hand side");
  }
  return world.with_rule(std::move(rule));
}

}  // namespace sedan
