#include "sedan/processes.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace sedan {

namespace {

bool in(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string strip_index(const std::string& name) {
  std::size_t end = name.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(name[end - 1]))) --end;
  return end == 0 ? name : name.substr(0, end);
}

bool mentions_car_or_cdr(const Term& t, const std::string& v) {
  if (!t.is_app()) return false;
  if ((t.is_app("car") || t.is_app("cdr")) && t.arg(0).is_var() && t.arg(0).name() == v) {
    return true;
  }
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return mentions_car_or_cdr(a, v); });
}

}  // namespace

std::vector<std::string> fresh_indexed_names(const std::string& base,
                                             const std::vector<std::string>& used,
                                             std::size_t count) {
  const std::string root = strip_index(base);
  std::vector<std::string> out;
  for (std::size_t i = 1; out.size() < count; ++i) {
    std::string name = root + std::to_string(i);
    if (name == base || in(used, name) || in(out, name)) continue;
    out.push_back(std::move(name));
  }
  return out;
}

std::optional<ProcessStep> eliminate_destructors(const Clause& clause, const TypeAlist& alist,
                                                 const World& world) {
  for (std::size_t i = 0; i + 1 < clause.size(); ++i) {
    const Term& lit = clause[i];
    if (!lit.is_app("not") || !lit.arg(0).is_app("consp") || !lit.arg(0).arg(0).is_var()) continue;
    const std::string v = lit.arg(0).arg(0).name();
    const bool used = std::any_of(clause.begin(), clause.end(),
                                  [&](const Term& l) { return mentions_car_or_cdr(l, v); });
    if (!used) continue;

    const std::vector<std::string> vars = clause_vars(clause);
    const auto fresh = fresh_indexed_names(v, vars, 2);
    const Term a = Term::var(fresh[0]);
    const Term d = Term::var(fresh[1]);
    const Term var = Term::var(v);
    const Term car = Term::app("car", {var});
    const Term cdr = Term::app("cdr", {var});
    const Term rebuilt = Term::app("cons", {a, d});

    ProcessStep step;
    for (std::size_t j = 0; j < clause.size(); ++j) {
      if (j == i) continue;
      Term t = replace_subterm(clause[j], car, a);
      t = replace_subterm(t, cdr, d);
      t = substitute(t, {{v, rebuilt}});
      step.child.push_back(std::move(t));
    }
    for (const auto& p : vars) {
      step.var_map.push_back({p, p == v ? rebuilt : Term::var(p)});
    }
    step.forward_map[fresh[0]] = car;
    step.forward_map[fresh[1]] = cdr;
    for (const auto& p : vars) {
      if (p != v) step.forward_map[p] = Term::var(p);
    }
    if (const TypeAlistEntry* e = find_entry(alist, v)) {
      const TypeSelection sel = minimal_type(world, e->restrictions);
      if (auto r = component_restriction(world, sel.primary, true)) {
        add_restriction(step.type_map, fresh[0], *r);
      }
      if (auto r = component_restriction(world, sel.primary, false)) {
        add_restriction(step.type_map, fresh[1], *r);
      }
    }
    step.note = v + " := " + to_string(rebuilt);
    return step;
  }
  return std::nullopt;
}

namespace {

void collect_subterms(const Term& t, std::vector<Term>& order,
                      std::unordered_map<Term, std::size_t, TermHash>& counts) {
  if (!t.is_app()) return;
  if (counts[t]++ == 0) order.push_back(t);
  for (const auto& a : t.args()) collect_subterms(a, order, counts);
}

}  // namespace

std::optional<ProcessStep> generalize_clause(const Clause& clause) {
  std::vector<Term> order;
  std::unordered_map<Term, std::size_t, TermHash> counts;
  for (const auto& lit : clause) collect_subterms(lit, order, counts);
  const Term* best = nullptr;
  for (const auto& t : order) {
    if (counts[t] < 2) continue;
    if (!best || t.size() > best->size()) best = &t;
  }
  if (!best) return std::nullopt;

  const std::vector<std::string> vars = clause_vars(clause);
  std::string fresh;
  for (const char* c : {"n", "m", "k", "j", "i"}) {
    if (!in(vars, c)) {
      fresh = c;
      break;
    }
  }
  for (std::size_t i = 1; fresh.empty(); ++i) {
    if (!in(vars, "n" + std::to_string(i))) fresh = "n" + std::to_string(i);
  }
  const Term g = Term::var(fresh);
  ProcessStep step;
  for (const auto& lit : clause) step.child.push_back(replace_subterm(lit, *best, g));
  const std::vector<std::string> child_vars = clause_vars(step.child);
  for (const auto& p : vars) {
    if (in(child_vars, p)) {
      step.var_map.push_back({p, Term::var(p)});
      step.forward_map[p] = Term::var(p);
    } else {
      step.var_map.push_back({p, std::nullopt});
    }
  }
  step.forward_map[fresh] = *best;
  step.liftable = false;
  step.note = fresh + " := " + to_string(*best);
  return step;
}

}  // namespace sedan
