#include "sedan/history.hpp"

#include <algorithm>

#include "sedan/error.hpp"

namespace sedan {

const HistoryNode* History::find(std::string_view id) const {
  for (const auto& n : nodes_) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

void History::record(HistoryNode node, const World& world) {
  if (find(node.id)) throw Error("duplicate goal id " + node.id);
  if (node.parent) {
    if (!find(*node.parent)) throw Error("unknown parent goal " + *node.parent);
    const HistoryNode& parent = *find(*node.parent);
    for (const auto& v : clause_vars(parent.clause)) {
      const bool mapped = std::any_of(node.var_map.begin(), node.var_map.end(),
                                      [&](const VarMapping& m) { return m.var == v; });
      if (!mapped) node.var_map.push_back({v, std::nullopt});
    }
    const TypeAlist inherited = accumulated_type_alist(parent.id, world);
    for (const auto& m : node.var_map) {
      if (!m.term || !m.term->is_var()) continue;
      if (const TypeAlistEntry* e = find_entry(inherited, m.var)) {
        for (const auto& r : e->restrictions) add_restriction(node.type_map, m.term->name(), r);
      }
    }
  }
  nodes_.push_back(std::move(node));
}

void History::erase(std::string_view id) {
  std::set<std::string> doomed{std::string(id)};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& n : nodes_) {
      if (n.parent && doomed.count(*n.parent) && doomed.insert(n.id).second) grew = true;
    }
  }
  std::erase_if(nodes_, [&](const HistoryNode& n) { return doomed.count(n.id) > 0; });
}

TypeAlist History::accumulated_type_alist(std::string_view id, const World& world) const {
  const HistoryNode* node = find(id);
  if (!node) throw Error("unknown goal " + std::string(id));
  TypeAlist alist = extract_restrictions(node->clause, world);
  for (const auto& e : node->type_map) {
    for (const auto& r : e.restrictions) add_restriction(alist, e.var, r);
  }
  return complete_alist(node->clause, std::move(alist));
}

LiftResult History::lift(std::string_view id, const Binding& assignment, const World& world,
                         const DontCareFiller& filler) const {
  LiftResult out;
  const HistoryNode* node = find(id);
  if (!node) {
    out.failure = "unknown goal " + std::string(id);
    return out;
  }
  auto fill = [&](const std::string& var) { return filler ? filler(var) : Value::nil(); };
  const Evaluator ev(world);
  Binding cur = assignment;
  std::set<std::string> dc;
  while (node->parent) {
    if (!node->liftable) {
      out.failure = "cannot lift through " + node->process + " at " + node->id;
      return out;
    }
    Binding up;
    std::set<std::string> up_dc;
    for (const auto& m : node->var_map) {
      if (!m.term) {
        up[m.var] = fill(m.var);
        up_dc.insert(m.var);
        continue;
      }
      Binding env = cur;
      bool touches_missing = false;
      for (const auto& v : free_vars_ordered(*m.term)) {
        if (!env.count(v)) {
          env[v] = fill(v);
          cur[v] = env[v];
          dc.insert(v);
          touches_missing = true;
        }
      }
      try {
        up[m.var] = ev.eval(*m.term, env);
      } catch (const Error& e) {
        out.failure = std::string("lifting ") + m.var + " at " + node->id + ": " + e.what();
        return out;
      }
      if (m.term->is_var() && (dc.count(m.term->name()) || touches_missing)) up_dc.insert(m.var);
    }
    cur = std::move(up);
    dc = std::move(up_dc);
    node = find(*node->parent);
    if (!node) {
      out.failure = "broken history";
      return out;
    }
  }
  for (const auto& v : clause_vars(node->clause)) {
    auto it = cur.find(v);
    if (it == cur.end()) {
      out.binding[v] = fill(v);
      out.dont_care.insert(v);
    } else {
      out.binding[v] = it->second;
      if (dc.count(v)) out.dont_care.insert(v);
    }
  }
  out.ok = true;
  return out;
}

std::string lifted_to_string(const LiftResult& lift, const std::vector<std::string>& order,
                             PrintStyle style) {
  std::vector<std::string> names;
  for (const auto& v : order) {
    if (lift.binding.count(v)) names.push_back(v);
  }
  for (const auto& [v, _] : lift.binding) {
    if (std::find(names.begin(), names.end(), v) == names.end()) names.push_back(v);
  }
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += (i + 1 == names.size()) ? " and " : ", ";
    const std::string value =
        lift.dont_care.count(names[i]) ? "?" : to_string(lift.binding.at(names[i]), style);
    out += "(" + to_string(Value::symbol(names[i]), style) + " " + value + ")";
  }
  return out;
}

}  // namespace sedan
