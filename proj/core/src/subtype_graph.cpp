#include "sedan/subtype_graph.hpp"

#include <algorithm>
#include <functional>

#include "sedan/error.hpp"

namespace sedan {

void SubtypeGraph::add_vertex(const std::string& name) {
  if (ids_.count(name)) return;
  ids_.emplace(name, names_.size());
  names_.push_back(name);
  out_.emplace_back();
  recompute();
}

void SubtypeGraph::add_edge(const std::string& from, const std::string& to) {
  add_vertex(from);
  add_vertex(to);
  const std::size_t a = index(from);
  const std::size_t b = index(to);
  if (a == b) return;
  if (out_[a].insert(b).second) recompute();
}

bool SubtypeGraph::has_vertex(std::string_view name) const { return ids_.count(name) != 0; }

bool SubtypeGraph::has_edge(std::string_view from, std::string_view to) const {
  if (!has_vertex(from) || !has_vertex(to)) return false;
  return out_[index(from)].count(index(to)) != 0;
}

std::size_t SubtypeGraph::index(std::string_view name) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) throw Error("unknown type in subtype graph: " + std::string(name));
  return it->second;
}

bool SubtypeGraph::reaches(std::string_view from, std::string_view to) const {
  if (!has_vertex(from) || !has_vertex(to)) return from == to;
  return closure_[comp_of_[index(from)]][comp_of_[index(to)]];
}

bool SubtypeGraph::equivalent(std::string_view a, std::string_view b) const {
  if (!has_vertex(a) || !has_vertex(b)) return a == b;
  return comp_of_[index(a)] == comp_of_[index(b)];
}

const std::string& SubtypeGraph::representative(std::string_view name) const {
  return component_of(name).front();
}

const std::vector<std::string>& SubtypeGraph::component_of(std::string_view name) const {
  return components_[comp_of_[index(name)]];
}

std::vector<std::pair<std::string, std::string>> SubtypeGraph::edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t a = 0; a < out_.size(); ++a) {
    for (std::size_t b : out_[a]) out.emplace_back(names_[a], names_[b]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void SubtypeGraph::recompute() {
  const std::size_t n = names_.size();
  // Tarjan's algorithm.
  std::vector<long> disc(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  long counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    disc[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : out_[v]) {
      if (disc[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], disc[w]);
      }
    }
    if (low[v] == disc[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      comps.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (disc[v] < 0) visit(v);
  }

  comp_of_.assign(n, 0);
  components_.clear();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    std::vector<std::string> members;
    for (std::size_t v : comps[c]) {
      comp_of_[v] = c;
      members.push_back(names_[v]);
    }
    std::sort(members.begin(), members.end());
    components_.push_back(std::move(members));
  }

  // Tarjan emits components in reverse topological order: every successor
  // component of c has a smaller index, so a single forward pass suffices.
  const std::size_t m = comps.size();
  closure_.assign(m, std::vector<bool>(m, false));
  for (std::size_t c = 0; c < m; ++c) {
    closure_[c][c] = true;
    for (std::size_t v : comps[c]) {
      for (std::size_t w : out_[v]) {
        const std::size_t d = comp_of_[w];
        if (d == c) continue;
        for (std::size_t k = 0; k < m; ++k) {
          if (closure_[d][k]) closure_[c][k] = true;
        }
      }
    }
  }
}

}  // namespace sedan
