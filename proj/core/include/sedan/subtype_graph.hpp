#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sedan {

/// Directed graph over type names; an edge A -> B records A ⊆ B.
///
/// Strongly connected components are types with provably equal extents.
/// After every insertion the SCC partition and the transitive closure of
/// the condensation are recomputed, so `reaches` is a constant-time lookup.
class SubtypeGraph {
 public:
  void add_vertex(const std::string& name);
  /// Adds both endpoints if missing. Self-loops are accepted and ignored.
  void add_edge(const std::string& from, const std::string& to);

  bool has_vertex(std::string_view name) const;
  bool has_edge(std::string_view from, std::string_view to) const;
  /// from ⊆ to, reflexive and transitive.
  bool reaches(std::string_view from, std::string_view to) const;
  bool equivalent(std::string_view a, std::string_view b) const;
  /// Lexicographically least member of the component containing `name`.
  const std::string& representative(std::string_view name) const;
  /// Members of the component containing `name`, sorted.
  const std::vector<std::string>& component_of(std::string_view name) const;

  std::size_t component_count() const { return components_.size(); }
  const std::vector<std::string>& vertices() const { return names_; }
  std::vector<std::pair<std::string, std::string>> edges() const;

 private:
  void recompute();
  std::size_t index(std::string_view name) const;

  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> ids_;
  std::vector<std::set<std::size_t>> out_;
  // Derived caches.
  std::vector<std::size_t> comp_of_;
  std::vector<std::vector<std::string>> components_;
  std::vector<std::vector<bool>> closure_;  // component x component
};

}  // namespace sedan
