#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "sedan/datadef.hpp"
#include "sedan/error.hpp"
#include "sedan/subtype_graph.hpp"

using namespace sedan;

namespace {

std::vector<Restriction> types(std::initializer_list<const char*> names) {
  std::vector<Restriction> out;
  for (const char* n : names) out.push_back(Restriction::of_type(n));
  return out;
}

}  // namespace

TEST_CASE("minimal type picks the smallest restriction") {
  const World w;
  TypeSelection s = minimal_type(w, types({"nat", "integer"}));
  CHECK(s.primary == Restriction::of_type("nat"));
  CHECK(s.residual.empty());
  s = minimal_type(w, types({"rational", "all", "pos", "integer"}));
  CHECK(s.primary == Restriction::of_type("pos"));
  CHECK(s.residual.empty());
  s = minimal_type(w, types({"all"}));
  CHECK(s.primary.is_all());
}

TEST_CASE("minimal type with incomparable restrictions keeps residual filters") {
  const World w;
  const TypeSelection s = minimal_type(w, types({"string", "nat"}));
  CHECK(s.primary == Restriction::of_type("string"));
  REQUIRE(s.residual.size() == 1);
  CHECK(s.residual[0] == Restriction::of_type("nat"));
}

TEST_CASE("a singleton restriction dominates") {
  const World w;
  std::vector<Restriction> rs = types({"integer"});
  rs.push_back(Restriction::of_value(Value::integer(42)));
  const TypeSelection s = minimal_type(w, rs);
  CHECK(s.primary == Restriction::of_value(Value::integer(42)));
  CHECK(s.residual.empty());
  rs.push_back(Restriction::of_type("string"));
  CHECK(minimal_type(w, rs).residual.size() == 1);
}

TEST_CASE("a crafted two-cycle collapses to one component") {
  World w = test::load("(defdata n1 nat) (defdata n2 nat)");
  CHECK(w.subtypes().equivalent("n1", "n2"));
  CHECK(w.subtypes().equivalent("n1", "nat"));
  CHECK(w.subtypes().representative("n2") == "n1");
  CHECK(w.subtypes().representative("nat") == "n1");
  const TypeSelection s = minimal_type(w, types({"n2", "nat"}));
  CHECK(s.primary == Restriction::of_type("n1"));

  SubtypeGraph g;
  g.add_edge("b", "a");
  g.add_edge("a", "b");
  g.add_edge("a", "c");
  CHECK(g.component_count() == 2);
  CHECK(g.representative("b") == "a");
  CHECK(g.component_of("a") == std::vector<std::string>{"a", "b"});
  CHECK(g.reaches("b", "c"));
  CHECK_FALSE(g.reaches("c", "b"));
}

TEST_CASE("add-subtype-edge rejects a false edge with a witness") {
  const World w;
  try {
    add_subtype_edge(w, "integer", "nat");
    FAIL("edge admitted");
  } catch (const AdmissionError& e) {
    CHECK(std::string(e.what()).find("-1") != std::string::npos);
  }
  const SubtypeEvidence ev = check_subtype_evidence(w, "integer", "nat", 100);
  CHECK_FALSE(ev.ok);
  CHECK(ev.index == 1);
  CHECK(ev.witness == Value::integer(-1));
  const World trusted = add_subtype_edge(w, "integer", "nat", true);
  CHECK(trusted.subtypes().equivalent("integer", "nat"));
}

TEST_CASE("defdata-subtype triple proper-cons") {
  const World w = test::load("(defdata triple (list pos pos pos)) (defdata-subtype triple proper-cons)");
  CHECK(w.subtypes().has_edge("triple", "proper-cons"));
  CHECK(w.subtypes().reaches("triple", "true-list"));
  CHECK(minimal_type(w, types({"proper-cons", "triple"})).primary ==
        Restriction::of_type("triple"));
}

TEST_CASE("closure matches brute-force reachability on random graphs") {
  std::mt19937_64 g(17);
  for (int round = 0; round < 30; ++round) {
    const int n = 2 + static_cast<int>(g() % 8);
    SubtypeGraph graph;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) graph.add_vertex("v" + std::to_string(i));
    const int edges = static_cast<int>(g() % (2 * n));
    for (int e = 0; e < edges; ++e) {
      const int a = static_cast<int>(g() % n), b = static_cast<int>(g() % n);
      graph.add_edge("v" + std::to_string(a), "v" + std::to_string(b));
      adj[a][b] = true;
    }
    // Floyd-Warshall oracle.
    auto reach = adj;
    for (int i = 0; i < n; ++i) reach[i][i] = true;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const std::string a = "v" + std::to_string(i), b = "v" + std::to_string(j);
        CHECK(graph.reaches(a, b) == reach[i][j]);
        CHECK(graph.equivalent(a, b) == (reach[i][j] && reach[j][i]));
      }
    }
  }
}
