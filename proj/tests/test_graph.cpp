#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"

#include "ck/graph.hpp"

using namespace ck;

namespace {

DirectedGraph triangle_with_chord() {
  return DirectedGraph({"a", "b", "c"}, {{{"ab", "a", "b"},
                                          {"bc", "b", "c"},
                                          {"ca", "c", "a"},
                                          {"chord", "b", "a"}}});
}

std::multiset<std::vector<int>> cycle_edge_sets(
    const std::vector<Path>& cycles) {
  std::multiset<std::vector<int>> out;
  for (const Path& c : cycles) {
    std::vector<int> e = c.edges;
    std::sort(e.begin(), e.end());
    out.insert(std::move(e));
  }
  return out;
}

std::multiset<std::vector<int>> cycle_edge_sets(
    const std::vector<std::vector<int>>& cycles) {
  std::multiset<std::vector<int>> out;
  for (std::vector<int> e : cycles) {
    std::sort(e.begin(), e.end());
    out.insert(std::move(e));
  }
  return out;
}

}  // namespace

TEST_CASE("construction sorts ids and wires incidence") {
  // Given out of order; indices follow sorted ids.
  const DirectedGraph g({"z", "a", "m"},
                        {{{"e2", "z", "a"}, {"e1", "a", "m"}}});
  CHECK(g.vertex_id(0) == "a");
  CHECK(g.vertex_id(1) == "m");
  CHECK(g.vertex_id(2) == "z");
  CHECK(g.edge(0).id == "e1");
  CHECK(g.vertex_index("m") == 1);
  CHECK(g.vertex_index("missing") == -1);
  CHECK(g.edge_index("e2") == 1);
  CHECK(g.out_degree(g.vertex_index("z")) == 1);
  CHECK(g.in_degree(g.vertex_index("m")) == 1);
}

TEST_CASE("construction rejects duplicates and dangling endpoints") {
  CHECK_THROWS_AS(DirectedGraph({"a", "a"}, {}), InvalidArgumentError);
  CHECK_THROWS_AS(DirectedGraph({"a"}, {{{"e", "a", "b"}}}),
                  InvalidArgumentError);
  CHECK_THROWS_AS(
      DirectedGraph({"a"}, {{{"e", "a", "a"}, {"e", "a", "a"}}}),
      InvalidArgumentError);
}

TEST_CASE("degree profile lists sinks by id") {
  const DirectedGraph g({"a", "b", "c"}, {{{"e1", "a", "b"}}});
  const DegreeProfile prof = degree_profile(g);
  CHECK(prof.sinks == std::vector<std::string>{"b", "c"});
  CHECK(prof.has_zero_rows);
  CHECK(degree_profile(triangle_with_chord()).sinks.empty());
}

TEST_CASE("paths validate and expose endpoints") {
  const DirectedGraph g = triangle_with_chord();
  Path cyc{{g.edge_index("ab"), g.edge_index("bc"), g.edge_index("ca")}};
  CHECK(cyc.valid(g));
  CHECK(cyc.is_cycle(g));
  CHECK(cyc.source(g) == g.vertex_index("a"));
  CHECK(cyc.source_vertices(g) ==
        std::vector<int>{g.vertex_index("a"), g.vertex_index("b"),
                         g.vertex_index("c")});
  Path broken{{g.edge_index("ab"), g.edge_index("ca")}};
  CHECK_FALSE(broken.valid(g));
}

TEST_CASE("two loops on one vertex are two distinct simple cycles") {
  const DirectedGraph g({"v"}, {{{"e", "v", "v"}, {"f", "v", "v"}}});
  const auto cycles = simple_cycles(g);
  REQUIRE(cycles.size() == 2);
  CHECK(cycles[0].length() == 1);
  CHECK(cycles[1].length() == 1);
}

TEST_CASE("triangle with chord has the triangle and the 2-cycle") {
  const auto cycles = simple_cycles(triangle_with_chord());
  CHECK(cycles.size() == 2);
}

TEST_CASE("simple cycle enumeration matches DFS oracle on random graphs") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 6;
    const DirectedGraph g = oracle::random_graph(rng, n, 2 * n);
    CHECK(cycle_edge_sets(simple_cycles(g)) ==
          cycle_edge_sets(oracle::cycle_edge_lists(g)));
  }
}

TEST_CASE("cycle enumeration respects its cap") {
  // Complete digraph on 6 vertices has far more than 10 simple cycles.
  std::vector<std::array<std::string, 3>> edges;
  std::vector<std::string> verts;
  for (int i = 0; i < 6; ++i) verts.push_back("v" + std::to_string(i));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j)
        edges.push_back({"e" + std::to_string(i) + "_" + std::to_string(j),
                         verts[i], verts[j]});
  const DirectedGraph g(verts, edges);
  CHECK_THROWS_AS(simple_cycles(g, 10), CapExceededError);
}

TEST_CASE("find_any_cycle agrees with the oracle about cycle existence") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 7;
    const DirectedGraph g = oracle::random_graph(rng, n, n + trial % 5);
    const auto cyc = find_any_cycle(g);
    CHECK(cyc.has_value() == oracle::has_cycle(g));
    if (cyc) CHECK(cyc->is_cycle(g));
  }
}

TEST_CASE("cycle exits") {
  const DirectedGraph g = triangle_with_chord();
  Path tri{{g.edge_index("ab"), g.edge_index("bc"), g.edge_index("ca")}};
  CHECK(cycle_has_exit(g, tri));  // the chord leaves b
  const DirectedGraph loop({"v"}, {{{"e", "v", "v"}}});
  Path l{{0}};
  CHECK_FALSE(cycle_has_exit(loop, l));
  const DirectedGraph two({"v"}, {{{"e", "v", "v"}, {"f", "v", "v"}}});
  CHECK(cycle_has_exit(two, Path{{0}}));  // the other loop is an exit
}

TEST_CASE("strongly connected components match mutual reachability") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 7;
    const DirectedGraph g = oracle::random_graph(rng, n, 2 * n);
    const SccDecomposition scc = strongly_connected_components(g);
    const auto reach = oracle::reachability(g, false);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        const bool together = reach[u][v] && reach[v][u];
        CHECK(together == (scc.component_of[u] == scc.component_of[v]));
      }
    // Condensation must be acyclic and respect edge direction.
    for (int e = 0; e < g.edge_count(); ++e) {
      const int cu = scc.component_of[g.edge(e).src];
      const int cv = scc.component_of[g.edge(e).dst];
      if (cu != cv)
        CHECK(std::find(scc.condensation_out[cu].begin(),
                        scc.condensation_out[cu].end(),
                        cv) != scc.condensation_out[cu].end());
    }
  }
}

TEST_CASE("singleton component is cyclic only with a loop") {
  const DirectedGraph g({"a", "b"}, {{{"e", "a", "b"}, {"l", "b", "b"}}});
  const SccDecomposition scc = strongly_connected_components(g);
  CHECK_FALSE(scc.cyclic(g, scc.component_of[g.vertex_index("a")]));
  CHECK(scc.cyclic(g, scc.component_of[g.vertex_index("b")]));
}

TEST_CASE("closures match the Warshall oracle") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 8;
    const DirectedGraph g = oracle::random_graph(rng, n, 2 * n);
    const auto reach = oracle::reachability(g);
    const int s = trial % n;
    std::vector<bool> seed(n, false);
    seed[s] = true;
    const auto fwd = forward_closure(g, seed);
    const auto bwd = backward_closure(g, seed);
    for (int v = 0; v < n; ++v) {
      CHECK(fwd[v] == reach[s][v]);
      CHECK(bwd[v] == reach[v][s]);
    }
    const auto from = reachable_from(g, s);
    for (int v = 0; v < n; ++v)
      CHECK((std::find(from.begin(), from.end(), v) != from.end()) ==
            reach[s][v]);
  }
}
