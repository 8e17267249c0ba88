#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "test_util.hpp"

#include "ck/classify.hpp"

using namespace ck;
using namespace ck::testutil;

namespace {

DirectedGraph single_loop() { return DirectedGraph({"v"}, {{{"e", "v", "v"}}}); }

DirectedGraph double_loop() {
  return DirectedGraph({"v"}, {{{"e", "v", "v"}, {"f", "v", "v"}}});
}

DirectedGraph big_cycle(int n) {
  std::vector<std::string> verts;
  std::vector<std::array<std::string, 3>> edges;
  for (int i = 0; i < n; ++i) verts.push_back("c" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    edges.push_back({"e" + std::to_string(i), verts[i], verts[(i + 1) % n]});
  return DirectedGraph(verts, edges);
}

}  // namespace

TEST_CASE("exit-free cycles become torus corners with the right period") {
  const auto one = torus_corners(single_loop());
  REQUIRE(one.size() == 1);
  CHECK(one[0].period == 1);
  CHECK(torus_corners(double_loop()).empty());
  const auto big = torus_corners(big_cycle(8));
  REQUIRE(big.size() == 1);
  CHECK(big[0].period == 8);
  // Identity matrix: two disjoint loops, two corners.
  const auto two = torus_corners(graph_of_matrix(make_matrix({{1, 0}, {0, 1}})));
  CHECK(two.size() == 2);
  const Json j = torus_corner_json(single_loop(), one[0]);
  CHECK(j["type"] == "torus_corner");
  CHECK(j["period"] == 1);
}

TEST_CASE("exit-cycle vertex mask matches brute-force cycle enumeration") {
  std::mt19937 rng(808);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 7;
    const DirectedGraph g = oracle::random_graph(rng, n, 2 * n);
    const std::vector<bool> mask = cycle_with_exit_vertices(g);
    const auto cycles = oracle::cycle_edge_lists(g);
    std::vector<bool> brute(n, false);
    for (const auto& cyc : cycles) {
      bool exit = false;
      for (int e : cyc)
        if (g.out_degree(g.edge(e).src) >= 2) exit = true;
      if (!exit) continue;
      for (int e : cyc) brute[g.edge(e).src] = true;
    }
    CHECK(mask == brute);
  }
}

TEST_CASE("AF detection on graphs") {
  const Verdict yes = is_af(DirectedGraph({"a", "b"}, {{{"e", "a", "b"}}}));
  CHECK(yes.value == Truth::Yes);
  CHECK(yes.certificate["type"] == "acyclic");
  const Verdict no = is_af(double_loop());
  CHECK(no.value == Truth::No);
  CHECK(no.certificate["edges"].size() == 1);
}

TEST_CASE("AF detection on matrices reports the exit flag") {
  const Verdict ident = is_af(make_matrix({{1, 0}, {0, 1}}));
  CHECK(ident.value == Truth::No);
  CHECK(ident.certificate["has_exit"] == false);
  CHECK(ident.certificate["period"] == 1);
  const Verdict ones = is_af(make_matrix({{1, 1}, {1, 1}}));
  CHECK(ones.value == Truth::No);
  CHECK(ones.certificate["has_exit"] == true);
  const Verdict zero = is_af(make_matrix({{0, 1}, {0, 0}}));
  CHECK(zero.value == Truth::Unknown);  // zero row violates the hypothesis
}

TEST_CASE("pure infiniteness on the canonical small graphs") {
  CHECK(is_purely_infinite(double_loop()).value == Truth::Yes);
  const Verdict loop = is_purely_infinite(single_loop());
  CHECK(loop.value == Truth::No);
  CHECK(loop.certificate["type"] == "quotient_obstruction");
  CHECK(loop.certificate["flavor"] == "torus_corner");
  const DirectedGraph feed({"v", "w"}, {{{"f", "v", "w"},
                                         {"l1", "w", "w"},
                                         {"l2", "w", "w"}}});
  CHECK(is_purely_infinite(feed).value == Truth::Yes);
  // Sinks violate the hypothesis.
  const Verdict sink =
      is_purely_infinite(DirectedGraph({"a", "b"}, {{{"e", "a", "b"}}}));
  CHECK(sink.value == Truth::Unknown);
  CHECK(sink.certificate["type"] == "hypothesis_violation");
}

TEST_CASE("quotient scan agrees with the subset-filter oracle") {
  std::mt19937 rng(1907);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 7;
    const DirectedGraph g = oracle::random_graph_no_sinks(rng, n, 2 * n);
    const Verdict v = is_purely_infinite(g);
    REQUIRE(v.value != Truth::Unknown);
    CHECK((v.value == Truth::Yes) == oracle::purely_infinite_subsets(g));
  }
}

TEST_CASE("global verdict equals the conjunction over vertex projections") {
  std::mt19937 rng(276);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 6;
    const DirectedGraph g = oracle::random_graph_no_sinks(rng, n, 2 * n);
    bool all = true;
    for (int v = 0; v < n; ++v) {
      const Verdict pv = properly_infinite_vertex(g, g.vertex_id(v));
      REQUIRE(pv.value != Truth::Unknown);
      if (pv.value != Truth::Yes) all = false;
    }
    const Verdict global = is_purely_infinite(g);
    CHECK((global.value == Truth::Yes) == all);
  }
}

TEST_CASE("unknown vertex id is rejected") {
  CHECK_THROWS_AS(properly_infinite_vertex(double_loop(), "nope"),
                  InvalidArgumentError);
}
