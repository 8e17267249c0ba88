#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "test_util.hpp"

#include "ck/classify.hpp"
#include "ck/shiftspace.hpp"

using namespace ck;
using namespace ck::testutil;

namespace {

const AdjacencyMatrix kAllOnes2 = make_matrix({{1, 1}, {1, 1}});
const AdjacencyMatrix kIdent2 = make_matrix({{1, 0}, {0, 1}});
const AdjacencyMatrix kSwap2 = make_matrix({{0, 1}, {1, 0}});
const AdjacencyMatrix kLowerFull = make_matrix({{0, 1}, {1, 1}});

/// Independent aperiodicity oracle.  A vertex admits a path that is not
/// eventually periodic iff it reaches a strongly connected component that is
/// cyclic but not a lone simple cycle, i.e. one with more internal edges
/// than vertices (strong connectivity with one internal out-edge per vertex
/// forces a single cycle; an extra edge forces a branching vertex, which
/// yields two distinct cycles and hence free concatenation choices forever).
std::vector<bool> aperiodic_vertices(const DirectedGraph& g) {
  const auto reach = oracle::reachability(g, true);
  const int n = g.vertex_count();
  // Strongly connected components by mutual reachability.
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int v = 0; v < n; ++v) {
    if (comp[v] >= 0) continue;
    for (int u = 0; u < n; ++u)
      if (reach[v][u] && reach[u][v]) comp[u] = ncomp;
    ++ncomp;
  }
  std::vector<int> verts(ncomp, 0), inside(ncomp, 0);
  std::vector<bool> cyclic(ncomp, false);
  for (int v = 0; v < n; ++v) ++verts[comp[v]];
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (comp[ed.src] != comp[ed.dst]) continue;
    ++inside[comp[ed.src]];
    cyclic[comp[ed.src]] = true;
  }
  std::vector<bool> out(n, false);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u)
      if (reach[v][u] && cyclic[comp[u]] && inside[comp[u]] > verts[comp[u]])
        out[v] = true;
  return out;
}

std::vector<Cylinder> sorted_unique(std::vector<Cylinder> cs) {
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  return cs;
}

}  // namespace

TEST_CASE("cylinder validation") {
  CHECK_NOTHROW(validate_cylinder(kAllOnes2, {{1, 2, 1}}));
  CHECK_THROWS_AS(validate_cylinder(kAllOnes2, {{}}), InvalidArgumentError);
  CHECK_THROWS_AS(validate_cylinder(kAllOnes2, {{0}}), InvalidArgumentError);
  CHECK_THROWS_AS(validate_cylinder(kAllOnes2, {{3}}), InvalidArgumentError);
  CHECK_THROWS_AS(validate_cylinder(kIdent2, {{1, 2}}), InvalidArgumentError);
}

TEST_CASE("cylinder set order") {
  CHECK(cylinder_compare(kAllOnes2, {{1, 2}}, {{1, 2}}) ==
        CylinderOrder::Equal);
  CHECK(cylinder_compare(kAllOnes2, {{1, 2}}, {{1}}) ==
        CylinderOrder::StrictSubset);
  CHECK(cylinder_compare(kAllOnes2, {{1}}, {{1, 2}}) ==
        CylinderOrder::StrictSuperset);
  CHECK(cylinder_compare(kAllOnes2, {{1}}, {{2}}) == CylinderOrder::Disjoint);
  // Deterministic continuation: extending a word without branching does not
  // shrink the cylinder, so the comparison is Equal as sets.
  CHECK(cylinder_compare(kSwap2, {{1, 2}}, {{1}}) == CylinderOrder::Equal);
  CHECK(cylinder_compare(kSwap2, {{1, 2, 1, 2}}, {{1, 2}}) ==
        CylinderOrder::Equal);
  CHECK(cylinder_order_name(CylinderOrder::StrictSubset) ==
        std::string("strict_subset"));
}

TEST_CASE("shift images split over reachable vertices") {
  // Fewer drops than the word holds: one shorter cylinder.
  const auto one = shift_image(kAllOnes2, {{1, 2, 1}}, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].word == std::vector<int>{2, 1});
  // Dropping the whole word splits over the successors of the last vertex.
  const auto split = shift_image(kAllOnes2, {{1}}, 1);
  REQUIRE(split.size() == 2);
  CHECK(split[0].word == std::vector<int>{1});
  CHECK(split[1].word == std::vector<int>{2});
  // Identity matrix: paths never leave their vertex.
  const auto stay = shift_image(kIdent2, {{2}}, 5);
  REQUIRE(stay.size() == 1);
  CHECK(stay[0].word == std::vector<int>{2});
}

TEST_CASE("shift images compose like iterated maps") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 4;
    const AdjacencyMatrix a = oracle::random_matrix_no_zero_rows(rng, n, 0.5);
    const DirectedGraph g = graph_of_matrix(a);
    // All valid words of length ≤ 3, by direct enumeration.
    std::vector<std::vector<int>> words;
    for (int v = 1; v <= n; ++v) words.push_back({v});
    for (size_t i = 0; i < words.size(); ++i) {
      if (words[i].size() >= 3) continue;
      for (int v = 1; v <= n; ++v)
        if (a.a[words[i].back() - 1][v - 1] == 1) {
          auto w = words[i];
          w.push_back(v);
          words.push_back(std::move(w));
        }
    }
    for (const auto& w : words) {
      for (int i = 0; i <= 3; ++i) {
        for (int j = 0; j <= 3; ++j) {
          std::vector<Cylinder> composed;
          for (const Cylinder& mid : shift_image(a, {w}, i))
            for (const Cylinder& c : shift_image(a, mid, j))
              composed.push_back(c);
          CHECK(sorted_unique(std::move(composed)) ==
                sorted_unique(shift_image(a, {w}, i + j)));
        }
      }
    }
  }
}

TEST_CASE("shift iteration count is capped") {
  CHECK_THROWS_AS(shift_image(kAllOnes2, {{1}}, (1 << 20) + 2),
                  CapExceededError);
}

TEST_CASE("contraction witnesses on the standard matrices") {
  // Full 2×2 matrix: the vertex itself branches, so the witness wraps the
  // self-loop once.
  const ContractionWitness w1 = contraction_witness(kAllOnes2, 1);
  CHECK(w1.w.word == std::vector<int>{1, 1});
  CHECK(w1.n == 0);
  CHECK(w1.m == 1);

  // Vertex 1 must first walk to the branching vertex 2.
  const ContractionWitness w2 = contraction_witness(kLowerFull, 1);
  CHECK(w2.w.word == std::vector<int>{1, 2, 2});
  CHECK(w2.n == 1);
  CHECK(w2.m == 2);

  // Exit-free cycles admit no contraction.
  CHECK_THROWS_AS(contraction_witness(kIdent2, 1), HypothesisError);
  CHECK_THROWS_AS(contraction_witness(kSwap2, 2), HypothesisError);
  // Zero rows violate the standing hypothesis.
  CHECK_THROWS_AS(contraction_witness(make_matrix({{0, 1}, {0, 0}}), 1),
                  HypothesisError);
}

TEST_CASE("contraction witnesses verify wherever the oracle promises one") {
  std::mt19937 rng(1313);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 5;
    const AdjacencyMatrix a = oracle::random_matrix_no_zero_rows(rng, n, 0.4);
    const DirectedGraph g = graph_of_matrix(a);
    for (int v = 0; v < n; ++v) {
      if (!oracle::connects_to_exit_cycle(g, v)) {
        CHECK_THROWS_AS(contraction_witness(a, v + 1), HypothesisError);
        continue;
      }
      const ContractionWitness w = contraction_witness(a, v + 1);
      CHECK(w.w.word.front() == v + 1);
      CHECK(w.n != w.m);
      CHECK_NOTHROW(validate_cylinder(a, w.w));
      const auto tn = shift_image(a, w.w, w.n);
      const auto tm = shift_image(a, w.w, w.m);
      REQUIRE(tn.size() == 1);
      REQUIRE(tm.size() == 1);
      CHECK(cylinder_compare(a, tn[0], tm[0]) == CylinderOrder::StrictSubset);
    }
  }
}

TEST_CASE("Markov classification of the full and identity matrices") {
  const MarkovClassification full = markov_classify(kAllOnes2);
  CHECK(full.af.value == Truth::No);
  CHECK(full.isolated_periodic.empty());
  REQUIRE(full.aperiodic_point.size() == 2);
  for (const auto& [id, v] : full.aperiodic_point)
    CHECK(v.value == Truth::Yes);

  const MarkovClassification ident = markov_classify(kIdent2);
  CHECK(ident.af.value == Truth::No);
  REQUIRE(ident.isolated_periodic.size() == 2);
  CHECK(ident.isolated_periodic[0].period == 1);
  CHECK(ident.isolated_periodic[1].period == 1);
  for (const auto& [id, v] : ident.aperiodic_point)
    CHECK(v.value == Truth::No);
}

TEST_CASE("shift classification agrees with the graph-level deciders") {
  std::mt19937 rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const AdjacencyMatrix a = oracle::random_matrix_no_zero_rows(rng, n, 0.4);
    const DirectedGraph g = graph_of_matrix(a);
    const MarkovClassification mc = markov_classify(a);
    CHECK(mc.af.value == is_af(g).value);
    // The exit-free cycles are the torus corners of the matrix graph.
    const auto corners = torus_corners(g);
    REQUIRE(mc.isolated_periodic.size() == corners.size());
    for (size_t i = 0; i < corners.size(); ++i)
      CHECK(mc.isolated_periodic[i].period == corners[i].period);
  }
}

TEST_CASE("aperiodic points agree with the branching-component oracle") {
  std::mt19937 rng(808);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 5;
    const AdjacencyMatrix a = oracle::random_matrix_no_zero_rows(rng, n, 0.5);
    const DirectedGraph g = graph_of_matrix(a);
    const MarkovClassification mc = markov_classify(a);
    const std::vector<bool> want = aperiodic_vertices(g);
    REQUIRE(static_cast<int>(mc.aperiodic_point.size()) == n);
    for (int v = 0; v < n; ++v) {
      const Verdict& got = mc.aperiodic_point.at(g.vertex_id(v));
      CHECK(got.value == (want[v] ? Truth::Yes : Truth::No));
    }
  }
}
