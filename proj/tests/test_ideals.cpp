#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracle.hpp"

#include "ck/ideals.hpp"

using namespace ck;

namespace {

DirectedGraph diamond() {
  return DirectedGraph({"r", "a", "b", "s1", "s2"}, {{{"e1", "r", "a"},
                                                     {"e2", "r", "b"},
                                                     {"e3", "a", "s1"},
                                                     {"e4", "a", "s2"},
                                                     {"e5", "b", "s2"}}});
}

VertexSet only(const DirectedGraph& g, std::vector<std::string> ids) {
  return ids_to_set(g, ids);
}

}  // namespace

TEST_CASE("hereditary and saturated by definition") {
  const DirectedGraph g({"v", "w"},
                        {{{"f", "v", "w"}, {"l1", "w", "w"}, {"l2", "w", "w"}}});
  CHECK(is_hereditary(g, only(g, {"w"})));
  // v emits only into {w}, so saturation would force v in.
  CHECK_FALSE(is_saturated(g, only(g, {"w"})));
  CHECK(is_saturated(g, only(g, {})));
  CHECK_FALSE(is_hereditary(g, only(g, {"v"})));
}

TEST_CASE("sinks are never forced in by saturation") {
  const DirectedGraph g = diamond();
  // {s1} leaves a with an escape through e4; the sink s2 is never forced.
  CHECK(is_saturated(g, only(g, {"s1"})));
  // b emits only into {s2}, so {s2} alone is not saturated...
  CHECK_FALSE(is_saturated(g, only(g, {"s2"})));
  // ...but adding b restores saturation (r and a keep escapes).
  CHECK(is_saturated(g, only(g, {"b", "s2"})));
  CHECK(is_hereditary(g, only(g, {"b", "s2"})));
}

TEST_CASE("closure operators") {
  const DirectedGraph g = diamond();
  const VertexSet h = hereditary_closure(g, only(g, {"a"}));
  CHECK(h == only(g, {"a", "s1", "s2"}));
  // Saturating pulls b in (all of b's edges land in the set), then r.
  const VertexSet s = saturate(g, h);
  CHECK(s == only(g, {"r", "a", "b", "s1", "s2"}));
  CHECK_THROWS_AS(saturate(g, only(g, {"a"})), InvalidArgumentError);
}

TEST_CASE("lattice enumeration matches the subset filter oracle") {
  std::mt19937 rng(2718);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 10;
    const DirectedGraph g = oracle::random_graph(rng, n, (3 * n) / 2);
    auto fast = enumerate_hereditary_saturated(g);
    auto brute = oracle::hereditary_saturated_subsets(g);
    std::sort(fast.begin(), fast.end());
    std::sort(brute.begin(), brute.end());
    CHECK(fast == brute);
  }
}

TEST_CASE("lattice order is cardinality then vertex sequence") {
  const DirectedGraph g = diamond();
  const auto sets = enumerate_hereditary_saturated(g);
  REQUIRE(!sets.empty());
  CHECK(std::count(sets.front().begin(), sets.front().end(), true) == 0);
  CHECK(std::count(sets.back().begin(), sets.back().end(), true) ==
        g.vertex_count());
  for (std::size_t i = 1; i < sets.size(); ++i) {
    const auto ci = std::count(sets[i - 1].begin(), sets[i - 1].end(), true);
    const auto cj = std::count(sets[i].begin(), sets[i].end(), true);
    CHECK(ci <= cj);
  }
}

TEST_CASE("enumeration cap raises instead of truncating") {
  // 6 isolated loops: every subset is hereditary saturated (2^6 = 64 sets).
  std::vector<std::string> verts;
  std::vector<std::array<std::string, 3>> edges;
  for (int i = 0; i < 6; ++i) {
    verts.push_back("v" + std::to_string(i));
    edges.push_back({"l" + std::to_string(i), verts.back(), verts.back()});
  }
  const DirectedGraph g(verts, edges);
  CHECK(enumerate_hereditary_saturated(g).size() == 64);
  CHECK_THROWS_AS(enumerate_hereditary_saturated(g, 10), CapExceededError);
}

TEST_CASE("quotient keeps edges whose range survives") {
  const DirectedGraph g = diamond();
  const VertexSet h = only(g, {"s1"});
  REQUIRE(is_hereditary(g, h));
  REQUIRE(is_saturated(g, h));
  const DirectedGraph q = quotient_graph(g, h);
  CHECK(q.vertex_count() == 4);
  CHECK(q.edge_index("e3") == -1);  // a -> s1 has range inside H
  CHECK(q.edge_index("e1") >= 0);
  CHECK(q.edge_index("e4") >= 0);
  CHECK(q.edge_index("e5") >= 0);
  CHECK_THROWS_AS(quotient_graph(g, only(g, {"a"})), InvalidArgumentError);
}

TEST_CASE("set id round trip") {
  const DirectedGraph g = diamond();
  const VertexSet h = only(g, {"a", "s2"});
  CHECK(ids_to_set(g, set_to_ids(g, h)) == h);
  CHECK(set_to_ids(g, h) == std::vector<std::string>{"a", "s2"});
}
