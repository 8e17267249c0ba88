#include <map>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "test_util.hpp"

#include "ck/exact_lp.hpp"
#include "ck/traces.hpp"

using namespace ck;
using namespace ck::testutil;

namespace {

DirectedGraph diamond() {
  return DirectedGraph({"r", "a", "b", "s1", "s2"}, {{{"e1", "r", "a"},
                                                     {"e2", "r", "b"},
                                                     {"e3", "a", "s1"},
                                                     {"e4", "a", "s2"},
                                                     {"e5", "b", "s2"}}});
}

}  // namespace

TEST_CASE("trace system shape: one equation per non-sink plus normalization") {
  const DirectedGraph g = diamond();
  const RationalLinearSystem sys = graph_trace_system(g);
  CHECK(sys.M.size() == 4);            // r, a, b + mass row
  CHECK(sys.M.front().size() == 5);
  CHECK(sys.b.back() == 1);
}

TEST_CASE("bounded trace exists on the diamond and verifies by substitution") {
  const DirectedGraph g = diamond();
  const Verdict v = bounded_graph_trace(g);
  REQUIRE(v.value == Truth::Yes);
  RatVector tau(g.vertex_count(), Rat(0));
  for (const auto& [id, val] : v.certificate["values"].items()) {
    const auto r = rat_parse(val.get<std::string>());
    REQUIRE(r.has_value());
    tau[g.vertex_index(id)] = *r;
  }
  CHECK(check_witness(graph_trace_system(g), tau));
}

TEST_CASE("no bounded trace on the double loop; the refutation verifies") {
  const DirectedGraph g({"v"}, {{{"e", "v", "v"}, {"f", "v", "v"}}});
  const Verdict v = bounded_graph_trace(g);
  REQUIRE(v.value == Truth::No);
  RatVector y;
  for (const auto& val : v.certificate["vector"]) {
    const auto r = rat_parse(val.get<std::string>());
    REQUIRE(r.has_value());
    y.push_back(*r);
  }
  CHECK(check_farkas(graph_trace_system(g), y));
}

TEST_CASE("single path carries the uniform trace") {
  const DirectedGraph g({"a", "b", "c"},
                        {{{"e1", "a", "b"}, {"e2", "b", "c"}}});
  const Verdict v = bounded_graph_trace(g);
  REQUIRE(v.value == Truth::Yes);
  CHECK(v.certificate["values"]["c"] == "1/3");
}

TEST_CASE("trace dimension equals the sink count on acyclic graphs") {
  CHECK(trace_solution_dimension(diamond()) == 2);
  std::mt19937 rng(515);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 10;
    const DirectedGraph g = oracle::random_acyclic(rng, n, 2 * n);
    const int dim = trace_solution_dimension(g);
    CHECK(dim == oracle::trace_dimension(g));
    CHECK(dim == static_cast<int>(degree_profile(g).sinks.size()));
  }
}

TEST_CASE("path-count identity matches exhaustive path enumeration") {
  const DirectedGraph g = diamond();
  std::map<std::string, Rat> values{{"s1", Rat(1, 3)}, {"s2", Rat(1, 5)}};
  CHECK(path_count_identity(g, "r", values) ==
        oracle::weighted_path_sum(g, g.vertex_index("r"), values));
  CHECK(path_count_identity(g, "r", values) == Rat(1, 3) + Rat(2, 5));
  std::mt19937 rng(929);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 8;
    const DirectedGraph g2 = oracle::random_acyclic(rng, n, 2 * n);
    std::map<std::string, Rat> vals;
    for (const std::string& s : degree_profile(g2).sinks)
      vals[s] = Rat(1 + trial % 5, 7);
    for (int v = 0; v < n; ++v)
      CHECK(path_count_identity(g2, g2.vertex_id(v), vals) ==
            oracle::weighted_path_sum(g2, v, vals));
  }
}

TEST_CASE("path-count identity rejects cycles and unknown vertices") {
  const DirectedGraph loop({"v"}, {{{"e", "v", "v"}}});
  CHECK_THROWS_AS(path_count_identity(loop, "v", {}), HypothesisError);
  CHECK_THROWS_AS(path_count_identity(diamond(), "zz", {}),
                  InvalidArgumentError);
}

TEST_CASE("finite graphs always have a unital quotient") {
  const Verdict v = has_unital_quotient(diamond());
  CHECK(v.value == Truth::Yes);
  CHECK(v.certificate["type"] == "finite_vertex_set");
}

TEST_CASE("S^0 is the backward closure of the cycle support") {
  const S0Result diamond_s0 = s0_subgraph(diamond());
  for (bool in : diamond_s0.s0) CHECK_FALSE(in);
  const DirectedGraph g({"a", "b", "c"},
                        {{{"ab", "a", "b"}, {"l", "b", "b"}, {"bc", "b", "c"}}});
  const S0Result s0 = s0_subgraph(g);
  CHECK(s0.s0[g.vertex_index("a")]);
  CHECK(s0.s0[g.vertex_index("b")]);
  CHECK_FALSE(s0.s0[g.vertex_index("c")]);
  CHECK(s0.s_subgraph.vertex_count() == 2);
}

TEST_CASE("stability of finite graphs") {
  // Empty graph: the zero algebra is stable.
  const ParsedInput empty = parse("", InputFormat::Edgelist);
  const Verdict ve = is_stable(empty);
  CHECK(ve.value == Truth::Yes);
  CHECK(ve.certificate["type"] == "empty_graph");
  // Acyclic nonempty: a bounded trace always exists.
  const Verdict va = is_stable(finite_input(diamond()));
  CHECK(va.value == Truth::No);
  CHECK(va.certificate["type"] == "bounded_trace_witness");
  // Cyclic finite: unital, hence not stable.
  const Verdict vc = is_stable(
      finite_input(DirectedGraph({"v"}, {{{"e", "v", "v"}, {"f", "v", "v"}}})));
  CHECK(vc.value == Truth::No);
  CHECK(vc.certificate["type"] == "unital");
}

TEST_CASE("periodic inputs dispatch to the periodic deciders") {
  CHECK(is_stable(periodic_input(chain_presentation())).value == Truth::Yes);
  CHECK(is_stable(periodic_input(comb_presentation())).value == Truth::No);
  const Verdict unital =
      has_unital_quotient(periodic_input(chain_presentation()));
  CHECK(unital.value == Truth::No);
}
