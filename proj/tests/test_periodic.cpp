#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "test_util.hpp"

#include "ck/periodic.hpp"

using namespace ck;
using namespace ck::testutil;

namespace {

/// Replays a realized witness walk inside its own truncation and returns the
/// quotient ids (realized ids with the copy marker stripped) it visits.
std::vector<std::string> replay_witness(const PeriodicPresentation& p,
                                        const RealizedWitness& w) {
  const DirectedGraph t = realize_truncation(p, w.copies);
  int at = t.vertex_index(w.start_vertex);
  REQUIRE(at >= 0);
  REQUIRE_FALSE(w.edge_ids.empty());
  std::vector<std::string> quotient_ids;
  for (const std::string& eid : w.edge_ids) {
    const int e = t.edge_index(eid);
    REQUIRE(e >= 0);
    REQUIRE(t.edge(e).src == at);
    const std::string id = t.vertex_id(at);
    quotient_ids.push_back(id.substr(0, id.find('@')));
    at = t.edge(e).dst;
  }
  REQUIRE(t.vertex_id(at) == w.start_vertex);  // the walk closes up
  return quotient_ids;
}

/// Replays one extremal-mean cycle: closed, inside the component, mean as
/// claimed.
void check_mean_witness(const DirectedGraph& g, const std::vector<int>& weight,
                        const MeanCycleInfo& info,
                        const std::vector<std::string>& cycle,
                        const Rat& claimed_mean) {
  REQUIRE_FALSE(cycle.empty());
  const int first = g.edge(g.edge_index(cycle.front())).src;
  int at = first;
  long long total = 0;
  for (const std::string& eid : cycle) {
    const int e = g.edge_index(eid);
    REQUIRE(e >= 0);
    REQUIRE(g.edge(e).src == at);
    CHECK(std::find(info.vertices.begin(), info.vertices.end(),
                    g.vertex_id(at)) != info.vertices.end());
    total += weight[e];
    at = g.edge(e).dst;
  }
  REQUIRE(at == first);
  CHECK(Rat(total, static_cast<long long>(cycle.size())) == claimed_mean);
}

}  // namespace

TEST_CASE("shift quotient of the two-way chain") {
  const ShiftQuotient q = shift_quotient(chain_presentation());
  REQUIRE(q.graph.vertex_count() == 2);
  const int b = q.graph.vertex_index("b"), w = q.graph.vertex_index("w");
  CHECK(q.is_block[b]);
  CHECK_FALSE(q.is_block[w]);
  REQUIRE(q.graph.edge_count() == 4);
  const int f = q.graph.edge_index("f"), g = q.graph.edge_index("g");
  const int in = q.graph.edge_index("in"), out = q.graph.edge_index("out");
  CHECK(q.weight[f] == 1);
  CHECK(q.weight[g] == -1);
  CHECK(q.weight[in] == 0);
  CHECK(q.weight[out] == 0);
  CHECK(q.kind[f] == ShiftQuotient::EdgeKind::Cross);
  CHECK(q.kind[in] == ShiftQuotient::EdgeKind::ToBlock);
  CHECK(q.kind[out] == ShiftQuotient::EdgeKind::ToStem);
  CHECK(q.graph.edge(in).src == w);
  CHECK(q.graph.edge(in).dst == b);
  CHECK(q.graph.edge(out).src == b);
  CHECK(q.graph.edge(out).dst == w);
}

TEST_CASE("subgraph weights pull back through edge ids") {
  const ShiftQuotient q = shift_quotient(chain_presentation());
  std::vector<bool> only_b(q.graph.vertex_count(), false);
  only_b[q.graph.vertex_index("b")] = true;
  const DirectedGraph sub = q.graph.induced_subgraph(only_b);
  const std::vector<int> w = subgraph_weights(q, sub);
  REQUIRE(sub.edge_count() == 2);
  CHECK(w[sub.edge_index("f")] == 1);
  CHECK(w[sub.edge_index("g")] == -1);
}

TEST_CASE("extremal cycle means on the chain quotient") {
  const ShiftQuotient q = shift_quotient(chain_presentation());
  const auto infos = mean_cycles(q.graph, q.weight);
  REQUIRE(infos.size() == 1);
  CHECK(infos[0].vertices == std::vector<std::string>{"b", "w"});
  CHECK(infos[0].min_mean == Rat(-1));
  CHECK(infos[0].max_mean == Rat(1));
  check_mean_witness(q.graph, q.weight, infos[0], infos[0].min_cycle, Rat(-1));
  check_mean_witness(q.graph, q.weight, infos[0], infos[0].max_cycle, Rat(1));
}

TEST_CASE("extremal cycle means agree with exhaustive cycle enumeration") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> wdist(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 6;
    const DirectedGraph g = oracle::random_graph(rng, n, 2 * n);
    std::vector<int> weight(g.edge_count());
    for (int& w : weight) w = wdist(rng);

    auto got = mean_cycles(g, weight);
    auto want = oracle::cycle_mean_extremes(g, weight);
    auto by_vertices = [](const auto& a, const auto& b) {
      return a.vertices < b.vertices;
    };
    std::sort(got.begin(), got.end(), by_vertices);
    std::sort(want.begin(), want.end(), by_vertices);
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].vertices == want[i].vertices);
      CHECK(got[i].min_mean == want[i].min_mean);
      CHECK(got[i].max_mean == want[i].max_mean);
      check_mean_witness(g, weight, got[i], got[i].min_cycle, got[i].min_mean);
      check_mean_witness(g, weight, got[i], got[i].max_cycle, got[i].max_mean);
    }
  }
}

TEST_CASE("left-infiniteness classification") {
  const LeftClassification chain = left_infinite_vertices(chain_presentation());
  CHECK(std::all_of(chain.left_infinite.begin(), chain.left_infinite.end(),
                    [](bool b) { return b; }));
  REQUIRE(chain.negative.size() == 1);
  CHECK(chain.negative[0].min_mean < 0);

  const LeftClassification ray = left_infinite_vertices(ray_presentation());
  CHECK(std::none_of(ray.left_infinite.begin(), ray.left_infinite.end(),
                     [](bool b) { return b; }));
  CHECK(ray.negative.empty());
}

TEST_CASE("realized cycle search with vertex restrictions") {
  const PeriodicPresentation chain = chain_presentation();
  const auto w = realized_cycle_within(chain, {});
  REQUIRE(w.has_value());
  replay_witness(chain, *w);

  CHECK_FALSE(realized_cycle_within(ray_presentation(), {}).has_value());
  CHECK_FALSE(realized_cycle_within(comb_presentation(), {}).has_value());

  // Restricting the two-lane presentation to one lane still finds a cycle,
  // and the witness stays inside the lane.
  const PeriodicPresentation two = twolane_presentation();
  const ShiftQuotient q = shift_quotient(two);
  std::vector<bool> lane_a(q.graph.vertex_count(), false);
  lane_a[q.graph.vertex_index("a")] = true;
  lane_a[q.graph.vertex_index("wa")] = true;
  const auto wa = realized_cycle_within(two, lane_a);
  REQUIRE(wa.has_value());
  for (const std::string& qid : replay_witness(two, *wa))
    CHECK((qid == "a" || qid == "wa"));
  // The stem vertices alone have no edges between them, hence no cycle.
  std::vector<bool> stems(q.graph.vertex_count(), false);
  stems[q.graph.vertex_index("wa")] = true;
  stems[q.graph.vertex_index("wb")] = true;
  CHECK_FALSE(realized_cycle_within(two, stems).has_value());
}

TEST_CASE("realized cycle existence") {
  CHECK(realized_cycle_exists(chain_presentation()).value == Truth::Yes);
  CHECK(realized_cycle_exists(ray_presentation()).value == Truth::No);
  CHECK(realized_cycle_exists(comb_presentation()).value == Truth::No);
}

TEST_CASE("finite predecessor sets of realized vertices") {
  const auto left = finite_left_set(ray_presentation(), "b@3", 64);
  REQUIRE(left.has_value());
  CHECK(left->vertex == "b@3");
  CHECK(left->members == std::vector<std::string>{"b@1", "b@2", "b@3"});
  CHECK(left->copies >= 4);

  // Every chain vertex has infinitely many predecessors.
  CHECK_FALSE(finite_left_set(chain_presentation(), "b@2", 64).has_value());

  CHECK_THROWS_AS(finite_left_set(ray_presentation(), "zz", 8),
                  InvalidArgumentError);
}

TEST_CASE("the S^0 region of the standard presentations") {
  const PeriodicS0 chain = periodic_s0(chain_presentation());
  CHECK(std::none_of(chain.region.begin(), chain.region.end(),
                     [](bool b) { return b; }));

  const PeriodicS0 ray = periodic_s0(ray_presentation());
  REQUIRE(ray.region.size() == 1);
  CHECK(ray.region[0]);
  CHECK_FALSE(ray.left_infinite[0]);

  const PeriodicS0 bin = periodic_s0(bintree_presentation());
  REQUIRE(bin.region.size() == 1);
  CHECK(bin.region[0]);
}

TEST_CASE("stability of sink-free periodic presentations") {
  const Verdict chain = periodic_is_stable(chain_presentation());
  CHECK(chain.value == Truth::Yes);
  CHECK(chain.certificate["type"] == "empty_s0");

  const Verdict ray = periodic_is_stable(ray_presentation());
  CHECK(ray.value == Truth::Yes);
  CHECK(ray.certificate["type"] == "no_bounded_trace");
  REQUIRE(ray.certificate["components"].size() == 1);
  CHECK(ray.certificate["components"][0]["transfer_matrix"] ==
        Json::array({Json::array({"1"})}));

  const Verdict bin = periodic_is_stable(bintree_presentation());
  CHECK(bin.value == Truth::No);
  REQUIRE(bin.certificate["type"] == "unbounded_trace_component");
  CHECK(bin.certificate["transfer_matrix"] ==
        Json::array({Json::array({"2"})}));
  const auto lambda =
      rat_parse(bin.certificate["lambda"].get<std::string>());
  REQUIRE(lambda.has_value());
  CHECK(*lambda > 1);
  CHECK(*lambda < 2);

  // Sinks are refused by the sink-free decider.
  const Verdict comb = periodic_is_stable(comb_presentation());
  CHECK(comb.value == Truth::Unknown);
  CHECK(comb.certificate["type"] == "hypothesis_violation");
}

TEST_CASE("acyclic-realization stability handles sinks") {
  const Verdict comb = periodic_acyclic_stability(comb_presentation());
  CHECK(comb.value == Truth::No);
  CHECK(comb.certificate["type"] == "bounded_trace_witness");
}

TEST_CASE("pure infiniteness of periodic presentations") {
  const Verdict chain = periodic_is_purely_infinite(chain_presentation());
  CHECK(chain.value == Truth::Yes);
  CHECK(chain.certificate["type"] == "strongly_connected_realization");

  const Verdict ray = periodic_is_purely_infinite(ray_presentation());
  CHECK(ray.value == Truth::No);
  CHECK(ray.certificate["type"] == "acyclic_realization");

  const Verdict bin = periodic_is_purely_infinite(bintree_presentation());
  CHECK(bin.value == Truth::No);

  const Verdict comb = periodic_is_purely_infinite(comb_presentation());
  CHECK(comb.value == Truth::Unknown);
  CHECK(comb.certificate["type"] == "hypothesis_violation");

  const Verdict two = periodic_is_purely_infinite(twolane_presentation());
  CHECK(two.value == Truth::Unknown);
}

namespace {

/// A stem self-loop beside a one-way ray: the loop is a left-finite cycle,
/// so a unital quotient exists and the algebra is not stable.
PeriodicPresentation loop_beside_ray() {
  PeriodicPresentation p;
  p.stem = DirectedGraph({"w"}, {{{"l", "w", "w"}}});
  p.block = DirectedGraph({"b"}, {});
  p.cross_edges = {{"f", "b", "b", +1}};
  return p;
}

}  // namespace

TEST_CASE("unital quotients of periodic presentations") {
  const Verdict chain = periodic_has_unital_quotient(chain_presentation());
  CHECK(chain.value == Truth::No);
  CHECK(chain.certificate["type"] == "no_left_finite_cycle");
  // No cycle at all, so in particular no left-finite one.
  CHECK(periodic_has_unital_quotient(ray_presentation()).value == Truth::No);

  const Verdict loop = periodic_has_unital_quotient(loop_beside_ray());
  CHECK(loop.value == Truth::Yes);
  CHECK(loop.certificate["type"] == "finite_left_quotient");
  CHECK(loop.certificate["left_set"] == Json::array({"w"}));
}

TEST_CASE("a left-finite cycle makes the algebra non-stable") {
  const Verdict v = periodic_is_stable(loop_beside_ray());
  CHECK(v.value == Truth::No);
  REQUIRE(v.certificate["type"] == "left_finite_cycle");
  CHECK(v.certificate["left_set"]["vertex"] == "w");
  CHECK(v.certificate["left_set"]["members"] == Json::array({"w"}));
}

TEST_CASE("shift-invariant hereditary saturated sets") {
  CHECK(periodic_invariant_sets(chain_presentation()).empty());

  const PeriodicPresentation two = twolane_presentation();
  const ShiftQuotient q = shift_quotient(two);
  const auto sets = periodic_invariant_sets(two);
  REQUIRE(sets.size() == 2);
  // Each invariant set is one full lane.
  for (const auto& mask : sets) {
    const bool lane_a = mask[q.graph.vertex_index("a")];
    CHECK(mask[q.graph.vertex_index(lane_a ? "wa" : "wb")] ==
          mask[q.graph.vertex_index(lane_a ? "a" : "b")]);
    CHECK(mask[q.graph.vertex_index("a")] !=
          mask[q.graph.vertex_index("b")]);
  }

  const PeriodicPresentation comb = comb_presentation();
  const ShiftQuotient qc = shift_quotient(comb);
  const auto comb_sets = periodic_invariant_sets(comb);
  REQUIRE(comb_sets.size() == 1);
  CHECK(comb_sets[0][qc.graph.vertex_index("s")]);
  CHECK_FALSE(comb_sets[0][qc.graph.vertex_index("b")]);
}

TEST_CASE("deleting an invariant set yields the quotient presentation") {
  const PeriodicPresentation two = twolane_presentation();
  const ShiftQuotient q = shift_quotient(two);
  std::vector<bool> lane_b(q.graph.vertex_count(), false);
  lane_b[q.graph.vertex_index("b")] = true;
  lane_b[q.graph.vertex_index("wb")] = true;
  const PeriodicPresentation rest = periodic_quotient(two, lane_b);
  CHECK(rest.stem.vertex_ids() == std::vector<std::string>{"wa"});
  CHECK(rest.block.vertex_ids() == std::vector<std::string>{"a"});
  CHECK(rest.cross_edges.size() == 2);
  CHECK(rest.stem_block_edges.size() == 2);
  // The remaining lane is a two-way chain: stable, like the original.
  CHECK(periodic_is_stable(rest).value == Truth::Yes);

  const PeriodicPresentation comb = comb_presentation();
  const auto sets = periodic_invariant_sets(comb);
  REQUIRE(sets.size() == 1);
  const PeriodicPresentation ray = periodic_quotient(comb, sets[0]);
  CHECK(ray.block.vertex_ids() == std::vector<std::string>{"b"});
  CHECK(classify_periodic(ray).no_sinks);
}

TEST_CASE("truncated trace feasibility scales with the splitting rate") {
  const PeriodicPresentation bin = bintree_presentation();
  for (int k = 5; k <= 20; k += 5) CHECK(truncated_trace_feasible(bin, k));
  CHECK(truncated_trace_feasible(ray_presentation(), 6));
}
