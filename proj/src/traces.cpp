#include "ck/traces.hpp"

#include <algorithm>
#include <queue>

#include "ck/errors.hpp"
#include "ck/periodic.hpp"

namespace ck {

namespace {

const char* kTraceCondition =
    "existence of a nonnegative vertex function with tau(v) equal to the sum "
    "of tau over the ranges of edges leaving v, normalized to total mass 1";
const char* kUnitalFiniteCondition =
    "an algebra of a graph with finitely many vertices is itself unital";
const char* kStableUnitalCondition =
    "a unital algebra (or one with a unital quotient) is never stable";

std::vector<RatVector> trace_rows(const DirectedGraph& g) {
  std::vector<RatVector> rows;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.out_degree(v) == 0) continue;
    RatVector row(g.vertex_count(), Rat(0));
    row[v] += 1;
    for (int e : g.out_edges(v)) row[g.edge(e).dst] -= 1;
    rows.push_back(std::move(row));
  }
  return rows;
}

Json trace_values_json(const DirectedGraph& g, const RatVector& tau) {
  Json values;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (tau[v] != 0) values[g.vertex_id(v)] = rat_string(tau[v]);
  return values;
}

}  // namespace

RationalLinearSystem graph_trace_system(const DirectedGraph& g) {
  RationalLinearSystem sys;
  sys.M = trace_rows(g);
  sys.b.assign(sys.M.size(), Rat(0));
  sys.M.push_back(RatVector(g.vertex_count(), Rat(1)));
  sys.b.push_back(1);
  return sys;
}

int trace_solution_dimension(const DirectedGraph& g) {
  return g.vertex_count() - matrix_rank(trace_rows(g));
}

Verdict bounded_graph_trace(const DirectedGraph& g) {
  const RationalLinearSystem sys = graph_trace_system(g);
  const FeasibilityResult res = feasible_nonnegative(sys);
  if (res.feasible()) {
    Json cert;
    cert["type"] = "trace_vector";
    cert["values"] = trace_values_json(g, *res.witness);
    return Verdict::yes(kTraceCondition, cert);
  }
  Json farkas = Json::array();
  for (const Rat& y : *res.farkas) farkas.push_back(rat_string(y));
  Json cert;
  cert["type"] = "farkas";
  cert["vector"] = farkas;
  cert["note"] =
      "y transposed times the system matrix is nonnegative while y "
      "transposed times the right-hand side is negative, so no nonnegative "
      "solution exists";
  return Verdict::no(kTraceCondition, cert);
}

Rat path_count_identity(const DirectedGraph& g, const std::string& vertex_id,
                        const std::map<std::string, Rat>& sink_values) {
  const int v0 = g.vertex_index(vertex_id);
  if (v0 < 0)
    throw InvalidArgumentError("unknown vertex `" + vertex_id + "`");
  if (find_any_cycle(g))
    throw HypothesisError("the path-count identity requires an acyclic graph");
  // Topological order by Kahn's algorithm.
  std::vector<int> indeg(g.vertex_count(), 0), order;
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int e : g.out_edges(v)) ++indeg[g.edge(e).dst];
  std::queue<int> ready;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (indeg[v] == 0) ready.push(v);
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop();
    order.push_back(v);
    for (int e : g.out_edges(v))
      if (--indeg[g.edge(e).dst] == 0) ready.push(g.edge(e).dst);
  }
  std::vector<Int> count(g.vertex_count(), Int(0));
  count[v0] = 1;
  for (int v : order)
    for (int e : g.out_edges(v)) count[g.edge(e).dst] += count[v];
  Rat total = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.out_degree(v) > 0 || count[v] == 0) continue;
    const auto it = sink_values.find(g.vertex_id(v));
    if (it == sink_values.end())
      throw InvalidArgumentError("no value supplied for reachable sink `" +
                                 g.vertex_id(v) + "`");
    total += Rat(count[v]) * it->second;
  }
  return total;
}

Verdict has_unital_quotient(const DirectedGraph& g) {
  Json cert;
  cert["type"] = "finite_vertex_set";
  cert["vertices"] = g.vertex_count();
  cert["note"] = "the sum of all vertex projections is a unit";
  Verdict v = Verdict::yes(kUnitalFiniteCondition, cert);
  v.with_hypotheses({"finite graph"});
  return v;
}

Verdict has_unital_quotient(const ParsedInput& input, int depth) {
  if (input.cls.tag == GraphTag::Periodic)
    return periodic_has_unital_quotient(*input.periodic, depth);
  return has_unital_quotient(input.graph);
}

S0Result s0_subgraph(const DirectedGraph& g) {
  // Vertices that start an infinite path = vertices reaching a cycle.  In a
  // finite graph every vertex is left-finite, so no further restriction
  // applies.
  const SccDecomposition scc = strongly_connected_components(g);
  std::vector<bool> on_cycle(g.vertex_count(), false);
  for (int c = 0; c < scc.component_count(); ++c)
    if (scc.cyclic(g, c))
      for (int v : scc.components[c]) on_cycle[v] = true;
  S0Result out;
  out.s0 = backward_closure(g, on_cycle);
  out.s_subgraph = g.induced_subgraph(out.s0);
  return out;
}

Verdict is_stable(const ParsedInput& input, int depth) {
  if (input.cls.tag == GraphTag::Periodic) {
    const PeriodicPresentation& p = *input.periodic;
    if (classify_periodic(p).no_sinks) return periodic_is_stable(p, depth);
    const Verdict cyc = realized_cycle_exists(p);
    if (cyc.value == Truth::No) return periodic_acyclic_stability(p, depth);
    Verdict v = Verdict::unknown(
        kStableUnitalCondition,
        "the realization mixes sinks with cycles; neither the sink-free nor "
        "the acyclic decision procedure applies");
    v.with_hypotheses({"locally finite", "no sinks: FAILED"});
    return v;
  }
  const DirectedGraph& g = input.graph;
  if (g.vertex_count() == 0) {
    return Verdict::yes("the zero algebra is stable",
                        Json{{"type", "empty_graph"}});
  }
  if (!find_any_cycle(g)) {
    // Unital, and additionally a nonzero bounded graph-trace exists (mass on
    // the sinks): either obstruction alone settles the matter.
    const Verdict trace = bounded_graph_trace(g);
    Json cert;
    cert["type"] = "bounded_trace_witness";
    if (trace.value == Truth::Yes) cert["values"] = trace.certificate["values"];
    cert["note"] =
        "the graph is finite (hence the algebra unital) and carries the "
        "nonzero bounded graph-trace listed here";
    Verdict v = Verdict::no(kStableUnitalCondition, cert);
    v.with_hypotheses({"finite graph"});
    return v;
  }
  Verdict v = Verdict::no(
      kStableUnitalCondition,
      Json{{"type", "unital"},
           {"note", "the graph has finitely many vertices, so the algebra "
                    "is unital and cannot be stable"}});
  v.with_hypotheses({"finite graph"});
  return v;
}

}  // namespace ck
