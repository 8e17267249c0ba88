#include "ck/classify.hpp"

#include <algorithm>

#include "ck/errors.hpp"

namespace ck {

namespace {

const char* kAfCondition = "the graph has no cycles";
const char* kPiCondition =
    "every vertex connects to a cycle with an exit in every quotient by a "
    "proper hereditary saturated vertex set";
const char* kPivCondition =
    "the vertex connects to a cycle with an exit in every quotient by a "
    "hereditary saturated vertex set not containing it";

// Rotates a functional cycle (given as vertex indices in walk order) so it
// starts at its smallest vertex, and packages it as an edge path.
Path functional_cycle_path(const DirectedGraph& g,
                           const std::vector<int>& loop) {
  const auto smallest = std::min_element(loop.begin(), loop.end());
  std::vector<int> rotated(smallest, loop.end());
  rotated.insert(rotated.end(), loop.begin(), smallest);
  Path p;
  for (int v : rotated) p.edges.push_back(g.out_edges(v).front());
  return p;
}

}  // namespace

Json torus_corner_json(const DirectedGraph& g, const TorusCorner& c) {
  Json j;
  j["type"] = "torus_corner";
  j["period"] = c.period;
  j["cycle"] = cycle_to_json(g, c.cycle);
  return j;
}

std::vector<TorusCorner> torus_corners(const DirectedGraph& g) {
  const int n = g.vertex_count();
  // 0 = untouched, 1 = on the current walk, 2 = finished
  std::vector<int> state(n, 0);
  std::vector<TorusCorner> out;
  for (int start = 0; start < n; ++start) {
    if (state[start] != 0 || g.out_degree(start) != 1) continue;
    std::vector<int> walk;
    int v = start;
    while (state[v] == 0 && g.out_degree(v) == 1) {
      state[v] = 1;
      walk.push_back(v);
      v = g.edge(g.out_edges(v).front()).dst;
    }
    if (state[v] == 1) {
      // Closed the walk on itself: the tail from v onward is a cycle of the
      // out-degree-1 successor map, hence exit-free.
      const auto at = std::find(walk.begin(), walk.end(), v);
      std::vector<int> loop(at, walk.end());
      TorusCorner c;
      c.cycle = functional_cycle_path(g, loop);
      c.period = static_cast<int>(loop.size());
      out.push_back(std::move(c));
    }
    for (int w : walk) state[w] = 2;
  }
  std::sort(out.begin(), out.end(), [](const TorusCorner& a,
                                       const TorusCorner& b) {
    return a.cycle.edges < b.cycle.edges;
  });
  return out;
}

std::vector<bool> cycle_with_exit_vertices(const DirectedGraph& g) {
  const SccDecomposition scc = strongly_connected_components(g);
  std::vector<bool> mask(g.vertex_count(), false);
  for (int c = 0; c < scc.component_count(); ++c) {
    if (!scc.cyclic(g, c)) continue;
    bool has_branch = false;
    for (int v : scc.components[c])
      if (g.out_degree(v) >= 2) has_branch = true;
    if (!has_branch) continue;
    for (int v : scc.components[c]) mask[v] = true;
  }
  return mask;
}

Verdict is_af(const DirectedGraph& g) {
  const auto cycle = find_any_cycle(g);
  Verdict v =
      cycle ? Verdict::no(kAfCondition, cycle_to_json(g, *cycle))
            : Verdict::yes(kAfCondition, Json{{"type", "acyclic"},
                                              {"vertices", g.vertex_count()}});
  v.with_hypotheses({"finite graph", "row-finite"});
  return v;
}

Verdict is_af(const AdjacencyMatrix& m) {
  bool zero_row = false;
  for (const auto& row : m.a)
    if (std::count(row.begin(), row.end(), 1) == 0) zero_row = true;
  if (zero_row) {
    Verdict v = Verdict::unknown(
        kAfCondition,
        "the matrix has a zero row; the matrix-algebra criterion assumes "
        "every row is nonzero");
    v.with_hypotheses({"no zero rows: FAILED"});
    return v;
  }
  const DirectedGraph g = graph_of_matrix(m);
  Verdict v = is_af(g);
  v.with_hypotheses({"no zero rows"});
  if (v.value == Truth::No) {
    // Classify the obstruction: a cycle with an exit supports an infinite
    // projection; an exit-free cycle supports a torus corner.
    Path cycle;
    for (const auto& id : v.certificate.at("edges"))
      cycle.edges.push_back(g.edge_index(id.get<std::string>()));
    const bool exit = cycle_has_exit(g, cycle);
    v.certificate["has_exit"] = exit;
    v.certificate["consequence"] =
        exit ? "cycle with an exit: the algebra contains an infinite "
               "projection"
             : "exit-free cycle: the algebra has a torus corner";
    if (!exit) v.certificate["period"] = cycle.length();
  }
  return v;
}

namespace {

// First vertex of the quotient (smallest index) that does not connect to a
// cycle with an exit, or -1 when the criterion holds.
int first_disconnected_vertex(const DirectedGraph& quotient) {
  const std::vector<bool> w = cycle_with_exit_vertices(quotient);
  const std::vector<bool> good = backward_closure(quotient, w);
  for (int v = 0; v < quotient.vertex_count(); ++v)
    if (!good[v]) return v;
  return -1;
}

Json obstruction_certificate(const DirectedGraph& g, const VertexSet& h,
                             const DirectedGraph& quotient, int bad_vertex) {
  Json cert;
  cert["type"] = "quotient_obstruction";
  cert["hereditary_saturated"] = set_to_ids(g, h);
  cert["vertex"] = quotient.vertex_id(bad_vertex);
  const std::vector<int> reach = reachable_from(quotient, bad_vertex);
  std::vector<bool> reach_mask(quotient.vertex_count(), false);
  for (int v : reach) reach_mask[v] = true;
  const DirectedGraph part = quotient.induced_subgraph(reach_mask);
  if (const auto cycle = find_any_cycle(part)) {
    // Everything the vertex reaches avoids cycles with exits, so any cycle
    // it reaches is exit-free: a torus-corner obstruction.
    cert["flavor"] = "torus_corner";
    cert["cycle"] = cycle_to_json(part, *cycle);
    cert["period"] = cycle->length();
  } else {
    cert["flavor"] = "af_part";
    cert["invariant_part"] = vertex_ids_json(quotient, reach);
  }
  return cert;
}

struct ScanResult {
  bool ok = true;
  Json no_certificate;  // set when ok == false
  int sets_scanned = 0;
};

// Scans every enumerated hereditary saturated set accepted by `admit`,
// checking the connects-to-a-cycle-with-an-exit criterion in its quotient.
// The scan over sets is the production parallel kernel; the reported
// violation is the lexicographically first (set order, vertex index), so the
// result does not depend on thread scheduling.
template <typename Admit>
ScanResult scan_quotients(const DirectedGraph& g, std::uint64_t set_cap,
                          Admit admit) {
  const std::vector<VertexSet> sets =
      enumerate_hereditary_saturated(g, set_cap);
  const int nsets = static_cast<int>(sets.size());
  std::vector<int> violation(nsets, -1);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < nsets; ++i) {
    if (!admit(sets[i])) continue;
    std::vector<bool> keep(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) keep[v] = !sets[i][v];
    violation[i] = first_disconnected_vertex(g.induced_subgraph(keep));
  }
  ScanResult res;
  for (int i = 0; i < nsets; ++i) {
    if (admit(sets[i])) ++res.sets_scanned;
    if (violation[i] < 0) continue;
    std::vector<bool> keep(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) keep[v] = !sets[i][v];
    res.ok = false;
    res.no_certificate = obstruction_certificate(
        g, sets[i], g.induced_subgraph(keep), violation[i]);
    break;
  }
  return res;
}

std::optional<Verdict> refuse_unless_sink_free(const DirectedGraph& g,
                                               const std::string& condition) {
  const DegreeProfile prof = degree_profile(g);
  if (prof.sinks.empty()) return std::nullopt;
  Verdict v = Verdict::unknown(
      condition,
      "the graph has sinks; the criterion requires every vertex to emit an "
      "edge");
  v.with_hypotheses({"finite graph", "locally finite", "no sinks: FAILED"});
  v.certificate = Json{{"type", "hypothesis_violation"},
                       {"sinks", prof.sinks}};
  return v;
}

Verdict cap_verdict(const std::string& condition, const CapExceededError& e) {
  Verdict v = Verdict::unknown(condition, e.what());
  v.certificate = Json{{"type", "cap_exceeded"},
                       {"what", "hereditary saturated set enumeration"},
                       {"cap", e.cap}};
  return v;
}

}  // namespace

Verdict is_purely_infinite(const DirectedGraph& g, std::uint64_t set_cap) {
  if (auto refusal = refuse_unless_sink_free(g, kPiCondition)) return *refusal;
  const std::vector<std::string> hyp{"finite graph", "locally finite",
                                     "no sinks"};
  ScanResult res;
  try {
    const int n = g.vertex_count();
    res = scan_quotients(g, set_cap, [n](const VertexSet& h) {
      // Proper subsets only: the empty quotient carries no condition.
      return std::count(h.begin(), h.end(), true) < n;
    });
  } catch (const CapExceededError& e) {
    Verdict v = cap_verdict(kPiCondition, e);
    v.with_hypotheses(hyp);
    return v;
  }
  Verdict v = res.ok
                  ? Verdict::yes(kPiCondition,
                                 Json{{"type", "quotient_scan"},
                                      {"proper_sets", res.sets_scanned}})
                  : Verdict::no(kPiCondition, res.no_certificate);
  v.with_hypotheses(hyp);
  return v;
}

Verdict properly_infinite_vertex(const DirectedGraph& g,
                                 const std::string& vertex_id,
                                 std::uint64_t set_cap) {
  const int target = g.vertex_index(vertex_id);
  if (target < 0)
    throw InvalidArgumentError("unknown vertex id `" + vertex_id + "`");
  if (auto refusal = refuse_unless_sink_free(g, kPivCondition))
    return *refusal;
  const std::vector<std::string> hyp{"finite graph", "locally finite",
                                     "no sinks"};
  ScanResult res;
  try {
    res = scan_quotients(g, set_cap,
                         [target](const VertexSet& h) { return !h[target]; });
  } catch (const CapExceededError& e) {
    Verdict v = cap_verdict(kPivCondition, e);
    v.with_hypotheses(hyp);
    return v;
  }
  Verdict v = res.ok ? Verdict::yes(kPivCondition,
                                    Json{{"type", "vertex_scan"},
                                         {"vertex", vertex_id},
                                         {"sets", res.sets_scanned}})
                     : Verdict::no(kPivCondition, res.no_certificate);
  v.with_hypotheses(hyp);
  return v;
}

}  // namespace ck
