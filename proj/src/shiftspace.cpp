#include "ck/shiftspace.hpp"

#include <algorithm>
#include <queue>

#include "ck/errors.hpp"

namespace ck {

namespace {

constexpr std::uint64_t kMaxShiftSteps = 1u << 20;

void require_no_zero_rows(const AdjacencyMatrix& a) {
  for (int i = 0; i < a.n; ++i) {
    bool any = false;
    for (int j = 0; j < a.n; ++j) any = any || a.a[i][j] != 0;
    if (!any)
      throw HypothesisError("row " + std::to_string(i + 1) +
                            " of the matrix is zero; every vertex must emit "
                            "an edge");
  }
}

bool linked(const AdjacencyMatrix& a, int i, int j) {
  return a.a[i - 1][j - 1] != 0;
}

std::vector<int> successors(const AdjacencyMatrix& a, int i) {
  std::vector<int> out;
  for (int j = 1; j <= a.n; ++j)
    if (linked(a, i, j)) out.push_back(j);
  return out;
}

// Is some word position in [from, to) followed by a realizable deviation?
// Index k deviates when word[k-1] has a successor other than word[k].
bool branches_within(const AdjacencyMatrix& a, const std::vector<int>& word,
                     int from, int to) {
  for (int k = from; k < to; ++k)
    for (int j = 1; j <= a.n; ++j)
      if (j != word[k] && linked(a, word[k - 1], j)) return true;
  return false;
}

}  // namespace

void validate_cylinder(const AdjacencyMatrix& a, const Cylinder& c) {
  if (c.word.empty())
    throw InvalidArgumentError("cylinder words must be nonempty");
  for (int v : c.word)
    if (v < 1 || v > a.n)
      throw InvalidArgumentError("cylinder word entry " + std::to_string(v) +
                                 " is outside 1.." + std::to_string(a.n));
  for (std::size_t k = 1; k < c.word.size(); ++k)
    if (!linked(a, c.word[k - 1], c.word[k]))
      throw InvalidArgumentError(
          "cylinder word is not a path: no edge " +
          std::to_string(c.word[k - 1]) + " -> " + std::to_string(c.word[k]));
}

const char* cylinder_order_name(CylinderOrder o) {
  switch (o) {
    case CylinderOrder::Equal:
      return "equal";
    case CylinderOrder::StrictSubset:
      return "strict_subset";
    case CylinderOrder::StrictSuperset:
      return "strict_superset";
    case CylinderOrder::Disjoint:
      return "disjoint";
    case CylinderOrder::Incomparable:
      return "incomparable";
  }
  return "incomparable";
}

CylinderOrder cylinder_compare(const AdjacencyMatrix& a, const Cylinder& c1,
                               const Cylinder& c2) {
  validate_cylinder(a, c1);
  validate_cylinder(a, c2);
  const std::vector<int>& b = c1.word;
  const std::vector<int>& g = c2.word;
  const std::size_t common = std::min(b.size(), g.size());
  for (std::size_t k = 0; k < common; ++k)
    if (b[k] != g[k]) return CylinderOrder::Disjoint;
  if (b.size() == g.size()) return CylinderOrder::Equal;
  if (b.size() > g.size()) {
    // g prefixes b: Z(b) ⊆ Z(g), strict iff an extension of g can leave b.
    return branches_within(a, b, static_cast<int>(g.size()),
                           static_cast<int>(b.size()))
               ? CylinderOrder::StrictSubset
               : CylinderOrder::Equal;
  }
  return branches_within(a, g, static_cast<int>(b.size()),
                         static_cast<int>(g.size()))
             ? CylinderOrder::StrictSuperset
             : CylinderOrder::Equal;
}

std::vector<Cylinder> shift_image(const AdjacencyMatrix& a, const Cylinder& c,
                                  int n) {
  require_no_zero_rows(a);
  validate_cylinder(a, c);
  if (n < 0) throw InvalidArgumentError("shift count must be nonnegative");
  const int len = static_cast<int>(c.word.size());
  if (n < len) {
    Cylinder out;
    out.word.assign(c.word.begin() + n, c.word.end());
    return {out};
  }
  const std::uint64_t steps = static_cast<std::uint64_t>(n) - len + 1;
  if (steps > kMaxShiftSteps)
    throw CapExceededError("shift iteration count", kMaxShiftSteps);
  std::vector<bool> at(a.n + 1, false);
  at[c.word.back()] = true;
  for (std::uint64_t s = 0; s < steps; ++s) {
    std::vector<bool> next(a.n + 1, false);
    for (int i = 1; i <= a.n; ++i)
      if (at[i])
        for (int j : successors(a, i)) next[j] = true;
    at = std::move(next);
  }
  std::vector<Cylinder> out;
  for (int j = 1; j <= a.n; ++j)
    if (at[j]) out.push_back(Cylinder{{j}});
  return out;
}

ContractionWitness contraction_witness(const AdjacencyMatrix& a, int vertex) {
  require_no_zero_rows(a);
  if (vertex < 1 || vertex > a.n)
    throw InvalidArgumentError("vertex " + std::to_string(vertex) +
                               " is outside 1.." + std::to_string(a.n));
  const DirectedGraph g = graph_of_matrix(a);
  const int v0 = vertex - 1;
  // Branching vertices of cyclic components: each lies on a cycle that it
  // can exit, and anything reaching one qualifies.
  const SccDecomposition scc = strongly_connected_components(g);
  std::vector<bool> branching(g.vertex_count(), false);
  for (int c = 0; c < scc.component_count(); ++c) {
    if (!scc.cyclic(g, c)) continue;
    for (int v : scc.components[c])
      if (g.out_degree(v) >= 2) branching[v] = true;
  }
  // Shortest path v0 → some branching vertex.
  std::vector<int> parent(g.vertex_count(), -1);
  std::vector<bool> seen(g.vertex_count(), false);
  std::queue<int> bfs;
  bfs.push(v0);
  seen[v0] = true;
  int target = -1;
  if (branching[v0]) target = v0;
  while (!bfs.empty() && target < 0) {
    const int v = bfs.front();
    bfs.pop();
    for (int e : g.out_edges(v)) {
      const int w = g.edge(e).dst;
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      if (branching[w]) {
        target = w;
        break;
      }
      bfs.push(w);
    }
  }
  if (target < 0)
    throw HypothesisError("no cycle with an exit is reachable from vertex " +
                          std::to_string(vertex));
  std::vector<int> alpha;  // v0 … target, inclusive
  for (int v = target; v != -1; v = parent[v]) alpha.push_back(v);
  std::reverse(alpha.begin(), alpha.end());
  // Shortest closed walk target → target inside its component (necessarily a
  // simple cycle); the branching at `target` makes it a cycle with an exit.
  const int comp = scc.component_of[target];
  std::fill(parent.begin(), parent.end(), -1);
  std::fill(seen.begin(), seen.end(), false);
  std::queue<int> bfs2;
  bfs2.push(target);
  seen[target] = true;
  int closer = -1;  // last vertex before returning to target
  while (!bfs2.empty() && closer < 0) {
    const int v = bfs2.front();
    bfs2.pop();
    for (int e : g.out_edges(v)) {
      const int w = g.edge(e).dst;
      if (scc.component_of[w] != comp) continue;
      if (w == target) {
        closer = v;
        break;
      }
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      bfs2.push(w);
    }
  }
  if (closer < 0)
    throw Error("branching vertex of a cyclic component lost its cycle");
  std::vector<int> gamma;  // target … closer, then back to target implicitly
  for (int v = closer; v != -1; v = parent[v]) gamma.push_back(v);
  std::reverse(gamma.begin(), gamma.end());

  ContractionWitness w;
  w.n = static_cast<int>(alpha.size()) - 1;
  w.m = w.n + static_cast<int>(gamma.size());
  for (std::size_t i = 0; i + 1 < alpha.size(); ++i)
    w.w.word.push_back(alpha[i] + 1);
  for (int v : gamma) w.w.word.push_back(v + 1);
  w.w.word.push_back(target + 1);
  validate_cylinder(a, w.w);

  const std::vector<Cylinder> tn = shift_image(a, w.w, w.n);
  const std::vector<Cylinder> tm = shift_image(a, w.w, w.m);
  if (tn.size() != 1 || tm.size() != 1 ||
      cylinder_compare(a, tn.front(), tm.front()) !=
          CylinderOrder::StrictSubset)
    throw Error("contraction witness failed its strictness verification");
  return w;
}

MarkovClassification markov_classify(const AdjacencyMatrix& a,
                                     std::uint64_t cycle_cap) {
  require_no_zero_rows(a);
  const DirectedGraph g = graph_of_matrix(a);
  MarkovClassification out;

  const Verdict base = is_af(g);
  const char* af_condition =
      "the Markov shift has a periodic path exactly when the matrix graph "
      "has a cycle";
  if (base.value == Truth::Yes) {
    out.af = Verdict::yes(af_condition, base.certificate);
  } else {
    out.af = Verdict::no(af_condition, base.certificate);
    out.af.certificate["note"] =
        "repeating this cycle forever is a periodic path";
  }

  out.isolated_periodic = torus_corners(g);

  // A vertex on at least two distinct simple cycles seeds a
  // non-eventually-periodic path; reaching such a vertex suffices, and
  // nothing short of it does.
  const std::vector<Path> cycles = simple_cycles(g, cycle_cap);
  std::vector<int> on_cycles(g.vertex_count(), 0);
  for (const Path& p : cycles) {
    std::vector<bool> member(g.vertex_count(), false);
    for (int e : p.edges) member[g.edge(e).src] = true;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (member[v]) ++on_cycles[v];
  }
  std::vector<bool> doubled(g.vertex_count(), false);
  for (int v = 0; v < g.vertex_count(); ++v) doubled[v] = on_cycles[v] >= 2;
  const std::vector<bool> can = backward_closure(g, doubled);
  const char* ap_condition =
      "a non-eventually-periodic path exists from the vertex exactly when "
      "it reaches a vertex lying on two distinct simple cycles";
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (can[v]) {
      int hub = -1;
      for (int w : reachable_from(g, v))
        if (doubled[w] && hub < 0) hub = w;
      Json cert;
      cert["type"] = "branching_vertex";
      cert["vertex"] = g.vertex_id(hub);
      cert["cycles_through"] = on_cycles[hub];
      out.aperiodic_point.emplace(g.vertex_id(v),
                                  Verdict::yes(ap_condition, cert));
    } else {
      Json cert;
      cert["type"] = "eventually_periodic";
      cert["note"] =
          "every vertex reachable from here lies on at most one simple "
          "cycle, so every infinite path is eventually trapped on one cycle";
      out.aperiodic_point.emplace(g.vertex_id(v),
                                  Verdict::no(ap_condition, cert));
    }
  }
  return out;
}

}  // namespace ck
