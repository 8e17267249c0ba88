#include "ck/ideals.hpp"

#include <algorithm>
#include <set>

namespace ck {

bool is_hereditary(const DirectedGraph& g, const VertexSet& h) {
  for (const Edge& e : g.edges()) {
    if (h.at(e.src) && !h.at(e.dst)) return false;
  }
  return true;
}

bool is_saturated(const DirectedGraph& g, const VertexSet& h) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (h.at(v) || g.out_degree(v) == 0) continue;
    bool all_in = true;
    for (int e : g.out_edges(v)) {
      if (!h.at(g.edge(e).dst)) {
        all_in = false;
        break;
      }
    }
    if (all_in) return false;
  }
  return true;
}

VertexSet hereditary_closure(const DirectedGraph& g, const VertexSet& s) {
  if (static_cast<int>(s.size()) != g.vertex_count()) {
    throw InvalidArgumentError("hereditary_closure: mask size mismatch");
  }
  return forward_closure(g, s);
}

VertexSet saturate(const DirectedGraph& g, const VertexSet& s) {
  if (!is_hereditary(g, s)) {
    throw InvalidArgumentError("saturate: input set is not hereditary");
  }
  VertexSet h = s;
  // Fixpoint: add non-sink vertices whose every out-edge ranges in h.
  // Adding such a vertex keeps h hereditary, so the result is the smallest
  // saturated hereditary superset.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (h[v] || g.out_degree(v) == 0) continue;
      bool all_in = true;
      for (int e : g.out_edges(v)) {
        if (!h[g.edge(e).dst]) {
          all_in = false;
          break;
        }
      }
      if (all_in) {
        h[v] = true;
        changed = true;
      }
    }
  }
  return h;
}

namespace {

bool set_order(const VertexSet& a, const VertexSet& b) {
  int ca = static_cast<int>(std::count(a.begin(), a.end(), true));
  int cb = static_cast<int>(std::count(b.begin(), b.end(), true));
  if (ca != cb) return ca < cb;
  return a > b;  // with equal cardinality, earlier members first
}

}  // namespace

std::vector<VertexSet> enumerate_hereditary_saturated(const DirectedGraph& g,
                                                      std::uint64_t cap) {
  const int n = g.vertex_count();
  // Principal closed sets: close each singleton.  Every hereditary saturated
  // H equals the join of the principal sets of its members (each such
  // principal set stays inside H because closure operations cannot escape a
  // closed superset), so iterating joins with principal sets from ∅ reaches
  // exactly the lattice.
  std::vector<VertexSet> principal(n);
  for (int v = 0; v < n; ++v) {
    VertexSet s(n, false);
    s[v] = true;
    principal[v] = saturate(g, hereditary_closure(g, s));
  }

  std::set<VertexSet> known;
  std::vector<VertexSet> queue;
  VertexSet empty(n, false);
  known.insert(empty);
  queue.push_back(empty);
  while (!queue.empty()) {
    VertexSet h = std::move(queue.back());
    queue.pop_back();
    for (int v = 0; v < n; ++v) {
      if (h[v]) continue;
      VertexSet join = h;
      for (int w = 0; w < n; ++w) {
        if (principal[v][w]) join[w] = true;
      }
      // Union of hereditary sets is hereditary; re-saturate to finish the join.
      join = saturate(g, join);
      if (known.insert(join).second) {
        if (known.size() > cap) {
          throw CapExceededError("hereditary saturated sets", cap);
        }
        queue.push_back(std::move(join));
      }
    }
  }

  std::vector<VertexSet> out(known.begin(), known.end());
  std::sort(out.begin(), out.end(), set_order);
  return out;
}

DirectedGraph quotient_graph(const DirectedGraph& g, const VertexSet& h) {
  if (!is_hereditary(g, h) || !is_saturated(g, h)) {
    throw InvalidArgumentError("quotient_graph: H is not hereditary saturated");
  }
  VertexSet keep(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) keep[v] = !h.at(v);
  // Keeping every edge with both endpoints in F is exactly {e : r(e) ∈ F}:
  // H hereditary means no edge runs from H into F.
  return g.induced_subgraph(keep);
}

std::vector<std::string> set_to_ids(const DirectedGraph& g, const VertexSet& s) {
  std::vector<std::string> ids;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (s.at(v)) ids.push_back(g.vertex_id(v));
  }
  return ids;
}

VertexSet ids_to_set(const DirectedGraph& g, const std::vector<std::string>& ids) {
  VertexSet s(g.vertex_count(), false);
  for (const std::string& id : ids) {
    int v = g.vertex_index(id);
    if (v < 0) throw InvalidArgumentError("unknown vertex id '" + id + "'");
    s[v] = true;
  }
  return s;
}

}  // namespace ck
