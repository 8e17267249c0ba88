#include "ck/reference.hpp"

#include <algorithm>

#include "ck/errors.hpp"

namespace ck::reference {

namespace {

bool hereditary_by_definition(const DirectedGraph& g, const VertexSet& h) {
  for (int e = 0; e < g.edge_count(); ++e)
    if (h[g.edge(e).src] && !h[g.edge(e).dst]) return false;
  return true;
}

bool saturated_by_definition(const DirectedGraph& g, const VertexSet& h) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (h[v] || g.out_degree(v) == 0) continue;
    bool escapes = false;
    for (int e : g.out_edges(v))
      if (!h[g.edge(e).dst]) escapes = true;
    if (!escapes) return false;
  }
  return true;
}

std::vector<int> set_indices(const VertexSet& h) {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(h.size()); ++v)
    if (h[v]) out.push_back(v);
  return out;
}

}  // namespace

std::vector<VertexSet> hereditary_saturated_sets(const DirectedGraph& g) {
  const int n = g.vertex_count();
  if (n > 24)
    throw CapExceededError("brute-force subset enumeration", 1u << 24);
  std::vector<VertexSet> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << n); ++bits) {
    VertexSet h(n, false);
    for (int v = 0; v < n; ++v) h[v] = (bits >> v) & 1u;
    if (hereditary_by_definition(g, h) && saturated_by_definition(g, h))
      out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(),
            [](const VertexSet& a, const VertexSet& b) {
              const auto ca = std::count(a.begin(), a.end(), true);
              const auto cb = std::count(b.begin(), b.end(), true);
              if (ca != cb) return ca < cb;
              return set_indices(a) < set_indices(b);
            });
  return out;
}

bool purely_infinite(const DirectedGraph& g) {
  for (const VertexSet& h : hereditary_saturated_sets(g)) {
    if (std::count(h.begin(), h.end(), true) == g.vertex_count()) continue;
    VertexSet keep(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) keep[v] = !h[v];
    DirectedGraph q = g.induced_subgraph(keep);
    // Vertices on simple cycles that have an exit, then who reaches them.
    std::vector<bool> anchor(q.vertex_count(), false);
    for (const Path& cycle : simple_cycles(q)) {
      if (!cycle_has_exit(q, cycle)) continue;
      for (int v : cycle.source_vertices(q)) anchor[v] = true;
    }
    const std::vector<bool> connected = backward_closure(q, anchor);
    for (int v = 0; v < q.vertex_count(); ++v)
      if (!connected[v]) return false;
  }
  return true;
}

std::vector<MeanCycleInfo> extremal_cycle_means(const DirectedGraph& g,
                                                const std::vector<int>& weight,
                                                std::uint64_t cycle_cap) {
  const SccDecomposition scc = strongly_connected_components(g);
  const std::vector<Path> cycles = simple_cycles(g, cycle_cap);
  struct Extremes {
    bool any = false;
    Rat min, max;
    std::vector<int> min_cycle, max_cycle;
  };
  std::vector<Extremes> per_comp(scc.component_count());
  for (const Path& cycle : cycles) {
    const int comp = scc.component_of[g.edge(cycle.edges.front()).src];
    Rat total = 0;
    for (int e : cycle.edges) total += weight[e];
    const Rat mean = total / static_cast<int>(cycle.edges.size());
    Extremes& x = per_comp[comp];
    if (!x.any || mean < x.min) {
      x.min = mean;
      x.min_cycle = cycle.edges;
    }
    if (!x.any || mean > x.max) {
      x.max = mean;
      x.max_cycle = cycle.edges;
    }
    x.any = true;
  }
  std::vector<MeanCycleInfo> out;
  for (int c = 0; c < scc.component_count(); ++c) {
    if (!per_comp[c].any) continue;
    MeanCycleInfo info;
    std::vector<int> verts = scc.components[c];
    std::sort(verts.begin(), verts.end());
    for (int v : verts) info.vertices.push_back(g.vertex_id(v));
    info.min_mean = per_comp[c].min;
    info.max_mean = per_comp[c].max;
    for (int e : per_comp[c].min_cycle)
      info.min_cycle.push_back(g.edge(e).id);
    for (int e : per_comp[c].max_cycle)
      info.max_cycle.push_back(g.edge(e).id);
    out.push_back(std::move(info));
  }
  return out;
}

}  // namespace ck::reference
