#include "ck/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ck {

DirectedGraph::DirectedGraph(std::vector<std::string> vertex_ids,
                             std::vector<std::array<std::string, 3>> edge_triples) {
  std::sort(vertex_ids.begin(), vertex_ids.end());
  for (std::size_t i = 1; i < vertex_ids.size(); ++i) {
    if (vertex_ids[i] == vertex_ids[i - 1]) {
      throw InvalidArgumentError("duplicate vertex id '" + vertex_ids[i] + "'");
    }
  }
  vertex_ids_ = std::move(vertex_ids);

  std::sort(edge_triples.begin(), edge_triples.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  // Duplicate check runs before edge construction: building an Edge moves
  // the id string out of the triple, which would blank later comparisons.
  for (std::size_t i = 1; i < edge_triples.size(); ++i) {
    if (edge_triples[i][0] == edge_triples[i - 1][0]) {
      throw InvalidArgumentError("duplicate edge id '" + edge_triples[i][0] + "'");
    }
  }
  edges_.reserve(edge_triples.size());
  for (std::size_t i = 0; i < edge_triples.size(); ++i) {
    int s = vertex_index(edge_triples[i][1]);
    int r = vertex_index(edge_triples[i][2]);
    if (s < 0) {
      throw InvalidArgumentError("edge '" + edge_triples[i][0] +
                                 "' has undeclared source '" + edge_triples[i][1] + "'");
    }
    if (r < 0) {
      throw InvalidArgumentError("edge '" + edge_triples[i][0] +
                                 "' has undeclared range '" + edge_triples[i][2] + "'");
    }
    edges_.push_back(Edge{std::move(edge_triples[i][0]), s, r});
  }

  out_edges_.assign(vertex_ids_.size(), {});
  in_edges_.assign(vertex_ids_.size(), {});
  for (int e = 0; e < edge_count(); ++e) {
    out_edges_[edges_[e].src].push_back(e);
    in_edges_[edges_[e].dst].push_back(e);
  }
}

int DirectedGraph::vertex_index(std::string_view id) const {
  auto it = std::lower_bound(vertex_ids_.begin(), vertex_ids_.end(), id);
  if (it == vertex_ids_.end() || *it != id) return -1;
  return static_cast<int>(it - vertex_ids_.begin());
}

int DirectedGraph::edge_index(std::string_view id) const {
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), id,
      [](const Edge& e, std::string_view key) { return e.id < key; });
  if (it == edges_.end() || it->id != id) return -1;
  return static_cast<int>(it - edges_.begin());
}

DirectedGraph DirectedGraph::induced_subgraph(const std::vector<bool>& keep_vertex) const {
  std::vector<std::string> vs;
  for (int v = 0; v < vertex_count(); ++v) {
    if (keep_vertex.at(v)) vs.push_back(vertex_ids_[v]);
  }
  std::vector<std::array<std::string, 3>> es;
  for (const Edge& e : edges_) {
    if (keep_vertex.at(e.src) && keep_vertex.at(e.dst)) {
      es.push_back({e.id, vertex_ids_[e.src], vertex_ids_[e.dst]});
    }
  }
  return DirectedGraph(std::move(vs), std::move(es));
}

bool Path::valid(const DirectedGraph& g) const {
  if (edges.empty()) return false;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i] < 0 || edges[i] >= g.edge_count()) return false;
    if (i > 0 && g.edge(edges[i]).src != g.edge(edges[i - 1]).dst) return false;
  }
  return true;
}

int Path::source(const DirectedGraph& g) const { return g.edge(edges.front()).src; }

int Path::range(const DirectedGraph& g) const { return g.edge(edges.back()).dst; }

bool Path::is_cycle(const DirectedGraph& g) const {
  return valid(g) && source(g) == range(g);
}

std::vector<int> Path::source_vertices(const DirectedGraph& g) const {
  std::vector<int> vs;
  vs.reserve(edges.size());
  for (int e : edges) vs.push_back(g.edge(e).src);
  return vs;
}

std::vector<std::string> Path::edge_ids(const DirectedGraph& g) const {
  std::vector<std::string> ids;
  ids.reserve(edges.size());
  for (int e : edges) ids.push_back(g.edge(e).id);
  return ids;
}

DegreeProfile degree_profile(const DirectedGraph& g) {
  DegreeProfile p;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.out_degree(v) == 0) p.sinks.push_back(g.vertex_id(v));
  }
  p.has_zero_rows = !p.sinks.empty();
  return p;
}

namespace {

// Backtracking enumeration of the simple cycles whose smallest vertex is
// `base`, over the subgraph of vertices ≥ base that can reach base.  The
// reach-pruning keeps the search close to output-sensitive at desk scale; a
// step budget guards the worst case.
struct CycleSearch {
  const DirectedGraph& g;
  int base;
  const std::vector<bool>& can_reach_base;
  std::vector<bool> on_path;
  std::vector<int> path_edges;
  std::vector<Path>& out;
  std::uint64_t cap;
  std::uint64_t& steps;
  std::uint64_t step_cap;

  void dfs(int v) {
    if (++steps > step_cap) {
      throw CapExceededError("simple-cycle search steps", step_cap);
    }
    for (int e : g.out_edges(v)) {
      int w = g.edge(e).dst;
      if (g.edge(e).src == g.edge(e).dst) continue;  // loops handled separately
      if (w < base || !can_reach_base[w]) continue;
      if (w == base) {
        path_edges.push_back(e);
        if (out.size() >= cap) throw CapExceededError("simple cycles", cap);
        out.push_back(Path{path_edges});
        path_edges.pop_back();
      } else if (!on_path[w]) {
        on_path[w] = true;
        path_edges.push_back(e);
        dfs(w);
        path_edges.pop_back();
        on_path[w] = false;
      }
    }
  }
};

}  // namespace

std::vector<Path> simple_cycles(const DirectedGraph& g, std::uint64_t cap) {
  std::vector<Path> cycles;
  std::uint64_t steps = 0;
  const std::uint64_t step_cap = std::max<std::uint64_t>(cap * 16, 10'000'000);
  for (int base = 0; base < g.vertex_count(); ++base) {
    // Length-1 cycles at the base: one per loop edge.
    for (int e : g.out_edges(base)) {
      if (g.edge(e).dst == base) {
        if (cycles.size() >= cap) throw CapExceededError("simple cycles", cap);
        cycles.push_back(Path{{e}});
      }
    }
    // Longer cycles with minimum vertex = base: restrict to vertices ≥ base
    // that reach base within that restriction (backward BFS).
    std::vector<bool> reach(g.vertex_count(), false);
    std::vector<int> queue{base};
    reach[base] = true;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (int e : g.in_edges(v)) {
        int u = g.edge(e).src;
        if (u >= base && !reach[u]) {
          reach[u] = true;
          queue.push_back(u);
        }
      }
    }
    std::vector<bool> on_path(g.vertex_count(), false);
    on_path[base] = true;
    std::vector<int> path_edges;
    CycleSearch search{g, base, reach, std::move(on_path), std::move(path_edges),
                       cycles, cap, steps, step_cap};
    search.dfs(base);
  }
  return cycles;
}

std::optional<Path> find_any_cycle(const DirectedGraph& g) {
  // Iterative DFS with colors; a back edge closes a cycle along the DFS path.
  enum { White, Gray, Black };
  std::vector<int> color(g.vertex_count(), White);
  std::vector<int> path_edges;       // DFS path as edge indices
  std::vector<int> path_vertices;    // corresponding vertex stack
  for (int root = 0; root < g.vertex_count(); ++root) {
    if (color[root] != White) continue;
    // frame: (vertex, position into out_edges)
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    color[root] = Gray;
    path_vertices.assign(1, root);
    path_edges.clear();
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < g.out_edges(v).size()) {
        int e = g.out_edges(v)[i++];
        int w = g.edge(e).dst;
        if (color[w] == Gray) {
          // Unwind the path back to w: edges from w's position onward + e.
          Path c;
          std::size_t j = 0;
          while (path_vertices[j] != w) ++j;
          for (; j < path_edges.size(); ++j) c.edges.push_back(path_edges[j]);
          c.edges.push_back(e);
          return c;
        }
        if (color[w] == White) {
          color[w] = Gray;
          stack.push_back({w, 0});
          path_vertices.push_back(w);
          path_edges.push_back(e);
        }
      } else {
        color[v] = Black;
        stack.pop_back();
        path_vertices.pop_back();
        if (!path_edges.empty()) path_edges.pop_back();
      }
    }
  }
  return std::nullopt;
}

bool cycle_has_exit(const DirectedGraph& g, const Path& cycle) {
  if (!cycle.is_cycle(g)) {
    throw InvalidArgumentError("cycle_has_exit: path is not a cycle of this graph");
  }
  for (std::size_t i = 0; i < cycle.edges.size(); ++i) {
    int v = g.edge(cycle.edges[i]).src;
    for (int e : g.out_edges(v)) {
      if (e != cycle.edges[i]) return true;
    }
  }
  return false;
}

SccDecomposition strongly_connected_components(const DirectedGraph& g) {
  const int n = g.vertex_count();
  // Iterative Tarjan.
  std::vector<int> dfs_number(n, -1), low(n, 0), raw_comp(n, -1);
  std::vector<int> tarjan_stack;
  std::vector<bool> on_stack(n, false);
  int next_dfs = 0, next_comp = 0;

  for (int root = 0; root < n; ++root) {
    if (dfs_number[root] != -1) continue;
    std::vector<std::pair<int, std::size_t>> call_stack{{root, 0}};
    while (!call_stack.empty()) {
      auto& [v, i] = call_stack.back();
      if (i == 0) {
        dfs_number[v] = low[v] = next_dfs++;
        tarjan_stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (i < g.out_edges(v).size()) {
        int w = g.edge(g.out_edges(v)[i]).dst;
        ++i;
        if (dfs_number[w] == -1) {
          call_stack.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], dfs_number[w]);
      }
      if (descended) continue;
      const int done = v;
      if (low[done] == dfs_number[done]) {
        while (true) {
          int w = tarjan_stack.back();
          tarjan_stack.pop_back();
          on_stack[w] = false;
          raw_comp[w] = next_comp;
          if (w == done) break;
        }
        ++next_comp;
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        int parent = call_stack.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }

  // Renumber components by smallest member vertex for input-order stability.
  std::vector<int> smallest(next_comp, n);
  for (int v = 0; v < n; ++v) {
    smallest[raw_comp[v]] = std::min(smallest[raw_comp[v]], v);
  }
  std::vector<int> order(next_comp);
  for (int c = 0; c < next_comp; ++c) order[c] = c;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return smallest[a] < smallest[b]; });
  std::vector<int> renumber(next_comp);
  for (int rank = 0; rank < next_comp; ++rank) renumber[order[rank]] = rank;

  SccDecomposition d;
  d.component_of.resize(n);
  d.components.resize(next_comp);
  for (int v = 0; v < n; ++v) {
    d.component_of[v] = renumber[raw_comp[v]];
    d.components[d.component_of[v]].push_back(v);
  }
  d.condensation_out.resize(next_comp);
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : g.edges()) {
    int a = d.component_of[e.src], b = d.component_of[e.dst];
    if (a != b && seen.insert({a, b}).second) d.condensation_out[a].push_back(b);
  }
  for (auto& adj : d.condensation_out) std::sort(adj.begin(), adj.end());
  return d;
}

bool SccDecomposition::cyclic(const DirectedGraph& g, int comp) const {
  const auto& vs = components.at(comp);
  if (vs.size() > 1) return true;
  for (int e : g.out_edges(vs[0])) {
    if (g.edge(e).dst == vs[0]) return true;
  }
  return false;
}

std::vector<int> reachable_from(const DirectedGraph& g, int v) {
  if (v < 0 || v >= g.vertex_count()) {
    throw InvalidArgumentError("reachable_from: unknown vertex index");
  }
  std::vector<bool> start(g.vertex_count(), false);
  start[v] = true;
  std::vector<bool> mask = forward_closure(g, start);
  std::vector<int> out;
  for (int w = 0; w < g.vertex_count(); ++w) {
    if (mask[w]) out.push_back(w);
  }
  return out;
}

std::vector<bool> forward_closure(const DirectedGraph& g,
                                  const std::vector<bool>& start) {
  std::vector<bool> mask = start;
  mask.resize(g.vertex_count(), false);
  std::vector<int> queue;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (mask[v]) queue.push_back(v);
  }
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    for (int e : g.out_edges(v)) {
      int w = g.edge(e).dst;
      if (!mask[w]) {
        mask[w] = true;
        queue.push_back(w);
      }
    }
  }
  return mask;
}

std::vector<bool> backward_closure(const DirectedGraph& g,
                                   const std::vector<bool>& start) {
  std::vector<bool> mask = start;
  mask.resize(g.vertex_count(), false);
  std::vector<int> queue;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (mask[v]) queue.push_back(v);
  }
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    for (int e : g.in_edges(v)) {
      int u = g.edge(e).src;
      if (!mask[u]) {
        mask[u] = true;
        queue.push_back(u);
      }
    }
  }
  return mask;
}

}  // namespace ck
