#ifndef CK_GRAPH_HPP
#define CK_GRAPH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ck/errors.hpp"

namespace ck {

/// An edge of a finite directed graph.  Endpoints are vertex indices into the
/// owning graph; multi-edges and loops are fully supported.
struct Edge {
  std::string id;
  int src = -1;
  int dst = -1;
};

/// Finite directed graph with opaque string ids for vertices and edges.
/// Vertices and edges are sorted by id at construction, so indices — and
/// everything derived from them (certificates, reports) — are stable across
/// runs regardless of input order.  Immutable after construction.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// edge_triples entries are (edge id, source vertex id, range vertex id).
  /// Throws InvalidArgumentError on duplicate ids or dangling endpoints.
  DirectedGraph(std::vector<std::string> vertex_ids,
                std::vector<std::array<std::string, 3>> edge_triples);

  int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return vertex_ids_.empty(); }

  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertex_id(int v) const { return vertex_ids_.at(v); }
  const Edge& edge(int e) const { return edges_.at(e); }

  /// -1 when the id is unknown.
  int vertex_index(std::string_view id) const;
  int edge_index(std::string_view id) const;

  /// Edge indices leaving / entering v, ascending.
  const std::vector<int>& out_edges(int v) const { return out_edges_.at(v); }
  const std::vector<int>& in_edges(int v) const { return in_edges_.at(v); }
  int out_degree(int v) const { return static_cast<int>(out_edges_.at(v).size()); }
  int in_degree(int v) const { return static_cast<int>(in_edges_.at(v).size()); }

  /// Induced subgraph: keeps the flagged vertices and every edge whose two
  /// endpoints are both kept.  Ids carry over unchanged.
  DirectedGraph induced_subgraph(const std::vector<bool>& keep_vertex) const;

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_edges_;
  std::vector<std::vector<int>> in_edges_;
};

/// A nonempty edge path e_1 ... e_k with r(e_j) = s(e_{j+1}).  Stored as edge
/// indices into a fixed graph.  A cycle is a path whose source equals its
/// range.
struct Path {
  std::vector<int> edges;

  bool valid(const DirectedGraph& g) const;
  int source(const DirectedGraph& g) const;
  int range(const DirectedGraph& g) const;
  bool is_cycle(const DirectedGraph& g) const;
  int length() const { return static_cast<int>(edges.size()); }
  /// s(e_1), s(e_2), ..., s(e_k) — for a cycle, each vertex exactly once.
  std::vector<int> source_vertices(const DirectedGraph& g) const;
  std::vector<std::string> edge_ids(const DirectedGraph& g) const;
};

struct DegreeProfile {
  bool row_finite = true;      // trivially true for finite graphs
  bool locally_finite = true;  // likewise
  std::vector<std::string> sinks;  // vertices emitting no edge, sorted by id
  bool has_zero_rows = false;      // same vertices, matrix-language flag
};

DegreeProfile degree_profile(const DirectedGraph& g);

inline constexpr std::uint64_t kDefaultCycleCap = 1'000'000;

/// All simple cycles (distinct vertices except the closing one), each
/// reported once with its base at the smallest vertex index.  Deterministic
/// order: by base vertex, then lexicographically by edge indices.  Parallel
/// edges yield distinct cycles.  Throws CapExceededError past the cap.
std::vector<Path> simple_cycles(const DirectedGraph& g,
                                std::uint64_t cap = kDefaultCycleCap);

/// Some cycle, if one exists, located by iterative DFS (cheap, no
/// enumeration).  Deterministic.
std::optional<Path> find_any_cycle(const DirectedGraph& g);

/// True iff some vertex of the cycle emits an edge that is not the cycle's
/// own next edge at that vertex.  The extra edge may land anywhere,
/// including back on the cycle.
bool cycle_has_exit(const DirectedGraph& g, const Path& cycle);

struct SccDecomposition {
  /// component id per vertex; components are numbered by their smallest
  /// vertex index, ascending, so the numbering is input-order independent.
  std::vector<int> component_of;
  /// vertex indices per component, ascending.
  std::vector<std::vector<int>> components;
  /// condensation adjacency (deduplicated, ascending); always acyclic.
  std::vector<std::vector<int>> condensation_out;

  int component_count() const { return static_cast<int>(components.size()); }
  /// A component is cyclic iff it has more than one vertex or carries a loop.
  bool cyclic(const DirectedGraph& g, int comp) const;
};

SccDecomposition strongly_connected_components(const DirectedGraph& g);

/// {v} ∪ all vertices w with a path v → w.  Ascending vertex indices.
std::vector<int> reachable_from(const DirectedGraph& g, int v);

/// Forward closure of a set, as a membership mask.
std::vector<bool> forward_closure(const DirectedGraph& g,
                                  const std::vector<bool>& start);

/// Backward closure: all vertices that reach the set (including it).
std::vector<bool> backward_closure(const DirectedGraph& g,
                                   const std::vector<bool>& start);

}  // namespace ck

#endif  // CK_GRAPH_HPP
