#ifndef CK_IDEALS_HPP
#define CK_IDEALS_HPP

#include <cstdint>
#include <vector>

#include "ck/graph.hpp"

namespace ck {

/// Vertex subsets are membership masks indexed like the graph's vertices.
using VertexSet = std::vector<bool>;

/// H is hereditary iff closed under forward reachability.
bool is_hereditary(const DirectedGraph& g, const VertexSet& h);

/// H is saturated iff every vertex that emits at least one edge, all of whose
/// emitted edges range in H, already lies in H.  Sinks are never forced in
/// (non-sink convention).
bool is_saturated(const DirectedGraph& g, const VertexSet& h);

/// Smallest hereditary superset of s (forward closure).
VertexSet hereditary_closure(const DirectedGraph& g, const VertexSet& s);

/// Smallest saturated superset of a hereditary s; stays hereditary.
/// Throws InvalidArgumentError when s is not hereditary.
VertexSet saturate(const DirectedGraph& g, const VertexSet& s);

inline constexpr std::uint64_t kDefaultSetCap = 1u << 20;

/// All hereditary saturated subsets, ∅ and E^0 included.  Sorted by
/// cardinality, then lexicographically by the vertex-index sequence — a
/// linear extension of the inclusion order.  Computed by closing the
/// principal closed sets under joins (every closed set is a join of
/// principal ones), so the cost is proportional to the lattice size, not
/// 2^|V|.  Throws CapExceededError past the cap.
std::vector<VertexSet> enumerate_hereditary_saturated(
    const DirectedGraph& g, std::uint64_t cap = kDefaultSetCap);

/// The subgraph (F, {e : r(e) ∈ F}) for F = E^0 ∖ H.  Note the edge rule:
/// an edge survives iff its *range* stays; edges from F into H are dropped
/// and edges inside F are kept (sources inside H cannot occur when H is
/// hereditary).  Throws InvalidArgumentError when H is not hereditary
/// saturated.
DirectedGraph quotient_graph(const DirectedGraph& g, const VertexSet& h);

/// Helpers between masks and sorted id lists (certificate form).
std::vector<std::string> set_to_ids(const DirectedGraph& g, const VertexSet& s);
VertexSet ids_to_set(const DirectedGraph& g, const std::vector<std::string>& ids);

}  // namespace ck

#endif  // CK_IDEALS_HPP
