#ifndef CK_CLASSIFY_HPP
#define CK_CLASSIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ck/graph.hpp"
#include "ck/ideals.hpp"
#include "ck/presentations.hpp"
#include "ck/verdict.hpp"

namespace ck {

/// An exit-free simple cycle.  The corner of the algebra it supports is a
/// matrix algebra over continuous functions on the circle, of size = period.
struct TorusCorner {
  Path cycle;
  int period = 0;
};

Json torus_corner_json(const DirectedGraph& g, const TorusCorner& c);

/// All exit-free simple cycles.  A cycle is exit-free iff every vertex on it
/// has out-degree exactly 1, so these are exactly the cycles of the
/// out-degree-1 successor map — found in linear time, no enumeration.
/// Deterministic order: by smallest vertex index on the cycle.
std::vector<TorusCorner> torus_corners(const DirectedGraph& g);

/// Mask of vertices lying on some simple cycle that has an exit.
/// Characterization used (and proved in the test suite against brute-force
/// cycle enumeration): v qualifies iff its strongly connected component is
/// cyclic and contains a vertex of out-degree ≥ 2.  (If every vertex of the
/// component has out-degree 1, the component is a single exit-free cycle;
/// conversely any cycle through v inside such a component picks up an exit
/// at the high-degree vertex or can be rerouted through one.)
std::vector<bool> cycle_with_exit_vertices(const DirectedGraph& g);

/// AF ⟺ no cycles.  NO-certificate: a simple cycle.
Verdict is_af(const DirectedGraph& g);

/// Matrix flavor: decides on E_A; requires no zero rows; the NO-certificate
/// additionally says whether the cycle has an exit (infinite projection) or
/// not (torus corner).
Verdict is_af(const AdjacencyMatrix& m);

/// Pure infiniteness of the algebra of a finite graph without sinks:
/// YES iff in every quotient by a proper hereditary saturated vertex set,
/// every vertex connects to a cycle with an exit.  NO-certificate: the set,
/// a violating vertex, and the obstruction reachable from it (an exit-free
/// cycle, or an acyclic forward-invariant part).  Set enumeration past
/// `set_cap` yields UNKNOWN with a cap certificate.
Verdict is_purely_infinite(const DirectedGraph& g,
                           std::uint64_t set_cap = kDefaultSetCap);

/// Proper infiniteness of one vertex projection: the same scan restricted to
/// hereditary saturated sets avoiding the vertex.
Verdict properly_infinite_vertex(const DirectedGraph& g,
                                 const std::string& vertex_id,
                                 std::uint64_t set_cap = kDefaultSetCap);

}  // namespace ck

#endif  // CK_CLASSIFY_HPP
