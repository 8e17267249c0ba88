#ifndef CK_REFERENCE_HPP
#define CK_REFERENCE_HPP

#include <vector>

#include "ck/graph.hpp"
#include "ck/ideals.hpp"
#include "ck/periodic.hpp"

namespace ck::reference {

/// Serial counterparts of the parallel kernels, written against the raw
/// definitions rather than the production algorithms.  They back the
/// benchmark comparison and serve as independent cross-checks.

/// All hereditary saturated vertex sets by filtering every one of the
/// 2^|V| subsets against the definitions.  Throws CapExceededError beyond
/// 24 vertices.  Ascending (cardinality, vertex-index-list) order.
std::vector<VertexSet> hereditary_saturated_sets(const DirectedGraph& g);

/// Serial quotient-by-quotient scan deciding whether every vertex of every
/// quotient by a proper hereditary saturated set connects to a simple cycle
/// having an exit.  Assumes a finite sink-free graph.
bool purely_infinite(const DirectedGraph& g);

/// Extremal cycle means per cyclic strongly connected component by
/// exhaustive simple-cycle enumeration (closed-walk means are convex
/// combinations of simple-cycle means, so the extrema agree).
std::vector<MeanCycleInfo> extremal_cycle_means(
    const DirectedGraph& g, const std::vector<int>& weight,
    std::uint64_t cycle_cap = kDefaultCycleCap);

}  // namespace ck::reference

#endif  // CK_REFERENCE_HPP
