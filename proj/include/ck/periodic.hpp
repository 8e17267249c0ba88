#ifndef CK_PERIODIC_HPP
#define CK_PERIODIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "ck/graph.hpp"
#include "ck/presentations.hpp"
#include "ck/rational.hpp"
#include "ck/verdict.hpp"

namespace ck {

/// The finite weighted digraph obtained from the realized infinite graph by
/// identifying all copies of each block vertex: vertices = stem ∪ block, and
/// every edge carries the copy displacement of its realizations (+1 / −1 for
/// cross edges, 0 for everything else).  Walks of weight w in the quotient
/// correspond to realized walks moving w copies upward, subject to the floor
/// (copies start at 1).
struct ShiftQuotient {
  enum class EdgeKind { Stem, Block, Cross, ToBlock, ToStem };

  DirectedGraph graph;
  std::vector<int> weight;     // per edge index
  std::vector<EdgeKind> kind;  // per edge index
  std::vector<bool> is_block;  // per vertex index
};

ShiftQuotient shift_quotient(const PeriodicPresentation& p);

/// Edge weights of an induced subgraph, pulled back through edge ids.
std::vector<int> subgraph_weights(const ShiftQuotient& q,
                                  const DirectedGraph& sub);

/// Exact extremal cycle means of one strongly connected component, with
/// witness cycles whose means attain the extremes.
struct MeanCycleInfo {
  std::vector<std::string> vertices;       // component members, by id
  Rat min_mean;
  Rat max_mean;
  std::vector<std::string> min_cycle;      // edge ids, in cycle order
  std::vector<std::string> max_cycle;
};

/// One entry per cyclic strongly connected component (Karp's algorithm for
/// the values, tight-subgraph search for the witnesses).  Components are
/// processed independently — this is a parallel kernel — and reported in
/// component order, so the output is deterministic.
std::vector<MeanCycleInfo> mean_cycles(const DirectedGraph& g,
                                       const std::vector<int>& weight);

/// A realized walk pinned to concrete copies: valid edge ids of
/// realize_truncation(p, copies).
struct RealizedWitness {
  int copies = 0;
  std::string start_vertex;  // realized id the walk starts (and ends) at
  std::vector<std::string> edge_ids;
};

/// Left-infiniteness classification of quotient vertices.  A vertex is
/// classified left-infinite iff it is reachable (in the quotient) from a
/// block component carrying a negative-mean cycle; its realizations beyond a
/// copy threshold then have infinitely many predecessors.  Unclassified
/// vertices are left-finite at every copy.
struct LeftClassification {
  std::vector<bool> left_infinite;       // quotient vertex mask
  std::vector<MeanCycleInfo> negative;   // the negative components
};

LeftClassification left_infinite_vertices(const PeriodicPresentation& p);

/// Searches for a realized cycle all of whose quotient vertices lie in
/// `allowed` (mask over quotient vertices; empty mask = everything).
/// Block-only cycles exist iff some allowed block component's cycle means
/// straddle 0; stem-involving cycles are found through bounded-height
/// excursion search.  The returned witness is an explicit cycle in a
/// truncation.
std::optional<RealizedWitness> realized_cycle_within(
    const PeriodicPresentation& p, const std::vector<bool>& allowed);

/// Whether the realized infinite graph has any cycle.
Verdict realized_cycle_exists(const PeriodicPresentation& p);

/// Finite predecessor set of one realized vertex ("b@3" or a stem id),
/// certified by a truncation in which the backward closure stays strictly
/// below the top copy.  nullopt if the closure is still growing at
/// max_copies.
struct FiniteLeftSet {
  std::string vertex;
  std::vector<std::string> members;  // realized ids, sorted
  int copies = 0;
};

std::optional<FiniteLeftSet> finite_left_set(const PeriodicPresentation& p,
                                             const std::string& realized_id,
                                             int max_copies);

/// S^0 classification: left-finite quotient vertices from which an infinite
/// realized path through left-finite vertices starts.
struct PeriodicS0 {
  std::vector<bool> region;         // quotient vertex mask
  std::vector<bool> left_infinite;  // quotient vertex mask
};

PeriodicS0 periodic_s0(const PeriodicPresentation& p);

/// Stability for sink-free periodic presentations: NO on a left-finite
/// cycle; YES when S^0 is empty; otherwise an exact spectral test of the
/// copy-transfer matrix on the S^0 region (weights {0,+1} only).
Verdict periodic_is_stable(const PeriodicPresentation& p, int depth = 0);

/// Stability when the realization is acyclic (sinks permitted): a bounded
/// graph-trace exists iff some realized sink has a finite predecessor set or
/// the sink-free left-finite region passes the spectral test.
Verdict periodic_acyclic_stability(const PeriodicPresentation& p,
                                   int depth = 0);

/// Pure infiniteness for sink-free periodic presentations.
Verdict periodic_is_purely_infinite(const PeriodicPresentation& p,
                                    int depth = 0);

/// Unital-quotient detection: YES iff a left-finite cycle exists; its finite
/// predecessor set is the certificate.
Verdict periodic_has_unital_quotient(const PeriodicPresentation& p,
                                     int depth = 0);

/// Feasibility of the nonnegative trace equations on a depth-K truncation
/// with the equations at the top copy relaxed (boundary) and total mass 1.
bool truncated_trace_feasible(const PeriodicPresentation& p, int copies);

/// Proper nonempty quotient vertex sets whose full set of realized copies is
/// hereditary and saturated in the infinite graph.  Masks are indexed like
/// shift_quotient(p).graph.  Throws CapExceededError beyond 18 quotient
/// vertices.
std::vector<std::vector<bool>> periodic_invariant_sets(
    const PeriodicPresentation& p);

/// The presentation obtained by deleting an invariant set: its members are
/// removed from stem and block together with all incident edges.  The
/// realization of the result is the realized-graph quotient.
PeriodicPresentation periodic_quotient(const PeriodicPresentation& p,
                                       const std::vector<bool>& h);

}  // namespace ck

#endif  // CK_PERIODIC_HPP
