#ifndef CK_TRACES_HPP
#define CK_TRACES_HPP

#include <map>
#include <string>
#include <vector>

#include "ck/exact_lp.hpp"
#include "ck/graph.hpp"
#include "ck/presentations.hpp"
#include "ck/verdict.hpp"

namespace ck {

/// A graph-trace: nonnegative values with τ(v) = Σ_{s(e)=v} τ(r(e)) at every
/// non-sink vertex.  On finite graphs boundedness is automatic; witnesses are
/// normalized to total mass 1.
struct GraphTrace {
  std::map<std::string, Rat> values;  // vertex id → value
};

/// The trace equations of a finite graph as rows over the vertex variables
/// (vertex index = column): one row per non-sink vertex, plus one
/// normalization row Στ = 1 appended last.  Exposed so tests and the
/// certificate checker can rebuild the exact system.
RationalLinearSystem graph_trace_system(const DirectedGraph& g);

/// Dimension of the solution space of the trace equations alone (no
/// normalization, no sign constraint): |V| − rank.  On a finite acyclic
/// graph this equals the number of sinks.
int trace_solution_dimension(const DirectedGraph& g);

/// Feasibility of {τ ≥ 0, trace equations, Στ = 1} by exact LP.
/// YES-certificate: the witness vector.  NO-certificate: a Farkas vector for
/// the system.
Verdict bounded_graph_trace(const DirectedGraph& g);

/// Σ n_i · τ(sink_i) where n_i counts paths from the vertex to each sink;
/// every graph-trace takes exactly this value at the vertex.  Requires an
/// acyclic graph and a value for every sink reachable from the vertex.
Rat path_count_identity(const DirectedGraph& g, const std::string& vertex_id,
                        const std::map<std::string, Rat>& sink_values);

/// Unital-quotient detection.  Finite graphs: YES (the algebra itself is
/// unital).  Periodic presentations: YES iff a left-finite cycle exists —
/// delegated to the periodic machinery.
Verdict has_unital_quotient(const DirectedGraph& g);
Verdict has_unital_quotient(const ParsedInput& input, int depth = 0);

/// S^0 of a finite sink-free graph: the left-finite vertices lying on an
/// infinite path through left-finite vertices — all of them, by finiteness.
/// S keeps the edges whose range stays inside S^0.
struct S0Result {
  std::vector<bool> s0;
  DirectedGraph s_subgraph;
};
S0Result s0_subgraph(const DirectedGraph& g);

/// Stability of the algebra.
///  - finite input: NO (unital); on acyclic graphs the certificate carries a
///    nonzero bounded graph-trace as an independent obstruction
///  - periodic without sinks: the periodic decision procedure
///  - periodic with sinks: handled when the realization is acyclic;
///    mixed sinks + cycles yields UNKNOWN
/// `depth` tunes the periodic exploration (0 = automatic).
Verdict is_stable(const ParsedInput& input, int depth = 0);

}  // namespace ck

#endif  // CK_TRACES_HPP
