#ifndef CK_TESTS_ORACLE_HPP
#define CK_TESTS_ORACLE_HPP

/// Test-side brute-force oracles.  Everything here recomputes answers from
/// first principles — transitive closure by Warshall, subset filters, path
/// and cycle enumeration by DFS, rank by a local Gaussian elimination — so
/// none of it shares code with the decision paths under test.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "ck/graph.hpp"
#include "ck/ideals.hpp"
#include "ck/presentations.hpp"
#include "ck/rational.hpp"

namespace ck::oracle {

/// reach[u][v] = a (possibly empty) path u → v exists; reach[u][u] is true
/// only via an actual closed walk or trivially (flag picks the convention).
std::vector<std::vector<bool>> reachability(const DirectedGraph& g,
                                            bool reflexive = true);

/// All simple cycles as edge-index lists, found by rooted DFS (each cycle
/// reported once, rooted at its smallest vertex index).
std::vector<std::vector<int>> cycle_edge_lists(const DirectedGraph& g);

bool has_cycle(const DirectedGraph& g);

/// Hereditary + saturated subsets by filtering all 2^n vertex sets.
std::vector<VertexSet> hereditary_saturated_subsets(const DirectedGraph& g);

/// Quotient-by-quotient scan using the subset filter, Warshall closure and
/// DFS cycle enumeration only.
bool purely_infinite_subsets(const DirectedGraph& g);

/// Whether some simple cycle with an exit is reachable from v.
bool connects_to_exit_cycle(const DirectedGraph& g, int v);

/// Extremal simple-cycle means per cyclic strongly connected component
/// (components from the Warshall closure, cycles from DFS enumeration).
struct MeanExtremes {
  std::vector<std::string> vertices;  // sorted by vertex index
  Rat min_mean;
  Rat max_mean;
};
std::vector<MeanExtremes> cycle_mean_extremes(const DirectedGraph& g,
                                              const std::vector<int>& weight);

/// Dimension of the solution space of the trace equations (one equation per
/// non-sink vertex, no normalization), by local Gaussian elimination.
int trace_dimension(const DirectedGraph& g);

/// Sum over all maximal paths from `start` of the value at their terminal
/// sink, by exhaustive path enumeration.  Only meaningful on acyclic graphs;
/// vertices absent from `sink_values` count as 0.
Rat weighted_path_sum(const DirectedGraph& g, int start,
                      const std::map<std::string, Rat>& sink_values);

/// Number of distinct paths from `from` to `to` (acyclic graphs).
long long path_count(const DirectedGraph& g, int from, int to);

// Random instance generators (fixed-seed std::mt19937 passed in by tests).
DirectedGraph random_graph(std::mt19937& rng, int n, int edges);
/// Like random_graph, but every would-be sink gets one extra outgoing edge.
DirectedGraph random_graph_no_sinks(std::mt19937& rng, int n, int edges);
DirectedGraph random_acyclic(std::mt19937& rng, int n, int edges);
AdjacencyMatrix random_matrix(std::mt19937& rng, int n, double density);
AdjacencyMatrix random_matrix_no_zero_rows(std::mt19937& rng, int n,
                                           double density);

}  // namespace ck::oracle

#endif  // CK_TESTS_ORACLE_HPP
