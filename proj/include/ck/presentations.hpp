#ifndef CK_PRESENTATIONS_HPP
#define CK_PRESENTATIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ck/graph.hpp"

namespace ck {

/// {0,1} adjacency matrix (Exel–Laca style, finite).
struct AdjacencyMatrix {
  int n = 0;
  std::vector<std::vector<int>> a;  // n rows of n entries in {0,1}

  bool operator==(const AdjacencyMatrix&) const = default;
};

/// One cross edge of a periodic presentation: joins consecutive block
/// copies.  shift +1 realizes as src@k → dst@(k+1) for every k ≥ 1;
/// shift −1 realizes as src@(k+1) → dst@k for every k ≥ 1.
struct CrossEdge {
  std::string id;
  std::string src;  // block vertex
  std::string dst;  // block vertex
  int shift = +1;   // +1 or -1

  bool operator==(const CrossEdge&) const = default;
};

/// Edge between the stem and block copy 1.  to_block: stem_v → block_v@1;
/// otherwise block_v@1 → stem_v.
struct StemBlockEdge {
  std::string id;
  std::string stem_v;
  std::string block_v;
  bool to_block = true;

  bool operator==(const StemBlockEdge&) const = default;
};

/// Finite description of a locally finite infinite graph: a finite stem plus
/// infinitely many copies of a block, consecutive copies joined by ±1 cross
/// edges, copy 1 attached to the stem.  Vertex and edge ids may not contain
/// '@' (reserved for realized copy names) and are globally unique across
/// sections.
struct PeriodicPresentation {
  DirectedGraph stem;   // may be empty
  DirectedGraph block;  // nonempty
  std::vector<CrossEdge> cross_edges;          // sorted by id
  std::vector<StemBlockEdge> stem_block_edges; // sorted by id
};

bool operator==(const PeriodicPresentation& a, const PeriodicPresentation& b);
bool operator==(const DirectedGraph& a, const DirectedGraph& b);

enum class GraphTag { Finite, Matrix, Periodic };

/// Input class plus the hypothesis flags decisions test.  Flags are always
/// computed from the object, never taken from the user.
struct GraphClass {
  GraphTag tag = GraphTag::Finite;
  bool no_sinks = false;
  bool locally_finite = true;
  bool row_finite = true;
  bool no_zero_rows = false;
};

enum class InputFormat { Edgelist, Matrix, Periodic };

/// A parsed input: the class, plus the representation the tag calls for.
/// Matrix inputs also carry E_A as `graph` (vertices "1".."n", edge ids
/// "i->j").
struct ParsedInput {
  GraphClass cls;
  DirectedGraph graph;  // Finite and Matrix tags
  std::optional<AdjacencyMatrix> matrix;
  std::optional<PeriodicPresentation> periodic;
};

/// Parse one of the three text formats.  Throws ParseError with 1-based
/// line/column on malformed input.  Zero rows / sinks are recorded in the
/// class flags, not rejected here.
ParsedInput parse(const std::string& text, InputFormat format);

/// Canonical emitters; parse ∘ serialize = identity on the object.
std::string serialize(const DirectedGraph& g);
std::string serialize(const AdjacencyMatrix& m);
std::string serialize(const PeriodicPresentation& p);
std::string serialize(const ParsedInput& input);

/// Extension-based format detection: .ckg / .mtx / .period.
std::optional<InputFormat> sniff_format(const std::string& filename);

const char* format_name(InputFormat f);
std::optional<InputFormat> format_from_name(const std::string& name);

/// E_A: vertices "1".."n", one edge "i->j" per unit entry.
DirectedGraph graph_of_matrix(const AdjacencyMatrix& m);

/// GraphClass computation for already-built objects.
GraphClass classify_graph(const DirectedGraph& g, GraphTag tag);
GraphClass classify_periodic(const PeriodicPresentation& p);

/// Finite truncation: stem + block copies 1..K; cross edges that would touch
/// copy K+1 are dropped.  Intended for tests, DOT export, and oracles —
/// decisions are never made directly on it.  Vertex b of copy k is named
/// "b@k"; edge ids are decorated the same way (cross edges by source copy).
DirectedGraph realize_truncation(const PeriodicPresentation& p, int copies);

/// Realized out-degree pattern of a periodic presentation, by block vertex:
/// degrees differ between copy 1 and copies ≥ 2 (the −1 cross edges have no
/// target below copy 1, and stem attachments exist only at copy 1).
struct PeriodicDegrees {
  // indexed by block vertex index
  std::vector<int> out_copy1;
  std::vector<int> out_deep;  // any copy ≥ 2
  // indexed by stem vertex index
  std::vector<int> out_stem;
};

PeriodicDegrees periodic_out_degrees(const PeriodicPresentation& p);

/// Default exploration depth for periodic decisions: |stem| + 3·|block|
/// copies (at least 4).
int default_exploration_depth(const PeriodicPresentation& p);

}  // namespace ck

#endif  // CK_PRESENTATIONS_HPP
