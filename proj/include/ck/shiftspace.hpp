#ifndef CK_SHIFTSPACE_HPP
#define CK_SHIFTSPACE_HPP

#include <map>
#include <string>
#include <vector>

#include "ck/classify.hpp"
#include "ck/presentations.hpp"
#include "ck/verdict.hpp"

namespace ck {

/// A cylinder of the Markov shift of a 0/1 matrix: the set of infinite
/// paths whose initial vertices spell `word`.  Entries are 1-based matrix
/// indices; consecutive entries must be linked by the matrix.
struct Cylinder {
  std::vector<int> word;

  bool operator==(const Cylinder& o) const { return word == o.word; }
  bool operator<(const Cylinder& o) const { return word < o.word; }
};

/// Throws InvalidArgumentError unless `c` is a nonempty path word of `a`.
void validate_cylinder(const AdjacencyMatrix& a, const Cylinder& c);

/// Set order of two cylinders.  Valid cylinders of a no-zero-row matrix
/// always nest or are disjoint, so Incomparable is never produced for them;
/// it completes the enumeration for clients that extend the calculus.
enum class CylinderOrder {
  Equal,
  StrictSubset,    // first strictly inside second
  StrictSuperset,  // second strictly inside first
  Disjoint,
  Incomparable,
};

const char* cylinder_order_name(CylinderOrder o);

/// Z(β) ⊆ Z(γ) iff γ is a prefix of β; strictness iff some vertex along the
/// extension still branches off it.  Words that are equal as sets (a prefix
/// extended without any branching) compare Equal.
CylinderOrder cylinder_compare(const AdjacencyMatrix& a, const Cylinder& c1,
                               const Cylinder& c2);

/// n-fold shift image of a cylinder, as a disjoint list of cylinders in
/// ascending word order.  Dropping fewer symbols than the word holds leaves
/// one cylinder; beyond that the image splits over the vertices reachable
/// from the word's last vertex in exactly n − |word| + 1 steps.
std::vector<Cylinder> shift_image(const AdjacencyMatrix& a, const Cylinder& c,
                                  int n);

/// A local-contraction witness: T^n maps the closure of Z(word) strictly
/// inside T^m of it (n ≠ m).
struct ContractionWitness {
  Cylinder w;
  int n = 0;
  int m = 0;
};

/// Witness construction for a vertex that connects to a cycle with an exit:
/// with α a shortest path (n edges) from the vertex to a branching vertex w
/// of such a cycle γ (m − n edges), W = Z(α·γ) satisfies
/// T^n(W) = Z(γ) ⊊ Z(w) = T^m(W).  Strictness is re-verified through
/// cylinder_compare before returning.  Throws HypothesisError when no cycle
/// with an exit is reachable, and on zero-row matrices.
ContractionWitness contraction_witness(const AdjacencyMatrix& a, int vertex);

/// Markov-shift classification of a no-zero-row matrix.
struct MarkovClassification {
  Verdict af;                                   // no periodic paths at all
  std::vector<TorusCorner> isolated_periodic;   // exit-free cycles
  std::map<std::string, Verdict> aperiodic_point;  // per vertex id
};

/// af is YES iff the matrix graph is acyclic; isolated periodic paths are
/// the exit-free cycles; a vertex admits a non-eventually-periodic path iff
/// it reaches a vertex lying on two distinct simple cycles.
MarkovClassification markov_classify(const AdjacencyMatrix& a,
                                     std::uint64_t cycle_cap =
                                         kDefaultCycleCap);

}  // namespace ck

#endif  // CK_SHIFTSPACE_HPP
