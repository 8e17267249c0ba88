#include "ck/checker.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "ck/errors.hpp"
#include "ck/exact_lp.hpp"
#include "ck/ideals.hpp"
#include "ck/periodic.hpp"
#include "ck/polynomial.hpp"
#include "ck/presentations.hpp"
#include "ck/reference.hpp"
#include "ck/report.hpp"
#include "ck/shiftspace.hpp"
#include "ck/traces.hpp"

namespace ck {

namespace {

using Fail = std::optional<std::string>;

constexpr int kBruteRecheckLimit = 15;  // 2^15 subsets is still instant

// ---------------------------------------------------------------------------
// JSON decoding helpers
// ---------------------------------------------------------------------------

Fail get_rat(const Json& j, Rat& out) {
  if (!j.is_string()) return "expected a rational string";
  const auto r = rat_parse(j.get<std::string>());
  if (!r) return "malformed rational `" + j.get<std::string>() + "`";
  out = *r;
  return std::nullopt;
}

Fail get_rat_vector(const Json& j, RatVector& out) {
  if (!j.is_array()) return "expected an array of rationals";
  out.clear();
  for (const Json& x : j) {
    Rat r;
    if (auto f = get_rat(x, r)) return f;
    out.push_back(r);
  }
  return std::nullopt;
}

Fail get_rat_matrix(const Json& j, RatMatrix& out) {
  if (!j.is_array()) return "expected a matrix of rationals";
  out.clear();
  for (const Json& row : j) {
    RatVector r;
    if (auto f = get_rat_vector(row, r)) return f;
    out.push_back(std::move(r));
  }
  for (const RatVector& row : out)
    if (row.size() != out.size()) return "matrix is not square";
  return std::nullopt;
}

std::vector<std::string> str_list(const Json& j) {
  std::vector<std::string> out;
  for (const Json& x : j) out.push_back(x.get<std::string>());
  return out;
}

// ---------------------------------------------------------------------------
// Graph-side helpers
// ---------------------------------------------------------------------------

bool acyclic_by_kahn(const DirectedGraph& g) {
  std::vector<int> indeg(g.vertex_count(), 0);
  for (int e = 0; e < g.edge_count(); ++e) ++indeg[g.edge(e).dst];
  std::vector<int> ready;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (indeg[v] == 0) ready.push_back(v);
  int removed = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++removed;
    for (int e : g.out_edges(v))
      if (--indeg[g.edge(e).dst] == 0) ready.push_back(g.edge(e).dst);
  }
  return removed == g.vertex_count();
}

// Validates that `ids` names a closed edge walk of g; reports the walk's
// vertex sequence (sources of each edge) through `vertices`.
Fail closed_edge_walk(const DirectedGraph& g,
                      const std::vector<std::string>& ids,
                      std::vector<int>* vertices = nullptr) {
  if (ids.empty()) return "empty edge walk";
  int prev_dst = -1, first_src = -1;
  for (const std::string& id : ids) {
    const int e = g.edge_index(id);
    if (e < 0) return "unknown edge `" + id + "`";
    const Edge& ed = g.edge(e);
    if (first_src < 0) first_src = ed.src;
    if (prev_dst >= 0 && ed.src != prev_dst)
      return "edge walk breaks at `" + id + "`";
    if (vertices) vertices->push_back(ed.src);
    prev_dst = ed.dst;
  }
  if (prev_dst != first_src) return "edge walk does not close";
  return std::nullopt;
}

// Vertices of simple cycles having an exit, located by exhaustive cycle
// enumeration — the cross-check path, distinct from the component
// characterization used in production.
std::vector<bool> exit_cycle_vertices_brute(const DirectedGraph& g) {
  std::vector<bool> anchor(g.vertex_count(), false);
  for (const Path& cycle : simple_cycles(g)) {
    if (!cycle_has_exit(g, cycle)) continue;
    for (int v : cycle.source_vertices(g)) anchor[v] = true;
  }
  return anchor;
}

Fail check_vertex_set_valid(const DirectedGraph& g,
                            const std::vector<std::string>& ids) {
  for (const std::string& id : ids)
    if (g.vertex_index(id) < 0) return "unknown vertex `" + id + "`";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Finite-graph certificate pieces
// ---------------------------------------------------------------------------

Fail check_trace_values(const DirectedGraph& g, const Json& values) {
  RatVector tau(g.vertex_count(), Rat(0));
  for (const auto& [id, val] : values.items()) {
    const int v = g.vertex_index(id);
    if (v < 0) return "trace value on unknown vertex `" + id + "`";
    Rat r;
    if (auto f = get_rat(val, r)) return f;
    tau[v] = r;
  }
  return check_witness(graph_trace_system(g), tau)
             ? std::nullopt
             : Fail("values violate the trace equations, the sign "
                    "constraint, or the normalization");
}

Fail check_af_verdict(const DirectedGraph& g, const Verdict& v) {
  if (v.value == Truth::Yes) {
    if (!acyclic_by_kahn(g)) return "graph has a cycle but was declared AF";
    return std::nullopt;
  }
  const Json& c = v.certificate;
  if (!c.contains("edges")) return "cycle certificate lacks edges";
  std::vector<int> verts;
  if (auto f = closed_edge_walk(g, str_list(c["edges"]), &verts)) return f;
  if (c.contains("has_exit")) {
    bool branch = false;
    for (int w : verts)
      if (g.out_degree(w) >= 2) branch = true;
    if (c["has_exit"].get<bool>() != branch)
      return "exit flag disagrees with the cycle's out-degrees";
  }
  return std::nullopt;
}

Fail check_torus_corners(const DirectedGraph& g, const Verdict& v) {
  const Json& c = v.certificate;
  if (!c.contains("corners")) return "missing corner list";
  std::set<int> covered;
  for (const Json& corner : c["corners"]) {
    std::vector<int> verts;
    if (auto f = closed_edge_walk(g, str_list(corner["cycle"]["edges"]),
                                  &verts))
      return f;
    for (int w : verts) {
      if (g.out_degree(w) != 1)
        return "vertex `" + g.vertex_id(w) +
               "` of a claimed exit-free cycle has an exit";
      covered.insert(w);
    }
    if (corner["period"].get<int>() != static_cast<int>(verts.size()))
      return "corner period disagrees with its cycle length";
  }
  // Completeness against exhaustive enumeration.
  try {
    int expected = 0;
    std::set<int> expected_verts;
    for (const Path& cycle : simple_cycles(g)) {
      bool exit_free = true;
      for (int w : cycle.source_vertices(g))
        if (g.out_degree(w) != 1) exit_free = false;
      if (!exit_free) continue;
      ++expected;
      for (int w : cycle.source_vertices(g)) expected_verts.insert(w);
    }
    if (expected != c["count"].get<int>())
      return "corner count disagrees with cycle enumeration";
    if (expected_verts != covered)
      return "corner list misses an exit-free cycle";
  } catch (const CapExceededError&) {
    // Too many cycles to enumerate: the structural checks above stand.
  }
  return std::nullopt;
}

Fail check_hereditary_saturated(const DirectedGraph& g, const VertexSet& h) {
  if (!is_hereditary(g, h)) return "set is not hereditary";
  if (!is_saturated(g, h)) return "set is not saturated";
  return std::nullopt;
}

Fail check_quotient_obstruction(const DirectedGraph& g, const Json& c) {
  const std::vector<std::string> ids = str_list(c["hereditary_saturated"]);
  if (auto f = check_vertex_set_valid(g, ids)) return f;
  const VertexSet h = ids_to_set(g, ids);
  if (auto f = check_hereditary_saturated(g, h)) return f;
  const DirectedGraph q = quotient_graph(g, h);
  const std::string vid = c["vertex"].get<std::string>();
  const int v = q.vertex_index(vid);
  if (v < 0) return "violating vertex is not in the quotient";
  const std::string flavor = c["flavor"].get<std::string>();
  if (flavor == "af_part") {
    const std::vector<int> reach = reachable_from(q, v);
    VertexSet mask(q.vertex_count(), false);
    for (int w : reach) mask[w] = true;
    if (!acyclic_by_kahn(q.induced_subgraph(mask)))
      return "claimed acyclic part contains a cycle";
    return std::nullopt;
  }
  if (flavor == "torus_corner") {
    std::vector<int> verts;
    if (auto f =
            closed_edge_walk(q, str_list(c["cycle"]["edges"]), &verts))
      return f;
    for (int w : verts)
      if (q.out_degree(w) != 1)
        return "claimed exit-free cycle has an exit in the quotient";
    // The vertex must actually fail to reach any cycle with an exit.
    const std::vector<bool> connected =
        backward_closure(q, exit_cycle_vertices_brute(q));
    if (connected[v])
      return "vertex does connect to a cycle with an exit in the quotient";
    return std::nullopt;
  }
  return "unknown obstruction flavor `" + flavor + "`";
}

Fail check_lattice(const DirectedGraph& g, const Json& c) {
  std::vector<VertexSet> sets;
  for (const Json& sj : c["sets"]) {
    const std::vector<std::string> ids = str_list(sj);
    if (auto f = check_vertex_set_valid(g, ids)) return f;
    VertexSet h = ids_to_set(g, ids);
    if (auto f = check_hereditary_saturated(g, h)) return f;
    sets.push_back(std::move(h));
  }
  if (static_cast<int>(sets.size()) != c["count"].get<int>())
    return "count disagrees with the set list";
  if (g.vertex_count() <= kBruteRecheckLimit) {
    std::vector<VertexSet> brute = reference::hereditary_saturated_sets(g);
    std::sort(sets.begin(), sets.end());
    std::sort(brute.begin(), brute.end());
    if (sets != brute)
      return "set list disagrees with brute-force enumeration";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Periodic certificate pieces
// ---------------------------------------------------------------------------

int realized_height(const std::string& id) {
  const auto at = id.rfind('@');
  if (at == std::string::npos) return 0;
  return std::stoi(id.substr(at + 1));
}

int true_out_degree(const PeriodicPresentation& p, const PeriodicDegrees& deg,
                    const std::string& realized_id) {
  const int h = realized_height(realized_id);
  if (h == 0) return deg.out_stem[p.stem.vertex_index(realized_id)];
  const int b =
      p.block.vertex_index(realized_id.substr(0, realized_id.rfind('@')));
  return h == 1 ? deg.out_copy1[b] : deg.out_deep[b];
}

Fail check_realized_cycle(const PeriodicPresentation& p, const Json& wj,
                          std::vector<std::string>* visited = nullptr) {
  const int copies = wj["copies"].get<int>();
  if (copies < 1 || copies > 100000) return "implausible truncation size";
  const DirectedGraph t = realize_truncation(p, copies);
  const std::string start = wj["start_vertex"].get<std::string>();
  std::vector<int> verts;
  if (auto f = closed_edge_walk(t, str_list(wj["edges"]), &verts)) return f;
  if (t.vertex_index(start) != verts.front())
    return "walk does not start at the declared vertex";
  if (visited)
    for (int v : verts) visited->push_back(t.vertex_id(v));
  return std::nullopt;
}

Fail check_left_set(const PeriodicPresentation& p, const std::string& vertex,
                    const std::vector<std::string>& members, int copies) {
  if (copies < 1 || copies > 100000) return "implausible truncation size";
  const DirectedGraph t = realize_truncation(p, copies);
  const int target = t.vertex_index(vertex);
  if (target < 0) return "left-set vertex missing from the truncation";
  std::set<std::string> memberset(members.begin(), members.end());
  if (!memberset.count(vertex)) return "left set omits its own vertex";
  std::vector<bool> mask(t.vertex_count(), false);
  for (const std::string& id : memberset) {
    const int v = t.vertex_index(id);
    if (v < 0) return "left-set member `" + id + "` is not realized";
    if (realized_height(id) > copies - 1)
      return "left-set member `" + id + "` sits at the truncation boundary";
    mask[v] = true;
  }
  // Predecessor-closed inside the truncation; with every member at least one
  // copy below the boundary this certifies closure in the infinite graph.
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (!mask[v]) continue;
    for (int e : t.in_edges(v))
      if (!mask[t.edge(e).src])
        return "left set is not predecessor-closed at `" + t.vertex_id(v) +
               "`";
  }
  // Every member must actually reach the vertex.
  std::vector<bool> seed(t.vertex_count(), false);
  seed[target] = true;
  const std::vector<bool> reaches = backward_closure(t, seed);
  for (int v = 0; v < t.vertex_count(); ++v)
    if (mask[v] && !reaches[v])
      return "left-set member `" + t.vertex_id(v) +
             "` does not reach the vertex";
  return std::nullopt;
}

Fail check_mean_component(const ShiftQuotient& q, const Json& cj,
                          bool require_negative) {
  Rat min_mean, max_mean;
  if (auto f = get_rat(cj["min_mean"], min_mean)) return f;
  if (auto f = get_rat(cj["max_mean"], max_mean)) return f;
  const auto mean_of = [&](const std::vector<std::string>& ids,
                           Rat& out) -> Fail {
    if (auto f = closed_edge_walk(q.graph, ids)) return f;
    long long total = 0;
    for (const std::string& id : ids)
      total += q.weight[q.graph.edge_index(id)];
    out = Rat(Int(total), Int(static_cast<long long>(ids.size())));
    return std::nullopt;
  };
  Rat got;
  if (auto f = mean_of(str_list(cj["min_cycle"]), got)) return f;
  if (got != min_mean) return "minimum-mean walk has a different mean";
  if (auto f = mean_of(str_list(cj["max_cycle"]), got)) return f;
  if (got != max_mean) return "maximum-mean walk has a different mean";
  if (require_negative && min_mean >= 0)
    return "claimed negative component has nonnegative minimum mean";
  return std::nullopt;
}

// Left-infinite / left-finite split: negative walks substitute, the listed
// left-infinite set is exactly the forward closure of the negative
// components, and no negative cycle hides among the left-finite block
// vertices (cross-checked by exhaustive cycle enumeration).
Fail check_classification(const PeriodicPresentation& p,
                          const ShiftQuotient& q, const Json& cls) {
  const DirectedGraph& g = q.graph;
  const std::vector<std::string> li_ids = str_list(cls["left_infinite"]);
  const std::vector<std::string> lf_ids = str_list(cls["left_finite"]);
  if (auto f = check_vertex_set_valid(g, li_ids)) return f;
  if (auto f = check_vertex_set_valid(g, lf_ids)) return f;
  if (static_cast<int>(li_ids.size() + lf_ids.size()) != g.vertex_count())
    return "left-infinite and left-finite lists do not partition";
  std::vector<bool> li(g.vertex_count(), false);
  for (const std::string& id : li_ids) li[g.vertex_index(id)] = true;
  for (const std::string& id : lf_ids)
    if (li[g.vertex_index(id)]) return "vertex classified both ways";
  std::vector<bool> sources(g.vertex_count(), false);
  for (const Json& cj : cls["negative_components"]) {
    if (auto f = check_mean_component(q, cj, true)) return f;
    for (const std::string& id : str_list(cj["vertices"])) {
      const int v = g.vertex_index(id);
      if (v < 0) return "unknown component vertex `" + id + "`";
      sources[v] = true;
    }
  }
  const std::vector<bool> closure = forward_closure(g, sources);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (closure[v] != li[v])
      return "left-infinite list is not the forward closure of the "
             "negative components";
  // Completeness: no negative cycle among left-finite block vertices.
  std::vector<bool> lf_block(g.vertex_count(), false);
  for (int v = 0; v < g.vertex_count(); ++v)
    lf_block[v] = !li[v] && q.is_block[v];
  const DirectedGraph sub = g.induced_subgraph(lf_block);
  std::vector<int> w(sub.edge_count());
  for (int e = 0; e < sub.edge_count(); ++e)
    w[e] = q.weight[g.edge_index(sub.edge(e).id)];
  for (const MeanCycleInfo& info : reference::extremal_cycle_means(sub, w))
    if (info.min_mean < 0)
      return "a negative cycle among left-finite vertices was missed";
  (void)p;
  return std::nullopt;
}

std::vector<bool> mask_from_ids(const DirectedGraph& g,
                                const std::vector<std::string>& ids) {
  std::vector<bool> mask(g.vertex_count(), false);
  for (const std::string& id : ids) mask[g.vertex_index(id)] = true;
  return mask;
}

Fail check_no_left_finite_cycle(const PeriodicPresentation& p,
                                const ShiftQuotient& q,
                                const std::vector<bool>& lf) {
  // Block part by exhaustive means; stem part by replaying the search.
  std::vector<bool> lf_block(lf.size());
  for (std::size_t v = 0; v < lf.size(); ++v)
    lf_block[v] = lf[v] && q.is_block[v];
  const DirectedGraph sub = q.graph.induced_subgraph(lf_block);
  std::vector<int> w(sub.edge_count());
  for (int e = 0; e < sub.edge_count(); ++e)
    w[e] = q.weight[q.graph.edge_index(sub.edge(e).id)];
  for (const MeanCycleInfo& info : reference::extremal_cycle_means(sub, w))
    if (info.min_mean <= 0 && info.max_mean >= 0)
      return "a left-finite block component admits a net-zero closed walk";
  if (realized_cycle_within(p, lf))
    return "a realized left-finite cycle exists after all";
  return std::nullopt;
}

struct TransferRecheck {
  std::vector<std::string> vertices;
  RatMatrix a0, a1, transfer;
  Poly cp;
};

Fail decode_transfer(const Json& cj, TransferRecheck& out) {
  out.vertices = str_list(cj["vertices"]);
  if (auto f = get_rat_matrix(cj["a0"], out.a0)) return f;
  if (auto f = get_rat_matrix(cj["a1"], out.a1)) return f;
  if (auto f = get_rat_matrix(cj["transfer_matrix"], out.transfer)) return f;
  if (cj.contains("char_poly")) {
    RatVector coeffs;
    if (auto f = get_rat_vector(cj["char_poly"], coeffs)) return f;
    out.cp.assign(coeffs.begin(), coeffs.end());
  }
  const std::size_t m = out.vertices.size();
  if (out.a0.size() != m || out.a1.size() != m || out.transfer.size() != m)
    return "transfer data sizes disagree with the component";
  return std::nullopt;
}

Fail check_transfer_algebra(const TransferRecheck& t) {
  const int m = static_cast<int>(t.transfer.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (t.a0[i][j] < 0 || t.a1[i][j] < 0 || t.transfer[i][j] < 0)
        return "transfer data has a negative entry";
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Rat lhs = t.transfer[i][j];
      for (int k = 0; k < m; ++k) lhs -= t.a0[i][k] * t.transfer[k][j];
      if (lhs != t.a1[i][j])
        return "(I - A0) * M = A1 fails at entry (" + std::to_string(i) +
               "," + std::to_string(j) + ")";
    }
  if (!t.cp.empty() && char_poly(t.transfer).p != t.cp)
    return "characteristic polynomial does not match the matrix";
  return std::nullopt;
}

// A0/A1 must count the 0- and +1-weight edges of the component induced in
// the region's block sub-quotient.
Fail check_transfer_counts(const ShiftQuotient& q,
                           const std::vector<bool>& region,
                           const TransferRecheck& t) {
  const DirectedGraph& g = q.graph;
  const int m = static_cast<int>(t.vertices.size());
  std::map<std::string, int> local;
  for (int i = 0; i < m; ++i) local[t.vertices[i]] = i;
  RatMatrix a0(m, RatVector(m, Rat(0))), a1(m, RatVector(m, Rat(0)));
  for (const std::string& id : t.vertices) {
    const int v = g.vertex_index(id);
    if (v < 0 || !region[v] || !q.is_block[v])
      return "component vertex `" + id + "` is outside the block region";
    for (int e : g.out_edges(v)) {
      const int wv = g.edge(e).dst;
      const auto it = local.find(g.vertex_id(wv));
      if (it == local.end()) continue;
      if (q.weight[e] == 0)
        a0[local[id]][it->second] += 1;
      else if (q.weight[e] == 1)
        a1[local[id]][it->second] += 1;
      else
        return "component contains a downward cross edge";
    }
  }
  if (a0 != t.a0 || a1 != t.a1)
    return "A0/A1 do not match the edge counts of the component";
  return std::nullopt;
}

Fail check_unbounded_component(const PeriodicPresentation& p,
                               const ShiftQuotient& q, const Json& c) {
  TransferRecheck t;
  if (auto f = decode_transfer(c, t)) return f;
  if (auto f = check_transfer_algebra(t)) return f;
  if (t.cp.empty()) return "spectral certificate lacks its polynomial";
  if (c.contains("region")) {
    const std::vector<bool> region =
        mask_from_ids(q.graph, str_list(c["region"]));
    if (auto f = check_transfer_counts(q, region, t)) return f;
  }
  Rat lambda;
  if (auto f = get_rat(c["lambda"], lambda)) return f;
  if (lambda <= 1) return "claimed eigenvalue bound is not above 1";
  RatVector x;
  if (auto f = get_rat_vector(c["collatz_wielandt_vector"], x)) return f;
  const int m = static_cast<int>(t.transfer.size());
  if (static_cast<int>(x.size()) != m) return "witness vector has wrong size";
  Rat total = 0;
  for (const Rat& xi : x) {
    if (xi < 0) return "witness vector has a negative entry";
    total += xi;
  }
  if (total != 1) return "witness vector is not normalized";
  for (int i = 0; i < m; ++i) {
    Rat mx = 0;
    for (int j = 0; j < m; ++j) mx += t.transfer[i][j] * x[j];
    if (mx < lambda * x[i])
      return "M x >= lambda x fails, so lambda does not bound the "
             "spectral radius from below";
  }
  // Symbolic three-copy identity: t (I - A0) u == A1 u modulo the
  // characteristic polynomial, with u nonzero modulo it.
  std::vector<Poly> u(m);
  bool nonzero = false;
  for (int i = 0; i < m; ++i) {
    RatVector coeffs;
    if (auto f = get_rat_vector(c["adjugate_column"][i], coeffs)) return f;
    u[i].assign(coeffs.begin(), coeffs.end());
    if (!poly_mod(u[i], t.cp).empty()) nonzero = true;
  }
  if (!nonzero) return "profile polynomial vanishes modulo the char poly";
  const Poly tp{Rat(0), Rat(1)};
  for (int i = 0; i < m; ++i) {
    Poly lhs, rhs;
    for (int j = 0; j < m; ++j) {
      const Rat ima = (i == j ? 1 : 0) - t.a0[i][j];
      lhs = poly_add(lhs, poly_scale(u[j], ima));
      rhs = poly_add(rhs, poly_scale(u[j], t.a1[i][j]));
    }
    if (poly_mod(poly_sub(poly_mul(tp, lhs), rhs), t.cp) != Poly{})
      return "three-copy trace identity fails symbolically";
  }
  (void)p;
  return std::nullopt;
}

Fail check_no_bounded_trace(const PeriodicPresentation& p,
                            const ShiftQuotient& q, const Json& c) {
  const std::vector<std::string> region_ids = str_list(c["region"]);
  if (auto f = check_vertex_set_valid(q.graph, region_ids)) return f;
  const std::vector<bool> region = mask_from_ids(q.graph, region_ids);
  for (const Json& cj : c["components"]) {
    TransferRecheck t;
    if (auto f = decode_transfer(cj, t)) return f;
    if (auto f = check_transfer_algebra(t)) return f;
    if (auto f = check_transfer_counts(q, region, t)) return f;
    // Spectral radius at most one: no real root above 1 (the radius of a
    // nonnegative matrix is its largest real eigenvalue).
    const Poly cp =
        t.cp.empty() ? char_poly(t.transfer).p : t.cp;
    if (sturm_real_roots_in(cp, Rat(1), row_sum_bound(t.transfer)) != 0)
      return "a transfer component has spectral radius above 1";
  }
  if (c.contains("classification"))
    if (auto f = check_classification(p, q, c["classification"])) return f;
  return std::nullopt;
}

// Shift-invariant hereditary saturated sets at presentation level.
Fail check_shift_invariant_set(const PeriodicPresentation& p,
                               const ShiftQuotient& q,
                               const std::vector<bool>& h) {
  const DirectedGraph& g = q.graph;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!h[v]) continue;
    for (int e : g.out_edges(v))
      if (!h[g.edge(e).dst]) return "set is not hereditary";
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (h[v]) continue;
    if (q.is_block[v]) {
      bool deep = false, low = false;
      for (int e : g.out_edges(v)) {
        if (h[g.edge(e).dst]) continue;
        switch (q.kind[e]) {
          case ShiftQuotient::EdgeKind::Block:
            deep = low = true;
            break;
          case ShiftQuotient::EdgeKind::Cross:
            deep = true;
            if (q.weight[e] > 0) low = true;
            break;
          case ShiftQuotient::EdgeKind::ToStem:
            low = true;
            break;
          default:
            break;
        }
      }
      if (!deep || !low) return "set is not saturated at a block vertex";
    } else {
      bool escape = false;
      for (int e : g.out_edges(v))
        if (!h[g.edge(e).dst]) escape = true;
      if (!escape) return "set is not saturated at a stem vertex";
    }
  }
  (void)p;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Top-level dispatch
// ---------------------------------------------------------------------------

struct Ctx {
  ParsedInput input;

  bool periodic() const { return input.cls.tag == GraphTag::Periodic; }
};

Fail check_unknown(const Ctx& ctx, const Verdict& v) {
  const Json& c = v.certificate;
  if (c.is_object() && c.value("type", "") == "hypothesis_violation") {
    if (c.contains("sinks")) {
      for (const std::string& id : str_list(c["sinks"])) {
        const int w = ctx.input.graph.vertex_index(id);
        if (w < 0 || ctx.input.graph.out_degree(w) != 0)
          return "claimed sink `" + id + "` is not a sink";
      }
    }
    if (c.contains("zero_row")) {
      const int i = c["zero_row"].get<int>();
      if (!ctx.input.matrix || i < 1 || i > ctx.input.matrix->n)
        return "claimed zero row is out of range";
      for (int j = 0; j < ctx.input.matrix->n; ++j)
        if (ctx.input.matrix->a[i - 1][j] != 0)
          return "claimed zero row is not zero";
    }
    if (ctx.periodic() && classify_periodic(*ctx.input.periodic).no_sinks)
      return "hypothesis violation claimed but the realization has no sinks";
  }
  return std::nullopt;  // UNKNOWN claims nothing further
}

Fail check_purely_infinite(const Ctx& ctx, const Verdict& v) {
  if (ctx.periodic()) {
    const PeriodicPresentation& p = *ctx.input.periodic;
    const ShiftQuotient q = shift_quotient(p);
    const std::string type = v.certificate.value("type", "");
    if (type == "acyclic_realization") {
      for (const Json& cj : v.certificate["block_component_means"])
        if (auto f = check_mean_component(q, cj, false)) return f;
      std::vector<bool> blocks = q.is_block;
      const DirectedGraph sub = q.graph.induced_subgraph(blocks);
      std::vector<int> w(sub.edge_count());
      for (int e = 0; e < sub.edge_count(); ++e)
        w[e] = q.weight[q.graph.edge_index(sub.edge(e).id)];
      for (const MeanCycleInfo& info :
           reference::extremal_cycle_means(sub, w))
        if (info.min_mean <= 0 && info.max_mean >= 0)
          return "a block component admits a net-zero closed walk";
      if (realized_cycle_within(p, {}))
        return "a realized cycle exists after all";
      return std::nullopt;
    }
    if (type == "exit_free_cycle") {
      std::vector<std::string> visited;
      if (auto f = check_realized_cycle(p, v.certificate, &visited))
        return f;
      const PeriodicDegrees deg = periodic_out_degrees(p);
      for (const std::string& id : visited)
        if (true_out_degree(p, deg, id) != 1)
          return "cycle vertex `" + id + "` has more than one edge";
      return std::nullopt;
    }
    if (type == "quotient_obstruction") {
      const std::vector<bool> h =
          mask_from_ids(q.graph, str_list(v.certificate["shift_invariant_set"]));
      if (auto f = check_shift_invariant_set(p, q, h)) return f;
      const std::string vid = v.certificate["vertex"].get<std::string>();
      const int qv = q.graph.vertex_index(vid);
      if (qv < 0 || h[qv]) return "violating vertex is inside the set";
      std::vector<bool> comp(q.graph.vertex_count());
      for (int i = 0; i < q.graph.vertex_count(); ++i) comp[i] = !h[i];
      std::vector<bool> seed(q.graph.vertex_count(), false);
      seed[qv] = true;
      const DirectedGraph csub = q.graph.induced_subgraph(comp);
      std::vector<bool> seed_sub(csub.vertex_count(), false);
      seed_sub[csub.vertex_index(vid)] = true;
      const std::vector<bool> reach_sub = forward_closure(csub, seed_sub);
      std::vector<bool> reach(q.graph.vertex_count(), false);
      for (int i = 0; i < csub.vertex_count(); ++i)
        if (reach_sub[i])
          reach[q.graph.vertex_index(csub.vertex_id(i))] = true;
      if (realized_cycle_within(p, reach))
        return "the vertex reaches a realized cycle in the quotient";
      return std::nullopt;
    }
    if (type == "strongly_connected_realization") {
      if (strongly_connected_components(q.graph).component_count() != 1)
        return "the presentation quotient is not strongly connected";
      if (auto f =
              check_mean_component(q, v.certificate["block_means"], false))
        return f;
      Rat mn, mx;
      if (auto f = get_rat(v.certificate["block_means"]["min_mean"], mn))
        return f;
      if (auto f = get_rat(v.certificate["block_means"]["max_mean"], mx))
        return f;
      if (!(mn < 0 && mx > 0))
        return "block means do not straddle zero strictly";
      const std::string exit_id =
          v.certificate["exit_vertex"].get<std::string>();
      const int b = p.block.vertex_index(exit_id);
      if (b < 0) return "exit vertex is not a block vertex";
      if (periodic_out_degrees(p).out_deep[b] < 2)
        return "exit vertex does not branch in deep copies";
      const int copies = v.certificate["truncation_copies"].get<int>();
      const DirectedGraph t = realize_truncation(p, copies);
      const SccDecomposition tscc = strongly_connected_components(t);
      int band_comp = -1;
      for (int i = 0; i < t.vertex_count(); ++i) {
        if (realized_height(t.vertex_id(i)) >
            copies - p.block.vertex_count())
          continue;
        if (band_comp < 0)
          band_comp = tscc.component_of[i];
        else if (tscc.component_of[i] != band_comp)
          return "the truncation's low band is not strongly connected";
      }
      return check_realized_cycle(p, v.certificate["cycle"]);
    }
    return "unrecognized certificate type `" + type + "`";
  }
  // Finite / matrix inputs.
  const DirectedGraph& g = ctx.input.graph;
  const std::string type = v.certificate.value("type", "");
  if (type == "quotient_scan") {
    if (g.vertex_count() <= kBruteRecheckLimit &&
        !reference::purely_infinite(g))
      return "serial quotient scan disagrees with the YES verdict";
    return std::nullopt;
  }
  if (type == "quotient_obstruction")
    return check_quotient_obstruction(g, v.certificate);
  return "unrecognized certificate type `" + type + "`";
}

Fail check_stable(const Ctx& ctx, const Verdict& v) {
  const std::string type = v.certificate.value("type", "");
  if (!ctx.periodic()) {
    const DirectedGraph& g = ctx.input.graph;
    if (type == "empty_graph")
      return g.vertex_count() == 0 ? std::nullopt
                                   : Fail("graph is not empty");
    if (type == "unital")
      return g.vertex_count() >= 1 ? std::nullopt
                                   : Fail("unital claim on an empty graph");
    if (type == "bounded_trace_witness") {
      if (!v.certificate.contains("values"))
        return "trace witness lacks values";
      return check_trace_values(g, v.certificate["values"]);
    }
    return "unrecognized certificate type `" + type + "`";
  }
  const PeriodicPresentation& p = *ctx.input.periodic;
  const ShiftQuotient q = shift_quotient(p);
  if (type == "left_finite_cycle") {
    if (auto f = check_realized_cycle(p, v.certificate["cycle"])) return f;
    const Json& ls = v.certificate["left_set"];
    return check_left_set(p, ls["vertex"].get<std::string>(),
                          str_list(ls["members"]), ls["copies"].get<int>());
  }
  if (type == "empty_s0") {
    const Json& cls = v.certificate["classification"];
    if (auto f = check_classification(p, q, cls)) return f;
    const std::vector<bool> lf =
        mask_from_ids(q.graph, str_list(cls["left_finite"]));
    std::vector<bool> lf_block(lf.size());
    for (std::size_t i = 0; i < lf.size(); ++i)
      lf_block[i] = lf[i] && q.is_block[i];
    if (!acyclic_by_kahn(q.graph.induced_subgraph(lf_block)))
      return "left-finite block sub-quotient has a cycle, so the region "
             "cannot be empty";
    if (realized_cycle_within(p, lf))
      return "a realized left-finite cycle exists after all";
    return std::nullopt;
  }
  if (type == "unbounded_trace_component")
    return check_unbounded_component(p, q, v.certificate);
  if (type == "no_bounded_trace") {
    if (auto f = check_no_bounded_trace(p, q, v.certificate)) return f;
    if (v.certificate.contains("classification")) {
      const std::vector<bool> lf = mask_from_ids(
          q.graph, str_list(v.certificate["classification"]["left_finite"]));
      return check_no_left_finite_cycle(p, q, lf);
    }
    return std::nullopt;
  }
  if (type == "bounded_trace_witness") {
    // Path-count trace supported on a certified finite left set of a sink.
    const Json& c = v.certificate;
    const std::string sink = c["sink"].get<std::string>();
    const int copies = c["copies"].get<int>();
    if (auto f =
            check_left_set(p, sink, str_list(c["support"]), copies))
      return f;
    const PeriodicDegrees deg = periodic_out_degrees(p);
    if (true_out_degree(p, deg, sink) != 0)
      return "trace target `" + sink + "` is not a sink";
    const DirectedGraph t = realize_truncation(p, copies);
    std::map<int, Rat> tau;
    Rat total = 0;
    for (const auto& [id, val] : c["values"].items()) {
      const int w = t.vertex_index(id);
      if (w < 0) return "trace value on unknown vertex `" + id + "`";
      Rat r;
      if (auto f = get_rat(val, r)) return f;
      if (r < 0) return "negative trace value";
      tau[w] = r;
      total += r;
    }
    if (total != 1) return "trace values are not normalized";
    const std::vector<bool> support =
        mask_from_ids(t, str_list(c["support"]));
    for (const auto& [w, value] : tau)
      if (!support[w]) return "trace value outside the certified support";
    for (int w = 0; w < t.vertex_count(); ++w) {
      if (!support[w] || t.vertex_id(w) == sink) continue;
      Rat sum = 0;
      for (int e : t.out_edges(w)) {
        const auto it = tau.find(t.edge(e).dst);
        if (it != tau.end()) sum += it->second;
      }
      const auto self = tau.find(w);
      const Rat own = self == tau.end() ? Rat(0) : self->second;
      if (own != sum)
        return "trace equation fails at `" + t.vertex_id(w) + "`";
    }
    return std::nullopt;
  }
  return "unrecognized certificate type `" + type + "`";
}

Fail check_unital(const Ctx& ctx, const Verdict& v) {
  const std::string type = v.certificate.value("type", "");
  if (!ctx.periodic()) {
    if (type == "finite_vertex_set")
      return v.certificate["vertices"].get<int>() ==
                     ctx.input.graph.vertex_count()
                 ? std::nullopt
                 : Fail("vertex count mismatch");
    return "unrecognized certificate type `" + type + "`";
  }
  const PeriodicPresentation& p = *ctx.input.periodic;
  const ShiftQuotient q = shift_quotient(p);
  if (type == "finite_left_quotient") {
    if (auto f = check_realized_cycle(p, v.certificate["cycle"])) return f;
    return check_left_set(p,
                          v.certificate["left_vertex"].get<std::string>(),
                          str_list(v.certificate["left_set"]),
                          v.certificate["copies"].get<int>());
  }
  if (type == "no_left_finite_cycle") {
    const Json& cls = v.certificate["classification"];
    if (auto f = check_classification(p, q, cls)) return f;
    return check_no_left_finite_cycle(
        p, q, mask_from_ids(q.graph, str_list(cls["left_finite"])));
  }
  return "unrecognized certificate type `" + type + "`";
}

Fail check_graph_trace(const Ctx& ctx, const Verdict& v) {
  const DirectedGraph& g = ctx.input.graph;
  const std::string type = v.certificate.value("type", "");
  if (type == "trace_vector")
    return check_trace_values(g, v.certificate["values"]);
  if (type == "farkas") {
    RatVector y;
    if (auto f = get_rat_vector(v.certificate["vector"], y)) return f;
    return check_farkas(graph_trace_system(g), y)
               ? std::nullopt
               : Fail("Farkas vector does not refute the system");
  }
  return "unrecognized certificate type `" + type + "`";
}

Fail check_contractions(const Ctx& ctx, const Verdict& v) {
  if (!ctx.input.matrix) return "witnesses reported without a matrix input";
  const AdjacencyMatrix& a = *ctx.input.matrix;
  const DirectedGraph& g = ctx.input.graph;
  const Json& c = v.certificate;
  for (const auto& [id, wj] : c["witnesses"].items()) {
    Cylinder w;
    for (const Json& x : wj["word"]) w.word.push_back(x.get<int>());
    validate_cylinder(a, w);
    const int n = wj["n"].get<int>(), m = wj["m"].get<int>();
    if (n == m) return "witness for `" + id + "` has equal counts";
    const auto tn = shift_image(a, w, n);
    const auto tm = shift_image(a, w, m);
    if (tn.size() != 1 || tm.size() != 1 ||
        cylinder_compare(a, tn.front(), tm.front()) !=
            CylinderOrder::StrictSubset)
      return "witness for `" + id + "` fails strict containment";
  }
  const std::vector<bool> connected =
      backward_closure(g, exit_cycle_vertices_brute(g));
  for (const Json& idj : c["failing"]) {
    const int w = g.vertex_index(idj.get<std::string>());
    if (w < 0 || connected[w])
      return "vertex `" + idj.get<std::string>() +
             "` does connect to a cycle with an exit";
  }
  return std::nullopt;
}

Fail verify_one(const Ctx& ctx, const std::string& name, const Verdict& v) {
  try {
    if (v.value == Truth::Unknown) return check_unknown(ctx, v);
    if (v.certificate.is_null()) return "decided verdict without certificate";
    const std::string type = v.certificate.value("type", "");
    if (type == "cap_exceeded") return std::nullopt;
    if (name == "af") {
      if (v.value == Truth::Yes && type != "acyclic")
        return "unexpected certificate for an AF graph";
      return check_af_verdict(ctx.input.graph, v);
    }
    if (name == "torus_corners")
      return check_torus_corners(ctx.input.graph, v);
    if (name == "purely_infinite") return check_purely_infinite(ctx, v);
    if (name == "stable") return check_stable(ctx, v);
    if (name == "unital_quotient") return check_unital(ctx, v);
    if (name == "hereditary_saturated_lattice")
      return check_lattice(ctx.input.graph, v.certificate);
    if (name == "graph_trace") return check_graph_trace(ctx, v);
    if (name == "contraction_witnesses") return check_contractions(ctx, v);
    return "unknown check `" + name + "`";
  } catch (const Json::exception& e) {
    return std::string("malformed certificate: ") + e.what();
  } catch (const Error& e) {
    return std::string("verification error: ") + e.what();
  }
}

}  // namespace

VerificationResult verify_report(const Json& report) {
  VerificationResult res;
  Report r;
  try {
    r = report_from_json(report);
  } catch (const std::exception& e) {
    res.outcomes.push_back(
        {"report", false, std::string("unreadable report: ") + e.what()});
    return res;
  }
  Ctx ctx{parse(r.input_text, r.format)};
  for (const auto& [name, v] : r.verdicts) {
    CheckOutcome o;
    o.check = name;
    const Fail f = verify_one(ctx, name, v);
    o.ok = !f.has_value();
    o.detail = f ? *f : "verified";
    res.outcomes.push_back(std::move(o));
  }
  return res;
}

}  // namespace ck
