#include "ck/report.hpp"

#include <sstream>

#include "ck/classify.hpp"
#include "ck/errors.hpp"
#include "ck/periodic.hpp"
#include "ck/shiftspace.hpp"
#include "ck/traces.hpp"

namespace ck {

namespace {

const char* tag_name(GraphTag t) {
  switch (t) {
    case GraphTag::Finite:
      return "finite";
    case GraphTag::Matrix:
      return "matrix";
    case GraphTag::Periodic:
      return "periodic";
  }
  return "finite";
}

Verdict unsupported(const std::string& why) {
  Verdict v = Verdict::unknown("not defined for this input class", why);
  v.certificate = Json{{"type", "unsupported_input_class"}};
  return v;
}

Verdict torus_corner_verdict(const DirectedGraph& g) {
  const std::vector<TorusCorner> corners = torus_corners(g);
  Json arr = Json::array();
  for (const TorusCorner& c : corners) arr.push_back(torus_corner_json(g, c));
  Json cert;
  cert["type"] = "torus_corners";
  cert["corners"] = arr;
  cert["count"] = static_cast<int>(corners.size());
  const char* condition =
      "each exit-free cycle of period n supports a corner isomorphic to the "
      "n by n matrices over continuous functions on the circle";
  if (corners.empty()) return Verdict::no(condition, cert);
  return Verdict::yes(condition, cert);
}

Verdict lattice_verdict(const DirectedGraph& g, std::uint64_t set_cap) {
  const char* condition =
      "the ideal lattice is the lattice of hereditary saturated vertex sets";
  try {
    const std::vector<VertexSet> sets =
        enumerate_hereditary_saturated(g, set_cap);
    Json arr = Json::array();
    for (const VertexSet& s : sets) arr.push_back(vertex_set_json(g, s));
    Json cert;
    cert["type"] = "lattice";
    cert["sets"] = arr;
    cert["count"] = static_cast<int>(sets.size());
    return Verdict::yes(condition, cert);
  } catch (const CapExceededError& e) {
    Verdict v = Verdict::unknown(condition, e.what());
    v.certificate = Json{{"type", "cap_exceeded"},
                         {"what", "hereditary saturated set enumeration"},
                         {"cap", e.cap}};
    return v;
  }
}

Verdict contraction_verdict(const AdjacencyMatrix& a) {
  const char* condition =
      "a vertex connecting to a cycle with an exit admits a cylinder W and "
      "counts n < m with the n-th shift image strictly inside the m-th";
  for (int i = 0; i < a.n; ++i) {
    bool any = false;
    for (int j = 0; j < a.n; ++j) any = any || a.a[i][j] != 0;
    if (!any) {
      Verdict v = Verdict::unknown(
          condition, "the matrix has a zero row; the shift space would have "
                     "terminal paths");
      v.certificate = Json{{"type", "hypothesis_violation"},
                           {"zero_row", i + 1}};
      v.with_hypotheses({"no zero rows: FAILED"});
      return v;
    }
  }
  const DirectedGraph g = graph_of_matrix(a);
  const std::vector<bool> can =
      backward_closure(g, cycle_with_exit_vertices(g));
  Json witnesses;
  Json failing = Json::array();
  for (int v = 0; v < a.n; ++v) {
    if (!can[v]) {
      failing.push_back(g.vertex_id(v));
      continue;
    }
    const ContractionWitness w = contraction_witness(a, v + 1);
    Json wj;
    wj["word"] = w.w.word;
    wj["n"] = w.n;
    wj["m"] = w.m;
    wj["verified"] = true;
    witnesses[g.vertex_id(v)] = wj;
  }
  Json cert;
  cert["type"] = "contraction_witnesses";
  cert["witnesses"] = witnesses;
  cert["failing"] = failing;
  Verdict v = failing.empty() ? Verdict::yes(condition, cert)
                              : Verdict::no(condition, cert);
  v.with_hypotheses({"no zero rows"});
  return v;
}

}  // namespace

const std::set<std::string>& known_check_groups() {
  static const std::set<std::string> groups{"af",     "pi",     "stable",
                                            "ideals", "traces", "shift",
                                            "all"};
  return groups;
}

Report analyze(const ParsedInput& input, const AnalysisOptions& opt) {
  for (const std::string& c : opt.checks)
    if (!known_check_groups().count(c))
      throw InvalidArgumentError("unknown check group `" + c + "`");
  const bool all = opt.checks.count("all") != 0;
  const auto wants = [&](const char* group) {
    return all || opt.checks.count(group) != 0;
  };

  Report r;
  r.input_path = opt.input_path;
  r.cls = input.cls;
  r.depth = opt.depth;
  switch (input.cls.tag) {
    case GraphTag::Finite:
      r.format = InputFormat::Edgelist;
      break;
    case GraphTag::Matrix:
      r.format = InputFormat::Matrix;
      break;
    case GraphTag::Periodic:
      r.format = InputFormat::Periodic;
      break;
  }
  r.input_text = serialize(input);

  const bool periodic = input.cls.tag == GraphTag::Periodic;
  const bool matrix = input.cls.tag == GraphTag::Matrix;
  auto add = [&](const std::string& key, Verdict v, bool supported) {
    r.verdicts.emplace(key, std::move(v));
    if (supported) r.any_supported = true;
  };

  if (wants("af")) {
    if (periodic) {
      add("af",
          unsupported("acyclicity is decided for finite graphs and matrix "
                      "graphs only"),
          false);
      add("torus_corners",
          unsupported("exit-free-cycle listing covers finite graphs only"),
          false);
    } else {
      add("af", matrix ? is_af(*input.matrix) : is_af(input.graph), true);
      add("torus_corners", torus_corner_verdict(input.graph), true);
    }
  }
  if (wants("pi")) {
    add("purely_infinite",
        periodic ? periodic_is_purely_infinite(*input.periodic, opt.depth)
                 : is_purely_infinite(input.graph, opt.set_cap),
        true);
  }
  if (wants("stable")) {
    add("stable", is_stable(input, opt.depth), true);
    add("unital_quotient", has_unital_quotient(input, opt.depth), true);
  }
  if (wants("ideals")) {
    if (periodic)
      add("hereditary_saturated_lattice",
          unsupported("lattice enumeration covers finite graphs only"),
          false);
    else
      add("hereditary_saturated_lattice",
          lattice_verdict(input.graph, opt.set_cap), true);
  }
  if (wants("traces")) {
    if (periodic)
      add("graph_trace",
          unsupported("the trace linear program needs a finite vertex set; "
                      "stability analysis covers traces for periodic "
                      "inputs"),
          false);
    else
      add("graph_trace", bounded_graph_trace(input.graph), true);
  }
  if (wants("shift")) {
    if (matrix)
      add("contraction_witnesses", contraction_verdict(*input.matrix), true);
    else
      add("contraction_witnesses",
          unsupported("shift-space calculus is defined for matrix inputs"),
          false);
  }
  return r;
}

Json report_json(const Report& r) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["input"] = Json{{"path", r.input_path},
                    {"format", format_name(r.format)},
                    {"content", r.input_text}};
  j["graph_class"] = Json{{"kind", tag_name(r.cls.tag)},
                          {"no_sinks", r.cls.no_sinks},
                          {"locally_finite", r.cls.locally_finite},
                          {"row_finite", r.cls.row_finite},
                          {"no_zero_rows", r.cls.no_zero_rows}};
  j["depth"] = r.depth;
  Json verdicts;
  for (const auto& [name, v] : r.verdicts) verdicts[name] = v.to_json();
  j["verdicts"] = verdicts;
  return j;
}

Report report_from_json(const Json& j) {
  Report r;
  r.input_path = j.at("input").at("path").get<std::string>();
  const auto fmt =
      format_from_name(j.at("input").at("format").get<std::string>());
  if (!fmt) throw InvalidArgumentError("unknown input format in report");
  r.format = *fmt;
  r.input_text = j.at("input").at("content").get<std::string>();
  r.depth = j.value("depth", 0);
  const ParsedInput input = parse(r.input_text, r.format);
  r.cls = input.cls;
  for (const auto& [name, vj] : j.at("verdicts").items())
    r.verdicts.emplace(name, Verdict::from_json(vj));
  return r;
}

std::string report_text(const Report& r) {
  std::ostringstream out;
  out << kToolName << " " << kToolVersion << "\n";
  out << "input: " << r.input_path << " (" << format_name(r.format) << ")\n";
  out << "class: " << tag_name(r.cls.tag)
      << (r.cls.no_sinks ? "; no sinks" : "; has sinks")
      << (r.cls.locally_finite ? "; locally finite" : "")
      << (r.cls.row_finite ? "; row-finite" : "") << "\n";
  for (const auto& [name, v] : r.verdicts) {
    out << name << ": ";
    switch (v.value) {
      case Truth::Yes:
        out << "YES";
        break;
      case Truth::No:
        out << "NO";
        break;
      case Truth::Unknown:
        out << "UNKNOWN";
        break;
    }
    if (v.value == Truth::Unknown && !v.unknown_reason.empty())
      out << " (" << v.unknown_reason << ")";
    else if (!v.condition.empty())
      out << " — " << v.condition;
    if (!v.certificate.is_null() && v.certificate.contains("type"))
      out << " [certificate: "
          << v.certificate["type"].get<std::string>() << "]";
    out << "\n";
  }
  return out.str();
}

std::string export_dot(const ParsedInput& input, int copies) {
  const DirectedGraph* g = &input.graph;
  DirectedGraph realized;
  std::ostringstream out;
  if (input.cls.tag == GraphTag::Periodic) {
    const int k =
        copies > 0 ? copies : default_exploration_depth(*input.periodic);
    realized = realize_truncation(*input.periodic, k);
    g = &realized;
    out << "// TRUNCATED: first " << k
        << " block copies of an infinite graph\n";
  }
  out << "digraph G {\n";
  for (int v = 0; v < g->vertex_count(); ++v)
    out << "  \"" << g->vertex_id(v) << "\";\n";
  for (int e = 0; e < g->edge_count(); ++e)
    out << "  \"" << g->vertex_id(g->edge(e).src) << "\" -> \""
        << g->vertex_id(g->edge(e).dst) << "\" [label=\"" << g->edge(e).id
        << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace ck
