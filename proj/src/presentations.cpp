#include "ck/presentations.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "ck/errors.hpp"

namespace ck {

namespace {

struct Token {
  std::string text;
  int col = 0;  // 1-based column of the first character
};

// Splits a raw line into whitespace-separated tokens, dropping everything
// from the first '#' on.
std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  const std::size_t end = std::min(line.size(), line.find('#'));
  std::size_t i = 0;
  while (i < end) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < end && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

struct PendingVertex {
  std::string id;
  int line = 0;
  int col = 0;
};

struct PendingEdge {
  std::string id;
  std::string src;
  std::string dst;
  std::string extra;  // shift or direction token, when the section has one
  int line = 0;
  int col = 0;       // column of the id token
  int src_col = 0;
  int dst_col = 0;
  int extra_col = 0;
};

void require_arity(const std::vector<Token>& toks, std::size_t want, int line,
                   const char* usage) {
  if (toks.size() != want)
    throw ParseError(line, toks.front().col,
                     std::string("expected `") + usage + "`");
}

// Collects vertex/edge declarations with duplicate detection carrying source
// positions, then builds the graph.
class GraphBuilder {
 public:
  void add_vertex(const PendingVertex& v) {
    if (!seen_vertices_.insert(v.id).second)
      throw ParseError(v.line, v.col, "duplicate vertex id `" + v.id + "`");
    vertices_.push_back(v);
  }

  void add_edge(const PendingEdge& e) {
    if (!seen_edges_.insert(e.id).second)
      throw ParseError(e.line, e.col, "duplicate edge id `" + e.id + "`");
    edges_.push_back(e);
  }

  bool has_vertex(const std::string& id) const {
    return seen_vertices_.count(id) != 0;
  }

  const std::vector<PendingVertex>& vertices() const { return vertices_; }
  const std::vector<PendingEdge>& edges() const { return edges_; }

  // Endpoint check is deferred so declaration order never matters.
  DirectedGraph build() const {
    for (const PendingEdge& e : edges_) {
      if (!has_vertex(e.src))
        throw ParseError(e.line, e.src_col,
                         "edge `" + e.id + "` uses undeclared vertex `" +
                             e.src + "`");
      if (!has_vertex(e.dst))
        throw ParseError(e.line, e.dst_col,
                         "edge `" + e.id + "` uses undeclared vertex `" +
                             e.dst + "`");
    }
    std::vector<std::string> vids;
    vids.reserve(vertices_.size());
    for (const PendingVertex& v : vertices_) vids.push_back(v.id);
    std::vector<std::array<std::string, 3>> triples;
    triples.reserve(edges_.size());
    for (const PendingEdge& e : edges_) triples.push_back({e.id, e.src, e.dst});
    return DirectedGraph(std::move(vids), std::move(triples));
  }

 private:
  std::vector<PendingVertex> vertices_;
  std::vector<PendingEdge> edges_;
  std::set<std::string> seen_vertices_;
  std::set<std::string> seen_edges_;
};

ParsedInput parse_edgelist(const std::string& text) {
  GraphBuilder gb;
  const auto lines = split_lines(text);
  for (int ln = 1; ln <= static_cast<int>(lines.size()); ++ln) {
    const auto toks = tokenize(lines[ln - 1]);
    if (toks.empty()) continue;
    if (toks[0].text == "vertex") {
      require_arity(toks, 2, ln, "vertex <id>");
      gb.add_vertex({toks[1].text, ln, toks[1].col});
    } else if (toks[0].text == "edge") {
      require_arity(toks, 4, ln, "edge <id> <source> <range>");
      gb.add_edge({toks[1].text, toks[2].text, toks[3].text, "", ln,
                   toks[1].col, toks[2].col, toks[3].col, 0});
    } else {
      throw ParseError(ln, toks[0].col,
                       "unknown keyword `" + toks[0].text + "`");
    }
  }
  ParsedInput out;
  out.graph = gb.build();
  out.cls = classify_graph(out.graph, GraphTag::Finite);
  return out;
}

inline constexpr int kMaxMatrixSize = 4096;

ParsedInput parse_matrix(const std::string& text) {
  const auto lines = split_lines(text);
  int n = -1;
  std::vector<std::vector<int>> rows;
  for (int ln = 1; ln <= static_cast<int>(lines.size()); ++ln) {
    const auto toks = tokenize(lines[ln - 1]);
    if (toks.empty()) continue;
    if (n < 0) {
      require_arity(toks, 2, ln, "matrix <n>");
      if (toks[0].text != "matrix")
        throw ParseError(ln, toks[0].col, "expected `matrix <n>`");
      try {
        std::size_t used = 0;
        n = std::stoi(toks[1].text, &used);
        if (used != toks[1].text.size()) n = -1;
      } catch (const std::exception&) {
        n = -1;
      }
      if (n < 1 || n > kMaxMatrixSize)
        throw ParseError(ln, toks[1].col,
                         "matrix size must be an integer in [1, " +
                             std::to_string(kMaxMatrixSize) + "]");
      continue;
    }
    if (static_cast<int>(rows.size()) == n)
      throw ParseError(ln, toks[0].col, "content after the last matrix row");
    if (static_cast<int>(toks.size()) != n)
      throw ParseError(ln, toks[0].col,
                       "expected " + std::to_string(n) + " entries, found " +
                           std::to_string(toks.size()));
    std::vector<int> row;
    row.reserve(n);
    for (const Token& t : toks) {
      if (t.text != "0" && t.text != "1")
        throw ParseError(ln, t.col, "matrix entries must be 0 or 1");
      row.push_back(t.text == "1" ? 1 : 0);
    }
    rows.push_back(std::move(row));
  }
  if (n < 0) throw ParseError(1, 0, "missing `matrix <n>` header");
  if (static_cast<int>(rows.size()) != n)
    throw ParseError(static_cast<int>(lines.size()), 0,
                     "expected " + std::to_string(n) + " matrix rows, found " +
                         std::to_string(rows.size()));
  ParsedInput out;
  out.matrix = AdjacencyMatrix{n, std::move(rows)};
  out.graph = graph_of_matrix(*out.matrix);
  out.cls = classify_graph(out.graph, GraphTag::Matrix);
  return out;
}

enum class Section { None, Stem, Block, Cross, StemBlock };

void forbid_at_sign(const std::string& id, int line, int col) {
  if (id.find('@') != std::string::npos)
    throw ParseError(line, col,
                     "'@' is reserved for realized copies; id `" + id +
                         "` is not allowed");
}

ParsedInput parse_periodic(const std::string& text) {
  GraphBuilder stem_gb, block_gb;
  std::vector<PendingEdge> cross, stem_block;
  std::set<std::string> edge_ids;  // global across all sections
  std::set<std::string> vertex_ids;

  auto claim_edge_id = [&](const PendingEdge& e) {
    if (!edge_ids.insert(e.id).second)
      throw ParseError(e.line, e.col, "duplicate edge id `" + e.id + "`");
  };
  auto claim_vertex_id = [&](const PendingVertex& v) {
    if (!vertex_ids.insert(v.id).second)
      throw ParseError(v.line, v.col, "duplicate vertex id `" + v.id + "`");
  };

  Section section = Section::None;
  const auto lines = split_lines(text);
  for (int ln = 1; ln <= static_cast<int>(lines.size()); ++ln) {
    const auto toks = tokenize(lines[ln - 1]);
    if (toks.empty()) continue;
    const Token& head = toks[0];
    if (head.text.front() == '[') {
      if (toks.size() != 1)
        throw ParseError(ln, toks[1].col, "content after section header");
      if (head.text == "[stem]")
        section = Section::Stem;
      else if (head.text == "[block]")
        section = Section::Block;
      else if (head.text == "[cross]")
        section = Section::Cross;
      else if (head.text == "[stem-block]")
        section = Section::StemBlock;
      else
        throw ParseError(ln, head.col,
                         "unknown section `" + head.text + "`");
      continue;
    }
    switch (section) {
      case Section::None:
        throw ParseError(ln, head.col, "content before the first section");
      case Section::Stem:
      case Section::Block: {
        GraphBuilder& gb = section == Section::Stem ? stem_gb : block_gb;
        if (head.text == "vertex") {
          require_arity(toks, 2, ln, "vertex <id>");
          forbid_at_sign(toks[1].text, ln, toks[1].col);
          PendingVertex v{toks[1].text, ln, toks[1].col};
          claim_vertex_id(v);
          gb.add_vertex(v);
        } else if (head.text == "edge") {
          require_arity(toks, 4, ln, "edge <id> <source> <range>");
          forbid_at_sign(toks[1].text, ln, toks[1].col);
          PendingEdge e{toks[1].text, toks[2].text, toks[3].text, "", ln,
                        toks[1].col, toks[2].col, toks[3].col, 0};
          claim_edge_id(e);
          gb.add_edge(e);
        } else {
          throw ParseError(ln, head.col,
                           "unknown keyword `" + head.text + "`");
        }
        break;
      }
      case Section::Cross: {
        if (head.text != "edge")
          throw ParseError(ln, head.col,
                           "unknown keyword `" + head.text + "`");
        require_arity(toks, 5, ln, "edge <id> <source> <range> <+1|-1>");
        forbid_at_sign(toks[1].text, ln, toks[1].col);
        if (toks[4].text != "+1" && toks[4].text != "-1")
          throw ParseError(ln, toks[4].col, "shift must be +1 or -1");
        PendingEdge e{toks[1].text, toks[2].text, toks[3].text, toks[4].text,
                      ln, toks[1].col, toks[2].col, toks[3].col, toks[4].col};
        claim_edge_id(e);
        cross.push_back(e);
        break;
      }
      case Section::StemBlock: {
        if (head.text != "edge")
          throw ParseError(ln, head.col,
                           "unknown keyword `" + head.text + "`");
        require_arity(toks, 5, ln,
                      "edge <id> <stem vertex> <block vertex> "
                      "<to-block|to-stem>");
        forbid_at_sign(toks[1].text, ln, toks[1].col);
        if (toks[4].text != "to-block" && toks[4].text != "to-stem")
          throw ParseError(ln, toks[4].col,
                           "direction must be to-block or to-stem");
        PendingEdge e{toks[1].text, toks[2].text, toks[3].text, toks[4].text,
                      ln, toks[1].col, toks[2].col, toks[3].col, toks[4].col};
        claim_edge_id(e);
        stem_block.push_back(e);
        break;
      }
    }
  }

  PeriodicPresentation p;
  p.stem = stem_gb.build();
  p.block = block_gb.build();
  if (p.block.empty())
    throw ParseError(1, 0, "periodic presentation needs a nonempty [block]");
  for (const PendingEdge& e : cross) {
    if (p.block.vertex_index(e.src) < 0)
      throw ParseError(e.line, e.src_col,
                       "cross edge `" + e.id + "` uses non-block vertex `" +
                           e.src + "`");
    if (p.block.vertex_index(e.dst) < 0)
      throw ParseError(e.line, e.dst_col,
                       "cross edge `" + e.id + "` uses non-block vertex `" +
                           e.dst + "`");
    p.cross_edges.push_back({e.id, e.src, e.dst, e.extra == "+1" ? +1 : -1});
  }
  for (const PendingEdge& e : stem_block) {
    if (p.stem.vertex_index(e.src) < 0)
      throw ParseError(e.line, e.src_col,
                       "stem-block edge `" + e.id +
                           "` uses non-stem vertex `" + e.src + "`");
    if (p.block.vertex_index(e.dst) < 0)
      throw ParseError(e.line, e.dst_col,
                       "stem-block edge `" + e.id +
                           "` uses non-block vertex `" + e.dst + "`");
    p.stem_block_edges.push_back({e.id, e.src, e.dst, e.extra == "to-block"});
  }
  auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
  std::sort(p.cross_edges.begin(), p.cross_edges.end(), by_id);
  std::sort(p.stem_block_edges.begin(), p.stem_block_edges.end(), by_id);

  ParsedInput out;
  out.cls = classify_periodic(p);
  out.periodic = std::move(p);
  return out;
}

}  // namespace

bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
  if (a.vertex_ids() != b.vertex_ids()) return false;
  if (a.edge_count() != b.edge_count()) return false;
  for (int e = 0; e < a.edge_count(); ++e) {
    const Edge& ea = a.edge(e);
    const Edge& eb = b.edge(e);
    if (ea.id != eb.id || ea.src != eb.src || ea.dst != eb.dst) return false;
  }
  return true;
}

bool operator==(const PeriodicPresentation& a, const PeriodicPresentation& b) {
  return a.stem == b.stem && a.block == b.block &&
         a.cross_edges == b.cross_edges &&
         a.stem_block_edges == b.stem_block_edges;
}

ParsedInput parse(const std::string& text, InputFormat format) {
  switch (format) {
    case InputFormat::Edgelist:
      return parse_edgelist(text);
    case InputFormat::Matrix:
      return parse_matrix(text);
    case InputFormat::Periodic:
      return parse_periodic(text);
  }
  throw InvalidArgumentError("unknown input format");
}

std::string serialize(const DirectedGraph& g) {
  std::ostringstream os;
  for (const std::string& v : g.vertex_ids()) os << "vertex " << v << "\n";
  for (const Edge& e : g.edges())
    os << "edge " << e.id << " " << g.vertex_id(e.src) << " "
       << g.vertex_id(e.dst) << "\n";
  return os.str();
}

std::string serialize(const AdjacencyMatrix& m) {
  std::ostringstream os;
  os << "matrix " << m.n << "\n";
  for (const auto& row : m.a) {
    for (int j = 0; j < m.n; ++j) os << (j ? " " : "") << row[j];
    os << "\n";
  }
  return os.str();
}

std::string serialize(const PeriodicPresentation& p) {
  std::ostringstream os;
  os << "[stem]\n" << serialize(p.stem);
  os << "[block]\n" << serialize(p.block);
  os << "[cross]\n";
  for (const CrossEdge& e : p.cross_edges)
    os << "edge " << e.id << " " << e.src << " " << e.dst << " "
       << (e.shift > 0 ? "+1" : "-1") << "\n";
  os << "[stem-block]\n";
  for (const StemBlockEdge& e : p.stem_block_edges)
    os << "edge " << e.id << " " << e.stem_v << " " << e.block_v << " "
       << (e.to_block ? "to-block" : "to-stem") << "\n";
  return os.str();
}

std::string serialize(const ParsedInput& input) {
  switch (input.cls.tag) {
    case GraphTag::Finite:
      return serialize(input.graph);
    case GraphTag::Matrix:
      return serialize(*input.matrix);
    case GraphTag::Periodic:
      return serialize(*input.periodic);
  }
  throw InvalidArgumentError("unknown input tag");
}

std::optional<InputFormat> sniff_format(const std::string& filename) {
  const auto dot = filename.rfind('.');
  if (dot == std::string::npos) return std::nullopt;
  const std::string ext = filename.substr(dot + 1);
  if (ext == "ckg") return InputFormat::Edgelist;
  if (ext == "mtx") return InputFormat::Matrix;
  if (ext == "period") return InputFormat::Periodic;
  return std::nullopt;
}

const char* format_name(InputFormat f) {
  switch (f) {
    case InputFormat::Edgelist:
      return "edgelist";
    case InputFormat::Matrix:
      return "matrix";
    case InputFormat::Periodic:
      return "periodic";
  }
  return "?";
}

std::optional<InputFormat> format_from_name(const std::string& name) {
  if (name == "edgelist") return InputFormat::Edgelist;
  if (name == "matrix") return InputFormat::Matrix;
  if (name == "periodic") return InputFormat::Periodic;
  return std::nullopt;
}

DirectedGraph graph_of_matrix(const AdjacencyMatrix& m) {
  std::vector<std::string> vids;
  vids.reserve(m.n);
  for (int i = 1; i <= m.n; ++i) vids.push_back(std::to_string(i));
  std::vector<std::array<std::string, 3>> triples;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (m.a[i][j]) {
        std::string si = std::to_string(i + 1);
        std::string sj = std::to_string(j + 1);
        triples.push_back({si + "->" + sj, si, sj});
      }
  return DirectedGraph(std::move(vids), std::move(triples));
}

GraphClass classify_graph(const DirectedGraph& g, GraphTag tag) {
  const DegreeProfile prof = degree_profile(g);
  GraphClass cls;
  cls.tag = tag;
  cls.no_sinks = prof.sinks.empty();
  cls.locally_finite = prof.locally_finite;
  cls.row_finite = prof.row_finite;
  cls.no_zero_rows = !prof.has_zero_rows;
  return cls;
}

PeriodicDegrees periodic_out_degrees(const PeriodicPresentation& p) {
  PeriodicDegrees d;
  const int nb = p.block.vertex_count();
  const int ns = p.stem.vertex_count();
  std::vector<int> plus(nb, 0), minus(nb, 0), to_stem(nb, 0);
  std::vector<int> to_block(ns, 0);
  for (const CrossEdge& e : p.cross_edges) {
    const int b = p.block.vertex_index(e.src);
    (e.shift > 0 ? plus : minus)[b] += 1;
  }
  for (const StemBlockEdge& e : p.stem_block_edges) {
    if (e.to_block)
      to_block[p.stem.vertex_index(e.stem_v)] += 1;
    else
      to_stem[p.block.vertex_index(e.block_v)] += 1;
  }
  d.out_copy1.resize(nb);
  d.out_deep.resize(nb);
  for (int b = 0; b < nb; ++b) {
    d.out_copy1[b] = p.block.out_degree(b) + plus[b] + to_stem[b];
    d.out_deep[b] = p.block.out_degree(b) + plus[b] + minus[b];
  }
  d.out_stem.resize(ns);
  for (int s = 0; s < ns; ++s)
    d.out_stem[s] = p.stem.out_degree(s) + to_block[s];
  return d;
}

GraphClass classify_periodic(const PeriodicPresentation& p) {
  const PeriodicDegrees d = periodic_out_degrees(p);
  GraphClass cls;
  cls.tag = GraphTag::Periodic;
  cls.no_sinks = true;
  for (int s = 0; s < p.stem.vertex_count(); ++s)
    if (d.out_stem[s] == 0) cls.no_sinks = false;
  for (int b = 0; b < p.block.vertex_count(); ++b)
    if (d.out_copy1[b] == 0 || d.out_deep[b] == 0) cls.no_sinks = false;
  // Finitely many vertices and edges per period keep all degrees finite.
  cls.locally_finite = true;
  cls.row_finite = true;
  cls.no_zero_rows = cls.no_sinks;
  return cls;
}

DirectedGraph realize_truncation(const PeriodicPresentation& p, int copies) {
  if (copies < 1)
    throw InvalidArgumentError("truncation needs at least one block copy");
  std::vector<std::string> vids = p.stem.vertex_ids();
  for (int k = 1; k <= copies; ++k)
    for (const std::string& b : p.block.vertex_ids())
      vids.push_back(b + "@" + std::to_string(k));
  std::vector<std::array<std::string, 3>> triples;
  for (const Edge& e : p.stem.edges())
    triples.push_back(
        {e.id, p.stem.vertex_id(e.src), p.stem.vertex_id(e.dst)});
  for (int k = 1; k <= copies; ++k) {
    const std::string at = "@" + std::to_string(k);
    for (const Edge& e : p.block.edges())
      triples.push_back({e.id + at, p.block.vertex_id(e.src) + at,
                         p.block.vertex_id(e.dst) + at});
  }
  for (const CrossEdge& e : p.cross_edges) {
    if (e.shift > 0) {
      for (int k = 1; k < copies; ++k)
        triples.push_back({e.id + "@" + std::to_string(k),
                           e.src + "@" + std::to_string(k),
                           e.dst + "@" + std::to_string(k + 1)});
    } else {
      for (int k = 2; k <= copies; ++k)
        triples.push_back({e.id + "@" + std::to_string(k),
                           e.src + "@" + std::to_string(k),
                           e.dst + "@" + std::to_string(k - 1)});
    }
  }
  for (const StemBlockEdge& e : p.stem_block_edges) {
    if (e.to_block)
      triples.push_back({e.id, e.stem_v, e.block_v + "@1"});
    else
      triples.push_back({e.id, e.block_v + "@1", e.stem_v});
  }
  return DirectedGraph(std::move(vids), std::move(triples));
}

int default_exploration_depth(const PeriodicPresentation& p) {
  return std::max(4, p.stem.vertex_count() + 3 * p.block.vertex_count());
}

}  // namespace ck
