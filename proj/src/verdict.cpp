#include "ck/verdict.hpp"

#include "ck/errors.hpp"

namespace ck {

const char* truth_name(Truth t) {
  switch (t) {
    case Truth::Yes:
      return "yes";
    case Truth::No:
      return "no";
    case Truth::Unknown:
      return "unknown";
  }
  return "?";
}

std::optional<Truth> truth_from_name(const std::string& name) {
  if (name == "yes") return Truth::Yes;
  if (name == "no") return Truth::No;
  if (name == "unknown") return Truth::Unknown;
  return std::nullopt;
}

Verdict Verdict::yes(std::string condition, Json certificate) {
  Verdict v;
  v.value = Truth::Yes;
  v.condition = std::move(condition);
  v.certificate = std::move(certificate);
  return v;
}

Verdict Verdict::no(std::string condition, Json certificate) {
  Verdict v;
  v.value = Truth::No;
  v.condition = std::move(condition);
  v.certificate = std::move(certificate);
  return v;
}

Verdict Verdict::unknown(std::string condition, std::string reason) {
  Verdict v;
  v.value = Truth::Unknown;
  v.condition = std::move(condition);
  v.unknown_reason = std::move(reason);
  return v;
}

Verdict& Verdict::with_hypotheses(std::vector<std::string> hs) {
  hypothesis_trace = std::move(hs);
  return *this;
}

Json Verdict::to_json() const {
  Json j;
  j["value"] = truth_name(value);
  j["certificate"] = certificate;
  j["paper_condition"] = condition;
  j["hypothesis_trace"] = hypothesis_trace;
  if (value == Truth::Unknown) j["reason"] = unknown_reason;
  return j;
}

Verdict Verdict::from_json(const Json& j) {
  Verdict v;
  const auto t = truth_from_name(j.value("value", std::string()));
  if (!t) throw InvalidArgumentError("verdict has no valid `value` field");
  v.value = *t;
  v.condition = j.value("paper_condition", std::string());
  v.certificate = j.contains("certificate") ? j.at("certificate") : Json();
  if (j.contains("hypothesis_trace"))
    for (const auto& h : j.at("hypothesis_trace"))
      v.hypothesis_trace.push_back(h.get<std::string>());
  v.unknown_reason = j.value("reason", std::string());
  return v;
}

Json cycle_to_json(const DirectedGraph& g, const Path& cycle) {
  Json j;
  j["type"] = "cycle";
  j["edges"] = cycle.edge_ids(g);
  Json verts = Json::array();
  for (int v : cycle.source_vertices(g)) verts.push_back(g.vertex_id(v));
  j["vertices"] = verts;
  j["length"] = cycle.length();
  return j;
}

Json vertex_ids_json(const DirectedGraph& g, const std::vector<int>& vs) {
  Json out = Json::array();
  for (int v : vs) out.push_back(g.vertex_id(v));
  return out;
}

Json vertex_set_json(const DirectedGraph& g, const std::vector<bool>& mask) {
  Json out = Json::array();
  for (int v = 0; v < g.vertex_count(); ++v)
    if (mask[v]) out.push_back(g.vertex_id(v));
  return out;
}

}  // namespace ck
