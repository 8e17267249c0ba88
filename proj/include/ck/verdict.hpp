#ifndef CK_VERDICT_HPP
#define CK_VERDICT_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ck/graph.hpp"

namespace ck {

using Json = nlohmann::json;  // std::map-backed: keys serialize sorted

enum class Truth { Yes, No, Unknown };

const char* truth_name(Truth t);
std::optional<Truth> truth_from_name(const std::string& name);

/// A three-valued decision with a typed, independently re-checkable
/// certificate.  `condition` names the mathematical criterion that decided
/// the value; `hypothesis_trace` lists the hypotheses that were actually
/// verified before trusting that criterion.
struct Verdict {
  Truth value = Truth::Unknown;
  std::string condition;
  Json certificate = nullptr;  // object whenever value != Unknown
  std::vector<std::string> hypothesis_trace;
  std::string unknown_reason;  // nonempty iff value == Unknown

  static Verdict yes(std::string condition, Json certificate);
  static Verdict no(std::string condition, Json certificate);
  static Verdict unknown(std::string condition, std::string reason);

  Verdict& with_hypotheses(std::vector<std::string> hs);

  Json to_json() const;
  static Verdict from_json(const Json& j);
};

/// Shared certificate fragments.
Json cycle_to_json(const DirectedGraph& g, const Path& cycle);
Json vertex_ids_json(const DirectedGraph& g, const std::vector<int>& vs);
Json vertex_set_json(const DirectedGraph& g, const std::vector<bool>& mask);

}  // namespace ck

#endif  // CK_VERDICT_HPP
