#ifndef CK_REPORT_HPP
#define CK_REPORT_HPP

#include <map>
#include <set>
#include <string>

#include "ck/ideals.hpp"
#include "ck/presentations.hpp"
#include "ck/verdict.hpp"

namespace ck {

inline constexpr const char* kToolName = "ckalg";
inline constexpr const char* kToolVersion = "1.0.0";

/// Check groups accepted by `--check`; "all" expands to every group.
const std::set<std::string>& known_check_groups();

struct AnalysisOptions {
  std::set<std::string> checks{"all"};
  int depth = 0;  // periodic exploration depth; 0 = automatic
  std::uint64_t cycle_cap = kDefaultCycleCap;
  std::uint64_t set_cap = kDefaultSetCap;
  std::string input_path;  // echoed into the report
};

/// One analysis run: classification plus the requested verdicts.  Reports
/// embed a canonical serialization of the input so the verifier can rebuild
/// the graph without the original file.  No timing data is recorded: equal
/// inputs must produce byte-identical reports.
struct Report {
  std::string input_path;
  InputFormat format = InputFormat::Edgelist;
  std::string input_text;  // canonical serialization
  GraphClass cls;
  int depth = 0;
  std::map<std::string, Verdict> verdicts;
  bool any_supported = false;  // at least one check applied to this class
};

Report analyze(const ParsedInput& input, const AnalysisOptions& opt);

Json report_json(const Report& r);
Report report_from_json(const Json& j);  // rebuilds verdicts + input text
std::string report_text(const Report& r);

/// Deterministic DOT export; periodic inputs are realized to `copies`
/// copies (0 = automatic) behind a TRUNCATED banner.
std::string export_dot(const ParsedInput& input, int copies = 0);

}  // namespace ck

#endif  // CK_REPORT_HPP
