#include <string>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"

#include "ck/checker.hpp"
#include "ck/report.hpp"

using namespace ck;
using namespace ck::testutil;

namespace {

const char* kTwoLoops = R"(vertex v
edge e v v
edge f v v
)";

const char* kPath3 = R"(vertex a
vertex b
vertex c
edge e1 a b
edge e2 b c
)";

const char* kChain = R"([stem]
vertex w

[block]
vertex b

[cross]
edge f b b +1
edge g b b -1

[stem-block]
edge in w b to-block
edge out w b to-stem
)";

Report analyze_text(const std::string& text, InputFormat fmt,
                    AnalysisOptions opt = {}) {
  return analyze(parse(text, fmt), opt);
}

}  // namespace

TEST_CASE("a full analysis of a finite graph answers every check") {
  const Report r = analyze_text(kTwoLoops, InputFormat::Edgelist);
  const std::vector<std::string> keys{
      "af",     "torus_corners",        "purely_infinite",
      "stable", "unital_quotient",      "hereditary_saturated_lattice",
      "graph_trace", "contraction_witnesses"};
  REQUIRE(r.verdicts.size() == keys.size());
  for (const std::string& k : keys) REQUIRE(r.verdicts.count(k) == 1);
  CHECK(r.any_supported);
  CHECK(r.verdicts.at("af").value == Truth::No);
  CHECK(r.verdicts.at("purely_infinite").value == Truth::Yes);
  CHECK(r.verdicts.at("stable").value == Truth::No);
  CHECK(r.verdicts.at("graph_trace").value == Truth::No);
  // Shift-space calculus needs a matrix input.
  CHECK(r.verdicts.at("contraction_witnesses").value == Truth::Unknown);
  CHECK(r.verdicts.at("contraction_witnesses").certificate["type"] ==
        "unsupported_input_class");
}

TEST_CASE("matrix inputs support the shift-space check") {
  const Report r = analyze(matrix_input(make_matrix({{1, 1}, {1, 1}})), {});
  CHECK(r.verdicts.at("contraction_witnesses").value == Truth::Yes);
  CHECK(r.verdicts.at("af").value == Truth::No);
}

TEST_CASE("periodic inputs support exactly the infinite-graph checks") {
  const Report r = analyze_text(kChain, InputFormat::Periodic);
  CHECK(r.any_supported);
  CHECK(r.verdicts.at("purely_infinite").value == Truth::Yes);
  CHECK(r.verdicts.at("stable").value == Truth::Yes);
  CHECK(r.verdicts.at("unital_quotient").value == Truth::No);
  for (const char* k : {"af", "torus_corners", "hereditary_saturated_lattice",
                        "graph_trace", "contraction_witnesses"}) {
    CHECK(r.verdicts.at(k).value == Truth::Unknown);
    CHECK(r.verdicts.at(k).certificate["type"] == "unsupported_input_class");
  }
}

TEST_CASE("a periodic run restricted to unsupported checks reports it") {
  AnalysisOptions opt;
  opt.checks = {"ideals"};
  const Report r = analyze_text(kChain, InputFormat::Periodic, opt);
  CHECK_FALSE(r.any_supported);
  REQUIRE(r.verdicts.size() == 1);
  CHECK(r.verdicts.count("hereditary_saturated_lattice") == 1);
}

TEST_CASE("check selection narrows the verdict set") {
  AnalysisOptions opt;
  opt.checks = {"af", "traces"};
  const Report r = analyze_text(kPath3, InputFormat::Edgelist, opt);
  REQUIRE(r.verdicts.size() == 3);  // af, torus_corners, graph_trace
  CHECK(r.verdicts.count("af") == 1);
  CHECK(r.verdicts.count("torus_corners") == 1);
  CHECK(r.verdicts.count("graph_trace") == 1);
}

TEST_CASE("unknown check groups are rejected") {
  AnalysisOptions opt;
  opt.checks = {"everything"};
  CHECK_THROWS_AS(analyze_text(kPath3, InputFormat::Edgelist, opt),
                  InvalidArgumentError);
}

TEST_CASE("the report serialization carries the full analysis") {
  AnalysisOptions opt;
  opt.input_path = "inline/twoloops";
  const Report r = analyze_text(kTwoLoops, InputFormat::Edgelist, opt);
  const Json j = report_json(r);
  CHECK(j["tool"] == "ckalg");
  CHECK(j["version"] == "1.0.0");
  CHECK(j["input"]["path"] == "inline/twoloops");
  CHECK(j["input"]["format"] == "edgelist");
  CHECK(j["graph_class"]["kind"] == "finite");
  CHECK(j["graph_class"]["no_sinks"] == true);
  for (const auto& [name, vj] : j["verdicts"].items()) {
    CHECK(vj.contains("value"));
    CHECK(vj.contains("paper_condition"));
    CHECK(vj.contains("certificate"));
  }
  // Round-trip through JSON preserves everything the verifier needs.
  const Report back = report_from_json(j);
  CHECK(back.input_path == r.input_path);
  CHECK(back.input_text == r.input_text);
  REQUIRE(back.verdicts.size() == r.verdicts.size());
  for (const auto& [name, v] : r.verdicts) {
    CHECK(back.verdicts.at(name).value == v.value);
    CHECK(back.verdicts.at(name).certificate == v.certificate);
  }
  CHECK(report_json(back) == j);
}

TEST_CASE("equal inputs produce byte-identical reports") {
  AnalysisOptions opt;
  opt.input_path = "same";
  const std::string a =
      report_json(analyze_text(kChain, InputFormat::Periodic, opt)).dump(2);
  const std::string b =
      report_json(analyze_text(kChain, InputFormat::Periodic, opt)).dump(2);
  CHECK(a == b);
}

TEST_CASE("the verifier accepts untouched reports and rejects tampering") {
  AnalysisOptions opt;
  opt.input_path = "inline/twoloops";
  const Report r = analyze_text(kTwoLoops, InputFormat::Edgelist, opt);
  Json j = report_json(r);

  const VerificationResult ok = verify_report(j);
  CHECK(ok.all_ok());
  CHECK(ok.outcomes.size() == r.verdicts.size());

  // Flipping a verdict value must be caught.
  Json flipped = j;
  flipped["verdicts"]["af"]["value"] = "yes";
  CHECK_FALSE(verify_report(flipped).all_ok());

  // Corrupting a numeric witness must be caught.
  const Report rp = analyze_text(kPath3, InputFormat::Edgelist, opt);
  Json jp = report_json(rp);
  REQUIRE(jp["verdicts"]["graph_trace"]["value"] == "yes");
  jp["verdicts"]["graph_trace"]["certificate"]["values"]["c"] = "1/2";
  CHECK_FALSE(verify_report(jp).all_ok());

  // Corrupting the embedded cycle certificate must be caught.
  Json jc = j;
  REQUIRE(jc["verdicts"]["af"]["certificate"]["type"] == "cycle");
  jc["verdicts"]["af"]["certificate"]["edges"] = Json::array({"zz"});
  CHECK_FALSE(verify_report(jc).all_ok());
}

TEST_CASE("verification covers periodic certificates") {
  AnalysisOptions opt;
  opt.input_path = "inline/chain";
  const Json j = report_json(analyze_text(kChain, InputFormat::Periodic, opt));
  const VerificationResult res = verify_report(j);
  for (const CheckOutcome& o : res.outcomes) {
    CAPTURE(o.check);
    CAPTURE(o.detail);
    CHECK(o.ok);
  }
}

TEST_CASE("plain-text rendering names every verdict") {
  AnalysisOptions opt;
  opt.input_path = "x";
  const Report r = analyze_text(kTwoLoops, InputFormat::Edgelist, opt);
  const std::string text = report_text(r);
  CHECK(text.find("ckalg") != std::string::npos);
  CHECK(text.find("purely_infinite: YES") != std::string::npos);
  CHECK(text.find("stable: NO") != std::string::npos);
  CHECK(text.find("[certificate: ") != std::string::npos);
}

TEST_CASE("DOT export renders vertices, edges and truncation banners") {
  const std::string dot =
      export_dot(parse(kPath3, InputFormat::Edgelist));
  CHECK(dot.find("digraph G {") == 0);
  CHECK(dot.find("\"a\" -> \"b\" [label=\"e1\"];") != std::string::npos);
  CHECK(dot.find("TRUNCATED") == std::string::npos);

  const std::string chain_dot =
      export_dot(parse(kChain, InputFormat::Periodic), 4);
  CHECK(chain_dot.find("// TRUNCATED: first 4 block copies") == 0);
  CHECK(chain_dot.find("\"b@4\";") != std::string::npos);
  CHECK(chain_dot.find("\"b@5\";") == std::string::npos);
  CHECK(chain_dot.find("\"w\" -> \"b@1\" [label=\"in\"];") !=
        std::string::npos);

  const std::string empty_dot = export_dot(parse("", InputFormat::Edgelist));
  CHECK(empty_dot == "digraph G {\n}\n");
}
