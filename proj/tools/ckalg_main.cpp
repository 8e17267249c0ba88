/// Command-line front end: analyze inputs, export DOT, verify reports.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ck/checker.hpp"
#include "ck/errors.hpp"
#include "ck/presentations.hpp"
#include "ck/report.hpp"

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int fail(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 1;
}

std::optional<ck::InputFormat> resolve_format(const std::string& flag,
                                              const std::string& path) {
  if (!flag.empty()) return ck::format_from_name(flag);
  return ck::sniff_format(path);
}

std::set<std::string> split_checks(const std::string& arg) {
  std::set<std::string> out;
  std::string item;
  std::istringstream in(arg);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph algebra analyzer"};
  app.require_subcommand(1);

  std::string input_path, format_flag, check_flag = "all", out_path;
  bool json = false;
  int depth = 0;
  std::uint64_t cycle_cap = ck::kDefaultCycleCap;

  CLI::App* an = app.add_subcommand("analyze", "run checks on an input file");
  an->add_option("input", input_path, "input file")->required();
  an->add_option("--format", format_flag,
                 "input format: edgelist|matrix|periodic (default: by "
                 "extension .ckg/.mtx/.period)");
  an->add_option("--check", check_flag,
                 "comma-separated groups: af,pi,stable,ideals,traces,shift,"
                 "all");
  an->add_flag("--json", json, "emit the JSON report on stdout");
  an->add_option("--depth", depth, "periodic exploration depth (0 = auto)");
  an->add_option("--cycle-cap", cycle_cap, "cycle enumeration cap");

  CLI::App* dot = app.add_subcommand("dot", "export the input as DOT");
  dot->add_option("input", input_path, "input file")->required();
  dot->add_option("--format", format_flag,
                  "input format: edgelist|matrix|periodic");
  dot->add_option("--depth", depth,
                  "copies to realize for periodic inputs (0 = auto)");
  dot->add_option("--out", out_path, "write DOT here instead of stdout");

  CLI::App* ver = app.add_subcommand("verify", "re-check a JSON report");
  ver->add_option("report", input_path, "report file produced by "
                  "`analyze --json`")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (ver->parsed()) {
      const auto text = read_file(input_path);
      if (!text) return fail("cannot read " + input_path);
      ck::Json report;
      try {
        report = ck::Json::parse(*text);
      } catch (const ck::Json::exception& e) {
        return fail(std::string("report is not valid JSON: ") + e.what());
      }
      const ck::VerificationResult res = ck::verify_report(report);
      for (const ck::CheckOutcome& o : res.outcomes)
        std::cout << (o.ok ? "ok   " : "FAIL ") << o.check << ": "
                  << o.detail << "\n";
      std::cout << (res.all_ok() ? "all certificates verified"
                                 : "verification FAILED")
                << "\n";
      return res.all_ok() ? 0 : 1;
    }

    const auto text = read_file(input_path);
    if (!text) return fail("cannot read " + input_path);
    const auto format = resolve_format(format_flag, input_path);
    if (!format)
      return fail("cannot determine input format for " + input_path +
                  " (use --format)");
    ck::ParsedInput input;
    try {
      input = ck::parse(*text, *format);
    } catch (const ck::ParseError& e) {
      return fail(e.what());
    }

    if (dot->parsed()) {
      const std::string out = ck::export_dot(input, depth);
      if (out_path.empty()) {
        std::cout << out;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) return fail("cannot write " + out_path);
        f << out;
      }
      return 0;
    }

    ck::AnalysisOptions opt;
    opt.checks = split_checks(check_flag);
    opt.depth = depth;
    opt.cycle_cap = cycle_cap;
    opt.input_path = input_path;
    ck::Report report;
    try {
      report = ck::analyze(input, opt);
    } catch (const ck::InvalidArgumentError& e) {
      return fail(e.what());
    }
    if (json)
      std::cout << ck::report_json(report).dump(2) << "\n";
    else
      std::cout << ck::report_text(report);
    return report.any_supported ? 0 : 2;
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}
