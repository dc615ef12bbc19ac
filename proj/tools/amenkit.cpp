// Command line front end.  Every subcommand prints one JSON document:
//   {"schema": 1, "report": {...}, "timing": {"wall_ms": ...}}
// The "report" subtree is deterministic for a fixed input; timing is not.
// Exit codes: 0 completed, 2 input or usage problem, 3 resource cap hit,
// 1 anything else.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "amenkit/errors.hpp"
#include "amenkit/ratio.hpp"
#include "amenkit/report.hpp"
#include "amenkit/version.hpp"

namespace {

std::vector<std::uint32_t> parse_index_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::string tok;
  std::istringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      throw amenkit::parse_error("bad generator index '" + tok + "' in '" + text + "'");
    }
    out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
  }
  if (out.empty()) throw amenkit::parse_error("empty generator index list");
  return out;
}

void emit(const amenkit::json& report, std::uint64_t wall_ms, const std::string& output_path) {
  amenkit::json doc;
  doc["schema"] = amenkit::report_schema;
  doc["report"] = report;
  amenkit::json timing;
  timing["wall_ms"] = wall_ms;
  doc["timing"] = timing;
  const std::string text = doc.dump(2) + "\n";
  if (output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output_path);
    if (!out) throw amenkit::parse_error("cannot open output file: " + output_path);
    out << text;
  }
}

int run(int argc, char** argv) {
  CLI::App app{"exact amenability and geometry toolkit for finitely generated semigroups"};
  app.set_version_flag("--version", std::string(amenkit::tool_version));
  app.require_subcommand(1);
  app.fallthrough();

  std::string output_path;
  app.add_option("-o,--output", output_path, "write the JSON document to this file");

  auto* analyze = app.add_subcommand(
      "analyze", "decide reversibility, Klawe, near cancellativity, SFC/FC and amenability");
  std::string analyze_positional, analyze_universe;
  analyze->add_option("input", analyze_positional,
                      "universe spec: free:K, freecomm:K, bicyclic, table:PATH, "
                      "transformations:PATH");
  analyze->add_option("--universe", analyze_universe, "universe spec (alternative to positional)");

  auto* folner = app.add_subcommand("folner", "search truncation balls for a Folner set");
  folner->set_help_flag("--help", "print help");
  std::string folner_universe, folner_eps, folner_h;
  std::uint32_t folner_rmax = 10;
  folner->add_option("--universe", folner_universe, "universe spec")->required();
  folner->add_option("--eps", folner_eps, "defect tolerance as p/q")->required();
  folner->add_option("--h", folner_h, "comma separated generator indices (default: all)");
  folner->add_option("--rmax", folner_rmax, "largest ball radius to try (default 10)");

  auto* growth = app.add_subcommand("growth", "tabulate ball sizes and classify growth");
  std::string growth_universe;
  std::uint32_t growth_n = 8;
  growth->add_option("--universe", growth_universe, "universe spec")->required();
  growth->add_option("--n", growth_n, "number of ball sizes to tabulate (default 8, minimum 6)");

  auto* iso = app.add_subcommand("isoperimetric", "exact isoperimetric number of a small digraph");
  std::string iso_path;
  iso->add_option("digraph", iso_path, "digraph file")->required();

  auto* qi = app.add_subcommand("qi", "verify a quasi-isometry between two digraphs");
  std::string qi_source, qi_target, qi_map, qi_lambda;
  qi->add_option("source", qi_source, "source digraph file")->required();
  qi->add_option("target", qi_target, "target digraph file")->required();
  qi->add_option("map", qi_map, "vertex map file (lines 'i j')")->required();
  qi->add_option("--lambda", qi_lambda, "distortion constant as p/q")->required();

  auto* corpus = app.add_subcommand("corpus", "cross-validate the deciders on every table");
  std::uint32_t corpus_order = 3, corpus_jobs = 1;
  corpus->add_option("--order", corpus_order, "semigroup order to enumerate")->required();
  corpus->add_option("--jobs", corpus_jobs, "worker count; partitioning is deterministic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  amenkit::json report;
  if (*analyze) {
    if (analyze_positional.empty() == analyze_universe.empty()) {
      throw amenkit::parse_error("analyze needs exactly one universe spec (positional or "
                                 "--universe)");
    }
    report = amenkit::cmd_analyze(analyze_positional.empty() ? analyze_universe
                                                             : analyze_positional);
  } else if (*folner) {
    const std::vector<std::uint32_t> h =
        folner_h.empty() ? std::vector<std::uint32_t>{} : parse_index_list(folner_h);
    report = amenkit::cmd_folner(folner_universe, amenkit::Ratio::parse(folner_eps), h,
                                 folner_rmax);
  } else if (*growth) {
    report = amenkit::cmd_growth(growth_universe, growth_n);
  } else if (*iso) {
    report = amenkit::cmd_isoperimetric(iso_path);
  } else if (*qi) {
    report = amenkit::cmd_qi(qi_source, qi_target, qi_map, amenkit::Ratio::parse(qi_lambda));
  } else {
    report = amenkit::cmd_corpus(corpus_order, corpus_jobs);
  }
  const auto stop = std::chrono::steady_clock::now();
  const auto wall_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count());

  emit(report, wall_ms, output_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const amenkit::parse_error& e) {
    std::cerr << "error: " << e.what();
    if (e.line != 0) std::cerr << " (line " << e.line << ")";
    std::cerr << "\n";
    return 2;
  } catch (const amenkit::resource_limit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
