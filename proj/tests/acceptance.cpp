// Acceptance runner: one pass/fail line per criterion. Exit status is nonzero
// when any selected criterion fails.
#include <CLI11.hpp>
#include <iostream>

#include "polycert/acceptance.hpp"

#ifndef POLYCERT_TRANSCRIPT_DIR
#define POLYCERT_TRANSCRIPT_DIR ""
#endif

int main(int argc, char** argv) {
  CLI::App app{"polycert acceptance suite"};
  std::vector<int> ids;
  bool verbose = false;
  std::string report_path;
  polycert::AcceptanceOptions opts;
  opts.transcript_dir = POLYCERT_TRANSCRIPT_DIR;
  app.add_option("-c,--criterion", ids, "Criteria to run (default: all)")->check(CLI::Range(1, polycert::kCriteria));
  app.add_flag("-v,--verbose", verbose, "Print per-case detail lines");
  app.add_option("--seed", opts.seed, "Base seed");
  app.add_option("--transcripts", opts.transcript_dir, "Directory of stored transcripts");
  app.add_option("--report", report_path, "Write the JSON reports here");
  CLI11_PARSE(app, argc, argv);

  if (ids.empty()) {
    for (int i = 1; i <= polycert::kCriteria; ++i) ids.push_back(i);
  }
  bool all = true;
  polycert::Json reports = polycert::Json::array();
  for (const int id : ids) {
    const polycert::CriterionResult r = polycert::run_criterion(id, opts);
    std::cout << polycert::format_line(r) << std::endl;
    if (verbose || !r.pass) {
      for (const auto& d : r.details) std::cout << "    " << d << '\n';
    }
    reports.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass}, {"summary", r.summary},
                       {"seconds", r.seconds}, {"report", r.report}});
    all = all && r.pass;
  }
  if (!report_path.empty()) polycert::write_file(report_path, reports.dump(2) + "\n");
  return all ? 0 : 1;
}
