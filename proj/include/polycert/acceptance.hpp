// The acceptance suite: eight end-to-end checks over the whole library, each
// reported as one pass/fail line plus a JSON report.
#pragma once

#include <string>
#include <vector>

#include "polycert/json_io.hpp"

namespace polycert {

struct AcceptanceOptions {
  u64 seed = 20240601;
  // Directory of stored Fiat-Shamir transcripts that criterion 8 re-verifies.
  // Empty skips the stored set.
  std::string transcript_dir;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;               // one line
  std::vector<std::string> details;  // per-case lines, printed with --verbose
  Json report;
  double seconds = 0;
};

inline constexpr int kCriteria = 8;

// Throws std::out_of_range for ids outside 1..kCriteria.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts);

// "[PASS] C3 worked example: ..." style line.
std::string format_line(const CriterionResult& r);

}  // namespace polycert
