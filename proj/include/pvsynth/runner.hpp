#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "pvsynth/report.hpp"

namespace pvsynth {

enum ExitCode : int { kExitSat = 0, kExitInputError = 1, kExitUnsat = 2, kExitBoundExhausted = 3, kExitDiffer = 4 };

struct RunOptions {
  std::string scenario_path;
  std::optional<std::string> catalog_path;  // overrides the scenario's
  std::optional<Strategy> strategy;
  std::optional<std::string> step;      // "dollars.cents"
  std::optional<std::string> max_cost;  // "dollars.cents"
  std::optional<unsigned> workers;
  std::optional<std::string> json_path;
  std::optional<std::string> verifier_path;
  bool with_stats = false;
};

struct RunOutcome {
  int exit_code = kExitInputError;
  std::optional<Report> report;
};

/// Loads the scenario, runs the search and writes the text report to `out`.
/// Input errors go to `err` with file/field provenance.
RunOutcome run_scenario(const RunOptions& options, std::ostream& out, std::ostream& err);

/// Compares two report files; prints the diff. Exit 0 iff identical.
int compare_runs(const std::string& path_a, const std::string& path_b, std::ostream& out, std::ostream& err);

Report load_report_file(const std::string& path);
void write_report_file(const Report& report, const std::string& path);

}  // namespace pvsynth
