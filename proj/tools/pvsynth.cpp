// pvsynth: optimal stand-alone PV sizing from equipment catalogs.
//
//   pvsynth --scenario data/scenarios/case1.json [--strategy bisection] [--step 0.01]
//           [--json report.json] [--emit-verifier case1.c] [--workers 4] [--stats]
//   pvsynth compare a.json b.json

#include <iostream>

#include <CLI11.hpp>

#include "pvsynth/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Optimal stand-alone PV system sizing by cost-bounded synthesis"};
  app.require_subcommand(0, 1);

  pvsynth::RunOptions opt;
  std::string strategy;
  std::string catalog;
  std::string step;
  std::string max_cost;
  std::string json_path;
  std::string verifier_path;
  unsigned workers = 1;

  app.add_option("--scenario", opt.scenario_path, "Scenario JSON file");
  auto* catalog_opt = app.add_option("--catalog", catalog, "Catalog JSON file (overrides the scenario's)");
  auto* strategy_opt = app.add_option("--strategy", strategy, "HintCost search: linear or bisection")
                           ->check(CLI::IsMember({"linear", "bisection"}));
  auto* step_opt = app.add_option("--step", step, "HintCost increment in dollars.cents (linear search)");
  auto* max_opt = app.add_option("--max-cost", max_cost, "Upper HintCost bound in dollars.cents");
  auto* json_opt = app.add_option("--json", json_path, "Write the JSON report here");
  auto* verifier_opt = app.add_option("--emit-verifier", verifier_path, "Write the verification program here");
  auto* workers_opt = app.add_option("--workers", workers, "Enumeration threads (0 = all hardware threads)");
  app.add_flag("--stats", opt.with_stats, "Include search statistics in the reports");

  auto* compare = app.add_subcommand("compare", "Diff two JSON reports of the same scenario");
  std::string report_a;
  std::string report_b;
  compare->add_option("report_a", report_a)->required();
  compare->add_option("report_b", report_b)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pvsynth::kExitInputError;
  }

  if (compare->parsed()) return pvsynth::compare_runs(report_a, report_b, std::cout, std::cerr);

  if (opt.scenario_path.empty()) {
    std::cerr << "error: --scenario is required\n" << app.help();
    return pvsynth::kExitInputError;
  }
  if (*catalog_opt) opt.catalog_path = catalog;
  if (*strategy_opt) opt.strategy = strategy == "linear" ? pvsynth::Strategy::linear : pvsynth::Strategy::bisection;
  if (*step_opt) opt.step = step;
  if (*max_opt) opt.max_cost = max_cost;
  if (*json_opt) opt.json_path = json_path;
  if (*verifier_opt) opt.verifier_path = verifier_path;
  if (*workers_opt) opt.workers = workers;

  return pvsynth::run_scenario(opt, std::cout, std::cerr).exit_code;
}
