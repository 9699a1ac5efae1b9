#include "pvsynth/runner.hpp"

#include <fstream>
#include <ostream>

#include "pvsynth/errors.hpp"
#include "pvsynth/kernels.hpp"
#include "pvsynth/scenario.hpp"
#include "pvsynth/verifier.hpp"

namespace pvsynth {

namespace {

Money parse_flag_money(const std::string& text, const char* flag) {
  try {
    return Money::parse(text);
  } catch (const DomainError&) {
    throw SchemaError(flag, "expected dollars.cents, got '" + text + "'");
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << text;
  if (!f) throw IoError("write failed for '" + path + "'");
}

RunStats run_stats(const SynthesisConfig& config, const SynthesisStats& s) {
  RunStats st;
  st.strategy = std::string(to_string(config.strategy));
  st.cost_step = config.cost_step;
  st.workers = config.workers;
  st.isa = std::string(kernels::to_string(kernels::active().isa));
  st.iterations = s.iterations;
  st.candidates_examined = s.candidates_examined;
  st.wall_time_ms = std::chrono::duration<double, std::milli>(s.wall_time).count();
  return st;
}

}  // namespace

Report load_report_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open report file '" + path + "'");
  try {
    return report_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ":/", std::string("malformed JSON: ") + e.what());
  } catch (const SchemaError& e) {
    throw SchemaError(path + ":" + e.where(), e.message());
  }
}

void write_report_file(const Report& report, const std::string& path) {
  write_text_file(path, to_json(report).dump(2) + "\n");
}

RunOutcome run_scenario(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  RunOutcome result;
  try {
    Scenario sc = load_scenario_file(opt.scenario_path);
    if (opt.catalog_path) sc.catalog_path = *opt.catalog_path;
    if (opt.strategy) sc.synthesis.strategy = *opt.strategy;
    if (opt.step) sc.synthesis.cost_step = parse_flag_money(*opt.step, "--step");
    if (opt.max_cost) sc.synthesis.max_cost = parse_flag_money(*opt.max_cost, "--max-cost");
    if (opt.workers) sc.synthesis.workers = *opt.workers;
    validate_synthesis_config(sc.synthesis);
    for (const auto& w : sc.warnings) err << opt.scenario_path << ": warning: " << w << "\n";

    const EquipmentCatalog catalog = load_catalog_file(sc.catalog_path);

    Report report;
    Money verifier_bound = sc.synthesis.max_cost;
    try {
      const SynthesisResult r = cegis_synthesize(sc.instance, catalog, sc.cost_model, sc.synthesis);
      report = make_report(sc.label, r, catalog);
      if (r.sat()) {
        verifier_bound = r.hint_cost_at_stop;
        result.exit_code = kExitSat;
      } else {
        report.replay_feasible = replay_feasible_count(sc.instance, catalog);
        result.exit_code = kExitUnsat;
      }
      if (opt.with_stats) report.stats = run_stats(sc.synthesis, r.stats);
    } catch (const BoundExhausted& e) {
      report = make_bound_exhausted_report(sc.label, e, catalog);
      if (opt.with_stats) report.stats = run_stats(sc.synthesis, e.stats());
      result.exit_code = kExitBoundExhausted;
    }

    out << render_text(report);
    if (opt.json_path) write_report_file(report, *opt.json_path);
    if (opt.verifier_path)
      write_text_file(*opt.verifier_path,
                      emit_verification_program(sc.instance, catalog, sc.cost_model, verifier_bound));
    result.report = std::move(report);
  } catch (const ValidationError& e) {
    err << opt.scenario_path << ": invalid value: " << e.what() << "\n";
    result.exit_code = kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    result.exit_code = kExitInputError;
  }
  return result;
}

int compare_runs(const std::string& path_a, const std::string& path_b, std::ostream& out, std::ostream& err) {
  try {
    const ReportDiff diff = compare_reports(load_report_file(path_a), load_report_file(path_b));
    if (diff.identical()) {
      out << "identical\n";
      return kExitSat;
    }
    for (const auto& line : diff.lines) out << line << "\n";
    return kExitDiffer;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace pvsynth
