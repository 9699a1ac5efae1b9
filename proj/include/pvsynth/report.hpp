#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pvsynth/catalog.hpp"
#include "pvsynth/cost.hpp"
#include "pvsynth/synthesis.hpp"

namespace pvsynth {

inline constexpr const char* kReportSchema = "pv-synth-report/1";

struct EquipmentLine {
  std::string role;  // panel, battery, controller, inverter
  std::string id;
  std::int64_t count = 0;
  std::string arrangement;  // "2S-4P"; the parallel part is dropped for a single string ("2S")
  std::string rating;       // "330W", "105Ah", "20A/100V", "1,200W/24V"
  friend bool operator==(const EquipmentLine&, const EquipmentLine&) = default;
};

/// Electrical quantities rounded to 0.01 in their units, as displayed.
struct ElectricalSummary {
  double e_corrected = 0;  // Wh/day
  double e_p = 0;          // Wh/day per panel
  double c_bank = 0;       // Ah
  double i_sc_amb = 0;     // A
  double i_c_min = 0;      // A
  friend bool operator==(const ElectricalSummary&, const ElectricalSummary&) = default;
};

/// Run-dependent numbers; never part of report comparisons.
struct RunStats {
  std::string strategy;
  Money cost_step;
  unsigned workers = 1;
  std::string isa;
  std::uint64_t iterations = 0;
  std::uint64_t candidates_examined = 0;
  double wall_time_ms = 0;
  friend bool operator==(const RunStats&, const RunStats&) = default;
};

struct Report {
  std::string label;
  std::string outcome;  // "sat", "unsat", "bound_exhausted"
  std::uint64_t quadruples = 0;
  std::uint64_t feasible_candidates = 0;
  std::optional<Money> hint_cost_at_stop;  // sat
  std::optional<Money> max_cost;           // bound_exhausted
  std::optional<std::uint64_t> replay_feasible;  // unsat certificate
  std::vector<EquipmentLine> equipment;
  std::optional<ElectricalSummary> electrical;
  std::optional<CostBreakdown> cost;
  std::optional<RunStats> stats;
  friend bool operator==(const Report&, const Report&) = default;
};

std::string arrangement(std::int64_t series, std::int64_t parallel);

Report make_report(const std::string& label, const SynthesisResult& result, const EquipmentCatalog& catalog);
Report make_bound_exhausted_report(const std::string& label, const BoundExhausted& error,
                                   const EquipmentCatalog& catalog);

nlohmann::json to_json(const Report& report);
/// Throws SchemaError.
Report report_from_json(const nlohmann::json& doc);
std::string render_text(const Report& report);

struct ReportDiff {
  std::vector<std::string> lines;
  bool identical() const noexcept { return lines.empty(); }
};

/// Field-by-field difference ignoring run statistics. Throws Error when the
/// labels differ.
ReportDiff compare_reports(const Report& a, const Report& b);

}  // namespace pvsynth
