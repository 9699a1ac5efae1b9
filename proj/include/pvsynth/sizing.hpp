#pragma once

// Critical-period sizing chain: maps one equipment selection to a quantified
// configuration or to the first requirement it breaks. All functions are pure.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pvsynth/catalog.hpp"

namespace pvsynth {

struct LoadSpec {
  double e_consumption = 0;  // Wh/day
  double demand = 0;         // continuous AC, W
  double p_surge = 0;        // W
  double v_ac = 127;         // V
  friend bool operator==(const LoadSpec&, const LoadSpec&) = default;
};

struct SiteParams {
  double irradiance = 0;  // kWh/m²/day
  double g = 1000;        // W/m², design point for the current correction
  double g_ref = 1000;    // W/m²
  double t_cell = 25;     // °C
  friend bool operator==(const SiteParams&, const SiteParams&) = default;
};

struct DesignParams {
  double v_system = 24;  // one of 12, 24, 48
  double dod = 0.25;
  double autonomy_hours = 48;
  double max_dod = 0.25;  // profile limit on dod; raise it to allow deeper discharge
  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

struct SizingInstance {
  LoadSpec load;
  SiteParams site;
  DesignParams design;
  friend bool operator==(const SizingInstance&, const SizingInstance&) = default;
};

/// Throws ValidationError on a broken invariant; returns soft warnings
/// (autonomy outside 6..48 h).
std::vector<std::string> validate_instance(const SizingInstance& instance);

struct ArrayPlan {
  std::int64_t n_ps = 0;  // panels per string
  std::int64_t n_pp = 0;  // parallel strings
  std::int64_t n_tp = 0;  // n_ps * n_pp
  double p_total = 0;     // W
  friend bool operator==(const ArrayPlan&, const ArrayPlan&) = default;
};

struct BankPlan {
  std::int64_t n_bs = 0;
  std::int64_t n_bp = 0;
  std::int64_t n_b_total = 0;
  double c_bank = 0;  // Ah
  friend bool operator==(const BankPlan&, const BankPlan&) = default;
};

struct FeasibleConfig {
  std::string panel;
  std::string battery;
  std::string controller;
  std::string inverter;
  ArrayPlan array;
  BankPlan bank;
  double e_corrected = 0;  // Wh/day
  double e_p = 0;          // Wh/day per panel
  double i_sc_amb = 0;     // A
  double i_c_min = 0;      // A
  friend bool operator==(const FeasibleConfig&, const FeasibleConfig&) = default;
};

/// Requirements in the order the chain evaluates them.
enum class Requirement : std::uint8_t {
  series_window,
  battery_voltage,
  controller_voltage,
  controller_current,
  inverter_dc_voltage,
  inverter_ac_voltage,
  inverter_demand,
  inverter_surge,
};

std::string_view to_string(Requirement r) noexcept;

struct Infeasible {
  Requirement reason;
  /// How far the broken requirement is from holding, in its own unit
  /// (A for current, W for power, V for voltages); 0 for the series window.
  double margin = 0;
  friend bool operator==(const Infeasible&, const Infeasible&) = default;
};

using SizingOutcome = std::variant<FeasibleConfig, Infeasible>;

/// Counts carry a 1e-9 absolute nudge before rounding so that 3.0000000001
/// stays 3.
inline constexpr double kRoundingNudge = 1e-9;
std::int64_t ceil_count(double x);
std::int64_t floor_count(double x);

double corrected_energy(double e_consumption, double eta_b, double eta_c, double eta_i);
double panel_energy(double irradiance, double area, double eta_p);
std::int64_t min_total_panels(double e_corrected, double e_p);
/// Smallest integer inside the MPPT-derived series interval, or nullopt if empty.
std::optional<std::int64_t> series_panel_count(const ControllerSpec& controller, const PvPanelSpec& panel);
std::int64_t parallel_panel_count(std::int64_t n_tp_min, std::int64_t n_ps);
double battery_bank_capacity(double e_corrected, double autonomy_hours, double v_system, double dod);
/// nullopt when v_bat does not divide v_system exactly.
std::optional<BankPlan> battery_counts(double c_bank, const BatterySpec& battery, double v_system);
double ambient_short_circuit_current(const PvPanelSpec& panel, const SiteParams& site);

// These two return the broken requirement, or nullopt when every check passes.
std::optional<Infeasible> check_controller(const ControllerSpec& controller, double i_sc_amb,
                                           std::int64_t n_pp, double v_system);
std::optional<Infeasible> check_inverter(const InverterSpec& inverter, const LoadSpec& load, double v_system);

SizingOutcome size_candidate(const SizingInstance& instance, const PvPanelSpec& panel,
                             const BatterySpec& battery, const ControllerSpec& controller,
                             const InverterSpec& inverter);

}  // namespace pvsynth
