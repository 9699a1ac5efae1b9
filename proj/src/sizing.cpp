#include "pvsynth/sizing.hpp"

#include <cmath>

#include "pvsynth/errors.hpp"

namespace pvsynth {

namespace {

void check(bool ok, const char* field, const char* message) {
  if (!ok) throw ValidationError("instance", field, message);
}

bool positive(double v) { return std::isfinite(v) && v > 0; }

}  // namespace

std::string_view to_string(Requirement r) noexcept {
  switch (r) {
    case Requirement::series_window: return "series_window";
    case Requirement::battery_voltage: return "battery_voltage";
    case Requirement::controller_voltage: return "controller_voltage";
    case Requirement::controller_current: return "controller_current";
    case Requirement::inverter_dc_voltage: return "inverter_dc_voltage";
    case Requirement::inverter_ac_voltage: return "inverter_ac_voltage";
    case Requirement::inverter_demand: return "inverter_demand";
    case Requirement::inverter_surge: return "inverter_surge";
  }
  return "unknown";
}

std::vector<std::string> validate_instance(const SizingInstance& in) {
  const auto& l = in.load;
  check(positive(l.e_consumption), "load.e_consumption", "must be > 0");
  check(positive(l.demand), "load.demand", "must be > 0");
  check(std::isfinite(l.p_surge) && l.p_surge >= l.demand, "load.p_surge", "must be >= demand");
  check(positive(l.v_ac), "load.v_ac", "must be > 0");

  const auto& s = in.site;
  check(positive(s.irradiance), "site.irradiance", "must be > 0");
  check(positive(s.g), "site.g", "must be > 0");
  check(positive(s.g_ref), "site.g_ref", "must be > 0");
  check(std::isfinite(s.t_cell), "site.t_cell", "must be finite");

  const auto& d = in.design;
  check(d.v_system == 12 || d.v_system == 24 || d.v_system == 48, "design.v_system", "must be 12, 24 or 48");
  check(std::isfinite(d.max_dod) && d.max_dod > 0 && d.max_dod <= 1, "design.max_dod", "must lie in (0, 1]");
  check(std::isfinite(d.dod) && d.dod > 0 && d.dod <= d.max_dod, "design.dod", "must lie in (0, max_dod]");
  check(positive(d.autonomy_hours), "design.autonomy_hours", "must be > 0");

  std::vector<std::string> warnings;
  if (d.autonomy_hours < 6 || d.autonomy_hours > 48)
    warnings.push_back("design.autonomy_hours outside the usual 6..48 h band");
  return warnings;
}

std::int64_t ceil_count(double x) { return static_cast<std::int64_t>(std::ceil(x - kRoundingNudge)); }
std::int64_t floor_count(double x) { return static_cast<std::int64_t>(std::floor(x + kRoundingNudge)); }

double corrected_energy(double e_consumption, double eta_b, double eta_c, double eta_i) {
  if (!(eta_b > 0) || !(eta_c > 0) || !(eta_i > 0)) throw DomainError("efficiencies must be > 0");
  if (!(e_consumption >= 0)) throw DomainError("energy consumption must be >= 0");
  return e_consumption / (eta_b * eta_c * eta_i);
}

double panel_energy(double irradiance, double area, double eta_p) {
  if (!(irradiance >= 0) || !(area >= 0) || !(eta_p >= 0)) throw DomainError("panel energy inputs must be >= 0");
  return irradiance * area * eta_p * 1000.0;
}

std::int64_t min_total_panels(double e_corrected, double e_p) {
  if (!(e_p > 0)) throw DomainError("panel energy must be > 0");
  return ceil_count(e_corrected / e_p);
}

std::optional<std::int64_t> series_panel_count(const ControllerSpec& controller, const PvPanelSpec& panel) {
  const std::int64_t lo = std::max<std::int64_t>(1, ceil_count(controller.v_mppt_min / panel.v_mp_temp_max));
  const std::int64_t hi = floor_count(controller.v_mppt_max / panel.v_mp_temp_min);
  if (lo > hi) return std::nullopt;
  return lo;
}

std::int64_t parallel_panel_count(std::int64_t n_tp_min, std::int64_t n_ps) {
  if (n_ps < 1) throw DomainError("series count must be >= 1");
  return (n_tp_min + n_ps - 1) / n_ps;
}

double battery_bank_capacity(double e_corrected, double autonomy_hours, double v_system, double dod) {
  if (!(v_system > 0)) throw DomainError("system voltage must be > 0");
  if (!(dod > 0) || dod > 1) throw DomainError("depth of discharge must lie in (0, 1]");
  return e_corrected * (autonomy_hours / 24.0) / (v_system * dod);
}

std::optional<BankPlan> battery_counts(double c_bank, const BatterySpec& battery, double v_system) {
  const std::int64_t n_bs = std::llround(v_system / battery.v_bat);
  if (n_bs < 1 || static_cast<double>(n_bs) * battery.v_bat != v_system) return std::nullopt;
  const std::int64_t n_bp = ceil_count(c_bank / battery.capacity);
  return BankPlan{n_bs, n_bp, n_bs * n_bp, c_bank};
}

double ambient_short_circuit_current(const PvPanelSpec& panel, const SiteParams& site) {
  if (!(site.g_ref > 0)) throw DomainError("reference irradiance must be > 0");
  const double i = (site.g / site.g_ref) * (panel.i_sc_ref + panel.mu_i * (site.t_cell - 25.0));
  if (!(i > 0)) throw DomainError("non-physical short-circuit current for panel '" + panel.id + "'");
  return i;
}

std::optional<Infeasible> check_controller(const ControllerSpec& controller, double i_sc_amb,
                                           std::int64_t n_pp, double v_system) {
  if (controller.v_c != v_system)
    return Infeasible{Requirement::controller_voltage, std::abs(controller.v_c - v_system)};
  const double i_c_min = i_sc_amb * static_cast<double>(n_pp);
  if (!(controller.i_c >= i_c_min)) return Infeasible{Requirement::controller_current, i_c_min - controller.i_c};
  return std::nullopt;
}

std::optional<Infeasible> check_inverter(const InverterSpec& inverter, const LoadSpec& load, double v_system) {
  if (inverter.v_in_dc != v_system)
    return Infeasible{Requirement::inverter_dc_voltage, std::abs(inverter.v_in_dc - v_system)};
  if (inverter.v_out_ac != load.v_ac)
    return Infeasible{Requirement::inverter_ac_voltage, std::abs(inverter.v_out_ac - load.v_ac)};
  if (!(load.demand <= inverter.p_ac_ref))
    return Infeasible{Requirement::inverter_demand, load.demand - inverter.p_ac_ref};
  if (!(load.p_surge <= inverter.max_ac_ref))
    return Infeasible{Requirement::inverter_surge, load.p_surge - inverter.max_ac_ref};
  return std::nullopt;
}

SizingOutcome size_candidate(const SizingInstance& in, const PvPanelSpec& panel, const BatterySpec& battery,
                             const ControllerSpec& controller, const InverterSpec& inverter) {
  const double v_system = in.design.v_system;

  const double e_corrected = corrected_energy(in.load.e_consumption, battery.eta_b, controller.eta_c, inverter.eta_i);
  const double e_p = panel_energy(in.site.irradiance, panel.area, panel.eta_p);
  const std::int64_t n_tp_min = min_total_panels(e_corrected, e_p);

  const auto n_ps = series_panel_count(controller, panel);
  if (!n_ps) return Infeasible{Requirement::series_window, 0};
  const std::int64_t n_pp = parallel_panel_count(n_tp_min, *n_ps);

  const double c_bank = battery_bank_capacity(e_corrected, in.design.autonomy_hours, v_system, in.design.dod);
  const auto bank = battery_counts(c_bank, battery, v_system);
  if (!bank) return Infeasible{Requirement::battery_voltage, 0};

  if (controller.v_c != v_system)
    return Infeasible{Requirement::controller_voltage, std::abs(controller.v_c - v_system)};
  const double i_sc_amb = ambient_short_circuit_current(panel, in.site);
  const double i_c_min = i_sc_amb * static_cast<double>(n_pp);
  if (auto fail = check_controller(controller, i_sc_amb, n_pp, v_system)) return *fail;
  if (auto fail = check_inverter(inverter, in.load, v_system)) return *fail;

  FeasibleConfig cfg;
  cfg.panel = panel.id;
  cfg.battery = battery.id;
  cfg.controller = controller.id;
  cfg.inverter = inverter.id;
  cfg.array = ArrayPlan{*n_ps, n_pp, *n_ps * n_pp, static_cast<double>(n_tp_min) * panel.p_max_ref};
  cfg.bank = *bank;
  cfg.e_corrected = e_corrected;
  cfg.e_p = e_p;
  cfg.i_sc_amb = i_sc_amb;
  cfg.i_c_min = i_c_min;
  return cfg;
}

}  // namespace pvsynth
