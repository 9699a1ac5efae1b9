#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "pvsynth/money.hpp"

namespace pvsynth {

struct PvPanelSpec {
  std::string id;
  double p_max_ref = 0;      // W
  double v_mp_temp_min = 0;  // V at minimum operating temperature
  double v_mp_temp_max = 0;  // V at maximum operating temperature
  double i_sc_ref = 0;       // A
  double mu_i = 0;           // A/°C
  double area = 0;           // m²
  double eta_p = 0;
  Money unit_cost;
  friend bool operator==(const PvPanelSpec&, const PvPanelSpec&) = default;
};

struct BatterySpec {
  std::string id;
  double capacity = 0;  // Ah per unit
  double v_bat = 0;     // V
  double eta_b = 0;
  Money unit_cost;
  friend bool operator==(const BatterySpec&, const BatterySpec&) = default;
};

struct ControllerSpec {
  std::string id;
  double v_c = 0;  // system-side nominal voltage
  double i_c = 0;  // maximum input current
  double v_mppt_min = 0;
  double v_mppt_max = 0;
  double eta_c = 0;
  Money unit_cost;
  friend bool operator==(const ControllerSpec&, const ControllerSpec&) = default;
};

struct InverterSpec {
  std::string id;
  double v_in_dc = 0;
  double v_out_ac = 0;
  double p_ac_ref = 0;    // continuous, W
  double max_ac_ref = 0;  // surge, W
  double eta_i = 0;
  Money unit_cost;
  friend bool operator==(const InverterSpec&, const InverterSpec&) = default;
};

/// Immutable after load; list order is the canonical tie-breaking order.
struct EquipmentCatalog {
  std::vector<PvPanelSpec> panels;
  std::vector<BatterySpec> batteries;
  std::vector<ControllerSpec> controllers;
  std::vector<InverterSpec> inverters;

  std::size_t size() const noexcept {
    return panels.size() + batteries.size() + controllers.size() + inverters.size();
  }
  std::size_t combinations() const noexcept {
    return panels.size() * batteries.size() * controllers.size() * inverters.size();
  }

  const PvPanelSpec& panel(const std::string& id) const;
  const BatterySpec& battery(const std::string& id) const;
  const ControllerSpec& controller(const std::string& id) const;
  const InverterSpec& inverter(const std::string& id) const;

  friend bool operator==(const EquipmentCatalog&, const EquipmentCatalog&) = default;
};

struct Violation {
  std::string field;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

using AnySpec = std::variant<PvPanelSpec, BatterySpec, ControllerSpec, InverterSpec>;

/// Every violated invariant of the record; empty means valid.
std::vector<Violation> validate_spec(const PvPanelSpec& spec);
std::vector<Violation> validate_spec(const BatterySpec& spec);
std::vector<Violation> validate_spec(const ControllerSpec& spec);
std::vector<Violation> validate_spec(const InverterSpec& spec);
std::vector<Violation> validate_spec(const AnySpec& spec);

/// Parses and validates a catalog document. Throws SchemaError or ValidationError.
EquipmentCatalog load_catalog(std::istream& source);
EquipmentCatalog load_catalog_json(const nlohmann::json& doc);
EquipmentCatalog load_catalog_file(const std::string& path);

nlohmann::json to_json(const EquipmentCatalog& catalog);

}  // namespace pvsynth
