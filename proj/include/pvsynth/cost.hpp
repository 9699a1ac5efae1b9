#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "pvsynth/catalog.hpp"
#include "pvsynth/money.hpp"
#include "pvsynth/sizing.hpp"

namespace pvsynth {

struct CostModel {
  int horizon_years = 20;
  Ratio discount_rate{1, 10};
  Ratio install_fraction{1, 20};
  Money om_annual = Money::from_cents(28964);
  int battery_life_years = 4;
  int electronics_life_years = 10;  // inverter and controller
  std::vector<int> battery_replacement_years{4, 8, 12, 16};
  std::vector<int> electronics_replacement_years{10};

  /// Replacement schedules derived from component lives: every multiple of
  /// the life strictly inside the horizon.
  static CostModel derived();
  /// Three battery-bank replacements at years 5, 10 and 15.
  static CostModel three_replacements();
  /// No installation share, no O&M, no replacements.
  static CostModel purchase_only();

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

/// Multiples of `life` strictly between 0 and `horizon`.
std::vector<int> replacement_schedule(int life, int horizon);

/// Throws ValidationError.
void validate_cost_model(const CostModel& model);

/// Applies the keys present in `overrides` on top of `base`. A changed life
/// re-derives its schedule unless the schedule is given explicitly.
CostModel cost_model_from_json(const nlohmann::json& overrides, CostModel base = CostModel::derived());
nlohmann::json to_json(const CostModel& model);

struct CostBreakdown {
  Money c_pv;
  Money c_bat;
  Money c_charger;
  Money c_inv;
  Money c_installation;
  Money c_batrep;
  Money c_pw_om;
  Money total;
  friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

/// cost / (1 + rate)^year, rounded half-up to the cent.
Money present_worth(Money cost, int year, const Ratio& rate);
/// annual * (1 - (1 + rate)^-years) / rate, rounded half-up to the cent.
Money present_worth_annuity(Money annual, int years, const Ratio& rate);

/// Life-cycle cost evaluator with the discount factors of one model precomputed.
class LifeCycleCost {
 public:
  explicit LifeCycleCost(CostModel model);

  const CostModel& model() const noexcept { return model_; }

  CostBreakdown evaluate(const FeasibleConfig& config, const PvPanelSpec& panel, const BatterySpec& battery,
                         const ControllerSpec& controller, const InverterSpec& inverter) const;

 private:
  CostModel model_;
  Money om_present_worth_;
};

/// Throws UnknownIdError if `config` names equipment absent from `catalog`.
CostBreakdown lcc(const FeasibleConfig& config, const EquipmentCatalog& catalog, const CostModel& model);

}  // namespace pvsynth
