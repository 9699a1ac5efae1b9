#include "pvsynth/cost.hpp"

#include <algorithm>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "pvsynth/errors.hpp"

namespace pvsynth {

using boost::multiprecision::cpp_int;
using nlohmann::json;

namespace {

cpp_int ipow(std::int64_t base, int exp) {
  cpp_int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

Money round_half_up(const cpp_int& num, const cpp_int& den) {
  const cpp_int q = (2 * num + den) / (2 * den);
  if (q > std::numeric_limits<std::int64_t>::max()) throw DomainError("money overflow");
  return Money::from_cents(q.convert_to<std::int64_t>());
}

void fail(const char* field, const std::string& msg) { throw ValidationError("cost_model", field, msg); }

std::vector<int> read_years(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array()) throw SchemaError(std::string("/cost_model/") + key, "expected an array of years");
  std::vector<int> years;
  for (const auto& y : v) {
    if (!y.is_number_integer()) throw SchemaError(std::string("/cost_model/") + key, "expected integer years");
    years.push_back(y.get<int>());
  }
  return years;
}

Ratio read_ratio(const json& v, const char* key) {
  try {
    if (v.is_string()) return Ratio::parse(v.get<std::string>());
    if (v.is_number()) return Ratio::from_double(v.get<double>());
  } catch (const DomainError& e) {
    throw SchemaError(std::string("/cost_model/") + key, e.what());
  }
  throw SchemaError(std::string("/cost_model/") + key, "expected a decimal number");
}

}  // namespace

std::vector<int> replacement_schedule(int life, int horizon) {
  std::vector<int> years;
  if (life <= 0) return years;
  for (int y = life; y < horizon; y += life) years.push_back(y);
  return years;
}

CostModel CostModel::derived() {
  CostModel m;
  m.battery_replacement_years = replacement_schedule(m.battery_life_years, m.horizon_years);
  m.electronics_replacement_years = replacement_schedule(m.electronics_life_years, m.horizon_years);
  return m;
}

CostModel CostModel::three_replacements() {
  CostModel m = derived();
  m.battery_replacement_years = {5, 10, 15};
  return m;
}

CostModel CostModel::purchase_only() {
  CostModel m = derived();
  m.install_fraction = Ratio(0, 1);
  m.om_annual = Money{};
  m.battery_replacement_years.clear();
  m.electronics_replacement_years.clear();
  return m;
}

void validate_cost_model(const CostModel& m) {
  if (m.horizon_years < 1) fail("horizon_years", "must be >= 1");
  if (m.discount_rate.num() <= 0 || m.discount_rate.num() >= m.discount_rate.den())
    fail("discount_rate", "must lie in (0, 1)");
  if (m.install_fraction.num() > m.install_fraction.den()) fail("install_fraction", "must lie in [0, 1]");
  if (m.battery_life_years < 1) fail("battery_life_years", "must be >= 1");
  if (m.electronics_life_years < 1) fail("electronics_life_years", "must be >= 1");
  for (int y : m.battery_replacement_years)
    if (y <= 0 || y >= m.horizon_years) fail("battery_replacement_years", "years must lie in (0, horizon_years)");
  for (int y : m.electronics_replacement_years)
    if (y <= 0 || y >= m.horizon_years)
      fail("electronics_replacement_years", "years must lie in (0, horizon_years)");
}

CostModel cost_model_from_json(const json& j, CostModel m) {
  if (j.is_null()) return m;
  if (!j.is_object()) throw SchemaError("/cost_model", "expected an object");
  static const char* const known[] = {"profile", "horizon_years", "discount_rate", "install_fraction", "om_annual",
                                      "battery_life_years", "electronics_life_years", "battery_replacement_years",
                                      "electronics_replacement_years"};
  for (const auto& [key, _] : j.items())
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
      throw SchemaError("/cost_model/" + key, "unknown field");

  auto integer = [&](const char* key, int& out) {
    if (!j.contains(key)) return false;
    if (!j.at(key).is_number_integer()) throw SchemaError(std::string("/cost_model/") + key, "expected an integer");
    out = j.at(key).get<int>();
    return true;
  };

  if (j.contains("profile")) {
    const auto& p = j.at("profile");
    if (p == "derived") m = CostModel::derived();
    else if (p == "three-replacements") m = CostModel::three_replacements();
    else if (p == "purchase-only") m = CostModel::purchase_only();
    else throw SchemaError("/cost_model/profile", "expected \"derived\", \"three-replacements\" or \"purchase-only\"");
  }
  const bool horizon = integer("horizon_years", m.horizon_years);
  const bool bat_life = integer("battery_life_years", m.battery_life_years);
  const bool elec_life = integer("electronics_life_years", m.electronics_life_years);
  if (j.contains("discount_rate")) m.discount_rate = read_ratio(j.at("discount_rate"), "discount_rate");
  if (j.contains("install_fraction")) m.install_fraction = read_ratio(j.at("install_fraction"), "install_fraction");
  if (j.contains("om_annual")) {
    const auto& v = j.at("om_annual");
    if (!v.is_string()) throw SchemaError("/cost_model/om_annual", "expected a \"dollars.cents\" string");
    try {
      m.om_annual = Money::parse(v.get<std::string>());
    } catch (const DomainError& e) {
      throw SchemaError("/cost_model/om_annual", e.what());
    }
  }
  if (j.contains("battery_replacement_years"))
    m.battery_replacement_years = read_years(j, "battery_replacement_years");
  else if (bat_life || horizon)
    m.battery_replacement_years = replacement_schedule(m.battery_life_years, m.horizon_years);
  if (j.contains("electronics_replacement_years"))
    m.electronics_replacement_years = read_years(j, "electronics_replacement_years");
  else if (elec_life || horizon)
    m.electronics_replacement_years = replacement_schedule(m.electronics_life_years, m.horizon_years);

  validate_cost_model(m);
  return m;
}

json to_json(const CostModel& m) {
  return {{"horizon_years", m.horizon_years},
          {"discount_rate", m.discount_rate.to_string()},
          {"install_fraction", m.install_fraction.to_string()},
          {"om_annual", m.om_annual.to_string()},
          {"battery_life_years", m.battery_life_years},
          {"electronics_life_years", m.electronics_life_years},
          {"battery_replacement_years", m.battery_replacement_years},
          {"electronics_replacement_years", m.electronics_replacement_years}};
}

Money present_worth(Money cost, int year, const Ratio& rate) {
  if (year < 0) throw DomainError("year must be >= 0");
  // (1 + n/d)^-y = d^y / (d + n)^y
  return round_half_up(cpp_int(cost.cents()) * ipow(rate.den(), year), ipow(rate.den() + rate.num(), year));
}

Money present_worth_annuity(Money annual, int years, const Ratio& rate) {
  if (years < 1) throw DomainError("annuity needs at least one year");
  if (rate.num() <= 0) throw DomainError("annuity needs a positive rate");
  // annual * d((d+n)^y - d^y) / (n (d+n)^y)
  const cpp_int grown = ipow(rate.den() + rate.num(), years);
  const cpp_int base = ipow(rate.den(), years);
  return round_half_up(cpp_int(annual.cents()) * rate.den() * (grown - base), cpp_int(rate.num()) * grown);
}

LifeCycleCost::LifeCycleCost(CostModel model) : model_(std::move(model)) {
  validate_cost_model(model_);
  om_present_worth_ = present_worth_annuity(model_.om_annual, model_.horizon_years, model_.discount_rate);
}

CostBreakdown LifeCycleCost::evaluate(const FeasibleConfig& config, const PvPanelSpec& panel,
                                      const BatterySpec& battery, const ControllerSpec& controller,
                                      const InverterSpec& inverter) const {
  CostBreakdown b;
  b.c_pv = panel.unit_cost * config.array.n_tp;
  b.c_bat = battery.unit_cost * config.bank.n_b_total;
  b.c_charger = controller.unit_cost;
  b.c_inv = inverter.unit_cost;
  b.c_installation = scale(b.c_pv + b.c_bat + b.c_charger + b.c_inv, model_.install_fraction);
  for (int year : model_.battery_replacement_years)
    b.c_batrep += present_worth(b.c_bat, year, model_.discount_rate);
  b.c_pw_om = om_present_worth_;
  for (int year : model_.electronics_replacement_years)
    b.c_pw_om += present_worth(b.c_charger + b.c_inv, year, model_.discount_rate);
  b.total = b.c_pv + b.c_bat + b.c_charger + b.c_inv + b.c_installation + b.c_batrep + b.c_pw_om;
  return b;
}

CostBreakdown lcc(const FeasibleConfig& config, const EquipmentCatalog& catalog, const CostModel& model) {
  return LifeCycleCost(model).evaluate(config, catalog.panel(config.panel), catalog.battery(config.battery),
                                        catalog.controller(config.controller), catalog.inverter(config.inverter));
}

}  // namespace pvsynth
