#include "fixtures.hpp"

#include <cmath>

namespace fixtures {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}
// Two decimals, like catalog data.
double two(double v) { return std::round(v * 100) / 100; }
pvsynth::Money price(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return pvsynth::Money::from_cents(pick(rng, lo, hi));
}

}  // namespace

std::string data_path(const std::string& relative) { return std::string(PVSYNTH_DATA_DIR) + "/" + relative; }

std::string scenario_path(const std::string& name) { return data_path("scenarios/" + name + ".json"); }

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names{"case1", "case2", "case3", "case4", "case5", "case6", "case7"};
  return names;
}

Problem load(const std::string& name) {
  Problem p{pvsynth::load_scenario_file(scenario_path(name)), {}};
  p.catalog = pvsynth::load_catalog_file(p.scenario.catalog_path);
  return p;
}

pvsynth::PvPanelSpec random_panel(std::mt19937_64& rng, int tag) {
  pvsynth::PvPanelSpec p;
  p.id = "P" + std::to_string(tag);
  p.area = two(uniform(rng, 0.8, 2.0));
  p.eta_p = two(uniform(rng, 0.12, 0.22));
  p.p_max_ref = std::round(p.area * p.eta_p * 1000);
  p.v_mp_temp_min = two(uniform(rng, 18, 46));
  p.v_mp_temp_max = two(p.v_mp_temp_min * uniform(rng, 0.75, 0.9));
  p.i_sc_ref = two(uniform(rng, 5, 11));
  p.mu_i = pick(rng, 0, 6) * 0.001;
  p.unit_cost = price(rng, 5'000, 25'000);
  return p;
}

pvsynth::BatterySpec random_battery(std::mt19937_64& rng, int tag) {
  static const double volts[] = {6, 12, 12, 12, 24, 36};
  pvsynth::BatterySpec b;
  b.id = "B" + std::to_string(tag);
  b.capacity = static_cast<double>(pick(rng, 5, 25) * 10);
  b.v_bat = volts[pick(rng, 0, 5)];
  b.eta_b = two(uniform(rng, 0.8, 0.95));
  b.unit_cost = price(rng, 5'000, 40'000);
  return b;
}

pvsynth::ControllerSpec random_controller(std::mt19937_64& rng, int tag) {
  pvsynth::ControllerSpec c;
  c.id = "C" + std::to_string(tag);
  c.v_c = pick(rng, 0, 5) == 0 ? 12 : 24;
  c.i_c = static_cast<double>(pick(rng, 2, 12) * 5);
  c.v_mppt_min = static_cast<double>(pick(rng, 15, 40));
  c.v_mppt_max = c.v_mppt_min + static_cast<double>(pick(rng, 20, 120));
  c.eta_c = two(uniform(rng, 0.95, 0.99));
  c.unit_cost = price(rng, 5'000, 60'000);
  return c;
}

pvsynth::InverterSpec random_inverter(std::mt19937_64& rng, int tag) {
  pvsynth::InverterSpec v;
  v.id = "I" + std::to_string(tag);
  v.v_in_dc = pick(rng, 0, 5) == 0 ? 48 : 24;
  v.v_out_ac = pick(rng, 0, 7) == 0 ? 230 : 127;
  v.p_ac_ref = static_cast<double>(pick(rng, 3, 20) * 100);
  v.max_ac_ref = v.p_ac_ref * 2;
  v.eta_i = two(uniform(rng, 0.88, 0.95));
  v.unit_cost = price(rng, 8'000, 60'000);
  return v;
}

RandomToy random_toy(std::mt19937_64& rng) {
  RandomToy t;
  int tag = 0;
  for (auto n = pick(rng, 1, 3); n > 0; --n) t.catalog.panels.push_back(random_panel(rng, tag++));
  for (auto n = pick(rng, 1, 3); n > 0; --n) t.catalog.batteries.push_back(random_battery(rng, tag++));
  for (auto n = pick(rng, 1, 3); n > 0; --n) t.catalog.controllers.push_back(random_controller(rng, tag++));
  for (auto n = pick(rng, 1, 3); n > 0; --n) t.catalog.inverters.push_back(random_inverter(rng, tag++));

  auto& in = t.instance;
  in.load.e_consumption = static_cast<double>(pick(rng, 5, 60) * 100);
  in.load.demand = static_cast<double>(pick(rng, 2, 12) * 50);
  in.load.p_surge = in.load.demand * uniform(rng, 1.0, 2.5);
  in.site.irradiance = two(uniform(rng, 3.5, 6.5));
  in.site.t_cell = static_cast<double>(pick(rng, 25, 70));
  in.site.g = static_cast<double>(pick(rng, 7, 10) * 100);
  in.design.v_system = 24;
  in.design.autonomy_hours = static_cast<double>(pick(rng, 1, 4) * 12);
  in.design.dod = 0.25;

  switch (pick(rng, 0, 2)) {
    case 0: t.model = pvsynth::CostModel::derived(); break;
    case 1: t.model = pvsynth::CostModel::three_replacements(); break;
    default: t.model = pvsynth::CostModel::purchase_only(); break;
  }
  return t;
}

}  // namespace fixtures
