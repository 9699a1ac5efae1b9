#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "pvsynth/catalog.hpp"
#include "pvsynth/cost.hpp"
#include "pvsynth/scenario.hpp"
#include "pvsynth/sizing.hpp"

namespace fixtures {

std::string data_path(const std::string& relative);
std::string scenario_path(const std::string& name);  // "case1" -> .../data/scenarios/case1.json

/// The seven load cases shipped in data/scenarios.
const std::vector<std::string>& case_names();

struct Problem {
  pvsynth::Scenario scenario;
  pvsynth::EquipmentCatalog catalog;
};
Problem load(const std::string& name);

/// Small random catalog (1..3 items per role) and instance, drawn so that a
/// fair share of the selections is feasible.
struct RandomToy {
  pvsynth::SizingInstance instance;
  pvsynth::EquipmentCatalog catalog;
  pvsynth::CostModel model;
};
RandomToy random_toy(std::mt19937_64& rng);

pvsynth::PvPanelSpec random_panel(std::mt19937_64& rng, int tag);
pvsynth::BatterySpec random_battery(std::mt19937_64& rng, int tag);
pvsynth::ControllerSpec random_controller(std::mt19937_64& rng, int tag);
pvsynth::InverterSpec random_inverter(std::mt19937_64& rng, int tag);

}  // namespace fixtures
