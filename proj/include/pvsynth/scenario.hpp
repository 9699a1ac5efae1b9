#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "pvsynth/cost.hpp"
#include "pvsynth/sizing.hpp"
#include "pvsynth/synthesis.hpp"

namespace pvsynth {

/// One sizing problem as read from a scenario file.
struct Scenario {
  std::string label;
  SizingInstance instance;
  std::string catalog_path;  // resolved against the scenario file's directory
  CostModel cost_model = CostModel::derived();
  SynthesisConfig synthesis;
  std::vector<std::string> warnings;
};

/// `base_dir` resolves a relative catalog_path. Throws SchemaError / ValidationError.
Scenario parse_scenario(const nlohmann::json& doc, const std::string& base_dir);
Scenario load_scenario_file(const std::string& path);

SizingInstance instance_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SizingInstance& instance);

}  // namespace pvsynth
