#include "pvsynth/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "pvsynth/errors.hpp"

namespace pvsynth {

using nlohmann::json;

namespace {

const json& section(const json& doc, const char* key) {
  if (!doc.contains(key)) throw SchemaError("/", std::string("missing key '") + key + "'");
  const auto& s = doc.at(key);
  if (!s.is_object()) throw SchemaError(std::string("/") + key, "expected an object");
  return s;
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw SchemaError(path + "/" + key, "unknown field");
}

void number(const json& obj, const std::string& path, const char* key, double& out, bool required) {
  if (!obj.contains(key)) {
    if (required) throw SchemaError(path, std::string("missing field '") + key + "'");
    return;
  }
  if (!obj.at(key).is_number()) throw SchemaError(path + "/" + key, "expected a number");
  out = obj.at(key).get<double>();
}

Money money_field(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a \"dollars.cents\" string");
  try {
    return Money::parse(v.get<std::string>());
  } catch (const DomainError& e) {
    throw SchemaError(path, e.what());
  }
}

SynthesisConfig synthesis_from_json(const json& j) {
  SynthesisConfig c;
  if (j.is_null()) return c;
  if (!j.is_object()) throw SchemaError("/synthesis", "expected an object");
  only_keys(j, "/synthesis", {"max_cost", "cost_step", "strategy", "workers"});
  if (j.contains("max_cost")) c.max_cost = money_field(j.at("max_cost"), "/synthesis/max_cost");
  if (j.contains("cost_step")) c.cost_step = money_field(j.at("cost_step"), "/synthesis/cost_step");
  if (j.contains("strategy")) {
    if (!j.at("strategy").is_string()) throw SchemaError("/synthesis/strategy", "expected a string");
    c.strategy = parse_strategy(j.at("strategy").get<std::string>());
  }
  if (j.contains("workers")) {
    const auto& w = j.at("workers");
    if (!w.is_number_integer() || w.get<long long>() < 0)
      throw SchemaError("/synthesis/workers", "expected a non-negative integer");
    c.workers = j.at("workers").get<unsigned>();
  }
  validate_synthesis_config(c);
  return c;
}

}  // namespace

SizingInstance instance_from_json(const json& doc) {
  SizingInstance in;
  const auto& load = section(doc, "load");
  only_keys(load, "/load", {"e_consumption", "demand", "p_surge", "v_ac"});
  number(load, "/load", "e_consumption", in.load.e_consumption, true);
  number(load, "/load", "demand", in.load.demand, true);
  number(load, "/load", "p_surge", in.load.p_surge, true);
  number(load, "/load", "v_ac", in.load.v_ac, false);

  const auto& site = section(doc, "site");
  only_keys(site, "/site", {"irradiance", "g", "g_ref", "t_cell"});
  number(site, "/site", "irradiance", in.site.irradiance, true);
  number(site, "/site", "g", in.site.g, false);
  number(site, "/site", "g_ref", in.site.g_ref, false);
  number(site, "/site", "t_cell", in.site.t_cell, false);

  if (doc.contains("design")) {
    const auto& design = section(doc, "design");
    only_keys(design, "/design", {"v_system", "dod", "autonomy_hours", "max_dod"});
    number(design, "/design", "v_system", in.design.v_system, false);
    number(design, "/design", "dod", in.design.dod, false);
    number(design, "/design", "autonomy_hours", in.design.autonomy_hours, false);
    number(design, "/design", "max_dod", in.design.max_dod, false);
  }
  return in;
}

json to_json(const SizingInstance& in) {
  return {{"load",
           {{"e_consumption", in.load.e_consumption},
            {"demand", in.load.demand},
            {"p_surge", in.load.p_surge},
            {"v_ac", in.load.v_ac}}},
          {"site",
           {{"irradiance", in.site.irradiance},
            {"g", in.site.g},
            {"g_ref", in.site.g_ref},
            {"t_cell", in.site.t_cell}}},
          {"design",
           {{"v_system", in.design.v_system},
            {"dod", in.design.dod},
            {"autonomy_hours", in.design.autonomy_hours},
            {"max_dod", in.design.max_dod}}}};
}

Scenario parse_scenario(const json& doc, const std::string& base_dir) {
  if (!doc.is_object()) throw SchemaError("/", "scenario must be a JSON object");
  only_keys(doc, "", {"label", "load", "site", "design", "catalog_path", "cost_model", "synthesis"});
  Scenario s;
  if (!doc.contains("label") || !doc.at("label").is_string()) throw SchemaError("/label", "expected a string");
  s.label = doc.at("label").get<std::string>();
  if (!doc.contains("catalog_path") || !doc.at("catalog_path").is_string())
    throw SchemaError("/catalog_path", "expected a string");
  std::filesystem::path catalog = doc.at("catalog_path").get<std::string>();
  if (catalog.is_relative() && !base_dir.empty()) catalog = std::filesystem::path(base_dir) / catalog;
  s.catalog_path = catalog.lexically_normal().string();

  s.instance = instance_from_json(doc);
  s.warnings = validate_instance(s.instance);
  s.cost_model = cost_model_from_json(doc.contains("cost_model") ? doc.at("cost_model") : json());
  s.synthesis = synthesis_from_json(doc.contains("synthesis") ? doc.at("synthesis") : json());
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ":/", std::string("malformed JSON: ") + e.what());
  }
  try {
    return parse_scenario(doc, std::filesystem::path(path).parent_path().string());
  } catch (const SchemaError& e) {
    throw SchemaError(path + ":" + e.where(), e.message());
  }
}

}  // namespace pvsynth
