#include "pvsynth/catalog.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "pvsynth/errors.hpp"

namespace pvsynth {

using nlohmann::json;

namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0; }
bool unit_fraction(double v) { return std::isfinite(v) && v > 0 && v <= 1; }

void require(std::vector<Violation>& out, bool ok, const char* field, const char* message) {
  if (!ok) out.push_back({field, message});
}

template <typename T>
const T& find_by_id(const std::vector<T>& list, const std::string& id, const char* kind) {
  for (const auto& item : list)
    if (item.id == id) return item;
  throw UnknownIdError(std::string("no ") + kind + " with id '" + id + "'");
}

// Reads one record object, checking that it carries exactly `fields` (+ "id", "unit_cost").
class RecordReader {
 public:
  RecordReader(const json& obj, std::string path, std::initializer_list<const char*> fields)
      : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw SchemaError(path_, "expected an object");
    std::set<std::string> allowed = {"id", "unit_cost"};
    for (const char* f : fields) allowed.insert(f);
    for (const auto& [key, _] : obj_.items())
      if (!allowed.count(key)) throw SchemaError(path_ + "/" + key, "unknown field");
    for (const auto& key : allowed)
      if (!obj_.contains(key)) throw SchemaError(path_, "missing field '" + key + "'");
  }

  std::string id() const {
    const auto& v = obj_.at("id");
    if (!v.is_string() || v.get<std::string>().empty())
      throw SchemaError(path_ + "/id", "expected a non-empty string");
    return v.get<std::string>();
  }

  double number(const char* field) const {
    const auto& v = obj_.at(field);
    if (!v.is_number()) throw SchemaError(path_ + "/" + field, "expected a number");
    return v.get<double>();
  }

  Money cost() const {
    const auto& v = obj_.at("unit_cost");
    if (!v.is_string()) throw SchemaError(path_ + "/unit_cost", "expected a \"dollars.cents\" string");
    try {
      return Money::parse(v.get<std::string>());
    } catch (const DomainError& e) {
      throw SchemaError(path_ + "/unit_cost", e.what());
    }
  }

 private:
  const json& obj_;
  std::string path_;
};

PvPanelSpec read_panel(const json& j, const std::string& path) {
  RecordReader r(j, path, {"p_max_ref", "v_mp_temp_min", "v_mp_temp_max", "i_sc_ref", "mu_i", "area", "eta_p"});
  return {r.id(), r.number("p_max_ref"), r.number("v_mp_temp_min"), r.number("v_mp_temp_max"),
          r.number("i_sc_ref"), r.number("mu_i"), r.number("area"), r.number("eta_p"), r.cost()};
}

BatterySpec read_battery(const json& j, const std::string& path) {
  RecordReader r(j, path, {"capacity", "v_bat", "eta_b"});
  return {r.id(), r.number("capacity"), r.number("v_bat"), r.number("eta_b"), r.cost()};
}

ControllerSpec read_controller(const json& j, const std::string& path) {
  RecordReader r(j, path, {"v_c", "i_c", "v_mppt_min", "v_mppt_max", "eta_c"});
  return {r.id(), r.number("v_c"), r.number("i_c"), r.number("v_mppt_min"),
          r.number("v_mppt_max"), r.number("eta_c"), r.cost()};
}

InverterSpec read_inverter(const json& j, const std::string& path) {
  RecordReader r(j, path, {"v_in_dc", "v_out_ac", "p_ac_ref", "max_ac_ref", "eta_i"});
  return {r.id(), r.number("v_in_dc"), r.number("v_out_ac"), r.number("p_ac_ref"),
          r.number("max_ac_ref"), r.number("eta_i"), r.cost()};
}

template <typename T, typename Reader>
std::vector<T> read_list(const json& doc, const char* key, Reader reader) {
  const std::string path = std::string("/") + key;
  if (!doc.contains(key)) throw SchemaError("/", std::string("missing key '") + key + "'");
  const auto& arr = doc.at(key);
  if (!arr.is_array()) throw SchemaError(path, "expected an array");
  if (arr.empty()) throw SchemaError(path, "list must not be empty");

  std::vector<T> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    T spec = reader(arr[i], path + "/" + std::to_string(i));
    if (!seen.insert(spec.id).second) throw ValidationError(spec.id, "id", "duplicate id");
    const auto violations = validate_spec(spec);
    if (!violations.empty())
      throw ValidationError(spec.id, violations.front().field, violations.front().message);
    out.push_back(std::move(spec));
  }
  return out;
}

json cost_json(Money m) { return m.to_string(); }

}  // namespace

const PvPanelSpec& EquipmentCatalog::panel(const std::string& id) const {
  return find_by_id(panels, id, "panel");
}
const BatterySpec& EquipmentCatalog::battery(const std::string& id) const {
  return find_by_id(batteries, id, "battery");
}
const ControllerSpec& EquipmentCatalog::controller(const std::string& id) const {
  return find_by_id(controllers, id, "controller");
}
const InverterSpec& EquipmentCatalog::inverter(const std::string& id) const {
  return find_by_id(inverters, id, "inverter");
}

std::vector<Violation> validate_spec(const PvPanelSpec& s) {
  std::vector<Violation> v;
  require(v, !s.id.empty(), "id", "must be non-empty");
  require(v, finite_positive(s.p_max_ref), "p_max_ref", "must be > 0");
  require(v, finite_positive(s.v_mp_temp_min), "v_mp_temp_min", "must be > 0");
  require(v, finite_positive(s.v_mp_temp_max), "v_mp_temp_max", "must be > 0");
  require(v, !(s.v_mp_temp_max > s.v_mp_temp_min), "v_mp_temp_max",
          "must not exceed v_mp_temp_min (voltage falls as temperature rises)");
  require(v, finite_positive(s.i_sc_ref), "i_sc_ref", "must be > 0");
  require(v, std::isfinite(s.mu_i), "mu_i", "must be finite");
  require(v, finite_positive(s.area), "area", "must be > 0");
  require(v, unit_fraction(s.eta_p), "eta_p", "must lie in (0, 1]");
  return v;
}

std::vector<Violation> validate_spec(const BatterySpec& s) {
  std::vector<Violation> v;
  require(v, !s.id.empty(), "id", "must be non-empty");
  require(v, finite_positive(s.capacity), "capacity", "must be > 0");
  require(v, finite_positive(s.v_bat), "v_bat", "must be > 0");
  require(v, unit_fraction(s.eta_b), "eta_b", "must lie in (0, 1]");
  return v;
}

std::vector<Violation> validate_spec(const ControllerSpec& s) {
  std::vector<Violation> v;
  require(v, !s.id.empty(), "id", "must be non-empty");
  require(v, finite_positive(s.v_c), "v_c", "must be > 0");
  require(v, finite_positive(s.i_c), "i_c", "must be > 0");
  require(v, finite_positive(s.v_mppt_min), "v_mppt_min", "must be > 0");
  require(v, std::isfinite(s.v_mppt_max) && s.v_mppt_min < s.v_mppt_max, "v_mppt_max",
          "MPPT window must satisfy v_mppt_min < v_mppt_max");
  require(v, unit_fraction(s.eta_c), "eta_c", "must lie in (0, 1]");
  return v;
}

std::vector<Violation> validate_spec(const InverterSpec& s) {
  std::vector<Violation> v;
  require(v, !s.id.empty(), "id", "must be non-empty");
  require(v, finite_positive(s.v_in_dc), "v_in_dc", "must be > 0");
  require(v, finite_positive(s.v_out_ac), "v_out_ac", "must be > 0");
  require(v, finite_positive(s.p_ac_ref), "p_ac_ref", "must be > 0");
  require(v, std::isfinite(s.max_ac_ref) && s.max_ac_ref >= s.p_ac_ref, "max_ac_ref",
          "must be >= p_ac_ref");
  require(v, unit_fraction(s.eta_i), "eta_i", "must lie in (0, 1]");
  return v;
}

std::vector<Violation> validate_spec(const AnySpec& spec) {
  return std::visit([](const auto& s) { return validate_spec(s); }, spec);
}

EquipmentCatalog load_catalog_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("/", "catalog must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "panels" && key != "batteries" && key != "controllers" && key != "inverters")
      throw SchemaError("/" + key, "unknown top-level key");
  EquipmentCatalog c;
  c.panels = read_list<PvPanelSpec>(doc, "panels", read_panel);
  c.batteries = read_list<BatterySpec>(doc, "batteries", read_battery);
  c.controllers = read_list<ControllerSpec>(doc, "controllers", read_controller);
  c.inverters = read_list<InverterSpec>(doc, "inverters", read_inverter);
  return c;
}

EquipmentCatalog load_catalog(std::istream& source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw SchemaError("/", std::string("malformed JSON: ") + e.what());
  }
  return load_catalog_json(doc);
}

EquipmentCatalog load_catalog_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open catalog file '" + path + "'");
  try {
    return load_catalog(in);
  } catch (const SchemaError& e) {
    throw SchemaError(path + ":" + e.where(), e.message());
  }
}

json to_json(const EquipmentCatalog& c) {
  json doc;
  auto& panels = doc["panels"] = json::array();
  for (const auto& p : c.panels)
    panels.push_back({{"id", p.id}, {"p_max_ref", p.p_max_ref}, {"v_mp_temp_min", p.v_mp_temp_min},
                      {"v_mp_temp_max", p.v_mp_temp_max}, {"i_sc_ref", p.i_sc_ref}, {"mu_i", p.mu_i},
                      {"area", p.area}, {"eta_p", p.eta_p}, {"unit_cost", cost_json(p.unit_cost)}});
  auto& batteries = doc["batteries"] = json::array();
  for (const auto& b : c.batteries)
    batteries.push_back({{"id", b.id}, {"capacity", b.capacity}, {"v_bat", b.v_bat},
                         {"eta_b", b.eta_b}, {"unit_cost", cost_json(b.unit_cost)}});
  auto& controllers = doc["controllers"] = json::array();
  for (const auto& k : c.controllers)
    controllers.push_back({{"id", k.id}, {"v_c", k.v_c}, {"i_c", k.i_c}, {"v_mppt_min", k.v_mppt_min},
                           {"v_mppt_max", k.v_mppt_max}, {"eta_c", k.eta_c},
                           {"unit_cost", cost_json(k.unit_cost)}});
  auto& inverters = doc["inverters"] = json::array();
  for (const auto& i : c.inverters)
    inverters.push_back({{"id", i.id}, {"v_in_dc", i.v_in_dc}, {"v_out_ac", i.v_out_ac},
                         {"p_ac_ref", i.p_ac_ref}, {"max_ac_ref", i.max_ac_ref}, {"eta_i", i.eta_i},
                         {"unit_cost", cost_json(i.unit_cost)}});
  return doc;
}

}  // namespace pvsynth
