#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "pvsynth/catalog.hpp"
#include "pvsynth/errors.hpp"

using namespace pvsynth;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "panels": [{"id": "P1", "p_max_ref": 330, "v_mp_temp_min": 40, "v_mp_temp_max": 31.2, "i_sc_ref": 10.35,
                "mu_i": 0.005, "area": 1.69, "eta_p": 0.195, "unit_cost": "184.90"}],
    "batteries": [{"id": "B1", "capacity": 105, "v_bat": 12, "eta_b": 0.85, "unit_cost": "180.00"}],
    "controllers": [{"id": "C1", "v_c": 24, "i_c": 20, "v_mppt_min": 34, "v_mppt_max": 100, "eta_c": 0.98,
                     "unit_cost": "142.00"}],
    "inverters": [{"id": "I1", "v_in_dc": 24, "v_out_ac": 127, "p_ac_ref": 1200, "max_ac_ref": 2400,
                   "eta_i": 0.92, "unit_cost": "239.00"}]
  })");
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("minimal document loads four records") {
    const auto cat = load_catalog_json(minimal());
    CHECK(cat.size() == 4);
    CHECK(cat.combinations() == 1);
    CHECK(cat.panel("P1").unit_cost.cents() == 18490);
    CHECK(cat.battery("B1").capacity == 105);
    CHECK_THROWS_AS(cat.inverter("nope"), UnknownIdError);
  }

  TEST_CASE("eta_p above one names the panel and field") {
    auto doc = minimal();
    doc["panels"][0]["eta_p"] = 1.3;
    try {
      load_catalog_json(doc);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.record_id() == "P1");
      CHECK(e.field() == "eta_p");
    }
  }

  TEST_CASE("schema errors") {
    auto missing = minimal();
    missing["batteries"][0].erase("capacity");
    CHECK_THROWS_AS(load_catalog_json(missing), SchemaError);

    auto unknown = minimal();
    unknown["inverters"][0]["colour"] = "red";
    CHECK_THROWS_AS(load_catalog_json(unknown), SchemaError);

    auto empty = minimal();
    empty["controllers"] = json::array();
    CHECK_THROWS_AS(load_catalog_json(empty), SchemaError);

    auto numeric_cost = minimal();
    numeric_cost["panels"][0]["unit_cost"] = 184.9;
    CHECK_THROWS_AS(load_catalog_json(numeric_cost), SchemaError);

    std::istringstream broken("{\"panels\": [");
    CHECK_THROWS_AS(load_catalog(broken), SchemaError);
  }

  TEST_CASE("duplicate ids are rejected") {
    auto doc = minimal();
    doc["batteries"].push_back(doc["batteries"][0]);
    CHECK_THROWS_AS(load_catalog_json(doc), ValidationError);
  }

  TEST_CASE("validate_spec reports every violation") {
    BatterySpec good{"B", 105, 12, 0.85, Money::parse("180.00")};
    CHECK(validate_spec(good).empty());

    PvPanelSpec p = load_catalog_json(minimal()).panels[0];
    std::swap(p.v_mp_temp_min, p.v_mp_temp_max);
    auto v = validate_spec(p);
    REQUIRE(v.size() == 1);

    ControllerSpec c = load_catalog_json(minimal()).controllers[0];
    c.v_mppt_max = c.v_mppt_min;
    CHECK(validate_spec(AnySpec{c}).size() == 1);

    PvPanelSpec bad = p;
    bad.p_max_ref = 0;
    bad.area = -1;
    bad.eta_p = 0;
    bad.i_sc_ref = 0;
    CHECK(validate_spec(bad).size() == 5);

    InverterSpec inv = load_catalog_json(minimal()).inverters[0];
    inv.max_ac_ref = inv.p_ac_ref - 1;
    CHECK(validate_spec(inv).size() == 1);
  }

  TEST_CASE("bundled catalog: 40 records in file order, round-trips") {
    const std::string path = fixtures::data_path("catalogs/bundled.json");
    const auto cat = load_catalog_file(path);
    CHECK(cat.panels.size() == 10);
    CHECK(cat.batteries.size() == 10);
    CHECK(cat.controllers.size() == 10);
    CHECK(cat.inverters.size() == 10);
    CHECK(cat.size() == 40);

    std::ifstream in(path);
    const json raw = json::parse(in);
    CHECK(to_json(cat) == raw);
    for (std::size_t i = 0; i < cat.panels.size(); ++i) CHECK(cat.panels[i].id == raw["panels"][i]["id"]);

    CHECK(load_catalog_json(to_json(cat)) == cat);
    CHECK(load_catalog_file(path) == cat);
    for (const auto& p : cat.panels) CHECK(validate_spec(p).empty());
    for (const auto& b : cat.batteries) CHECK(validate_spec(b).empty());
    for (const auto& c : cat.controllers) CHECK(validate_spec(c).empty());
    for (const auto& i : cat.inverters) CHECK(validate_spec(i).empty());
  }

  TEST_CASE("missing file is an I/O error carrying the path") {
    try {
      load_catalog_file("/nonexistent/catalog.json");
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(std::string(e.what()).find("/nonexistent/catalog.json") != std::string::npos);
    }
  }
}
