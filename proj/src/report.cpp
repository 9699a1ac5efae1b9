#include "pvsynth/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>

#include "pvsynth/errors.hpp"

namespace pvsynth {

using nlohmann::json;

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

// 1200 -> "1,200"; 12.5 -> "12.5"
std::string quantity(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::string s = fmt::format("{}", static_cast<long long>(v));
    for (int i = static_cast<int>(s.size()) - 3; i > (s[0] == '-' ? 1 : 0); i -= 3)
      s.insert(static_cast<std::size_t>(i), ",");
    return s;
  }
  return fmt::format("{:g}", v);
}

void flatten(const json& j, const std::string& path, std::map<std::string, std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out[path] = j.dump();
  }
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(path, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string str_field(const json& j, const char* key, const std::string& path) {
  const auto& v = field(j, key, path);
  if (!v.is_string()) throw SchemaError(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

Money money_field(const json& j, const char* key, const std::string& path) {
  try {
    return Money::parse(str_field(j, key, path));
  } catch (const DomainError& e) {
    throw SchemaError(path + "/" + key, e.what());
  }
}

double num_field(const json& j, const char* key, const std::string& path) {
  const auto& v = field(j, key, path);
  if (!v.is_number()) throw SchemaError(path + "/" + key, "expected a number");
  return v.get<double>();
}

std::uint64_t uint_field(const json& j, const char* key, const std::string& path) {
  const auto& v = field(j, key, path);
  if (!v.is_number_unsigned()) throw SchemaError(path + "/" + key, "expected an unsigned integer");
  return v.get<std::uint64_t>();
}

const char* const kCostKeys[] = {"c_pv", "c_bat", "c_charger", "c_inv", "c_installation", "c_batrep", "c_pw_om", "total"};

Money CostBreakdown::*const kCostMembers[] = {&CostBreakdown::c_pv,           &CostBreakdown::c_bat,
                                              &CostBreakdown::c_charger,      &CostBreakdown::c_inv,
                                              &CostBreakdown::c_installation, &CostBreakdown::c_batrep,
                                              &CostBreakdown::c_pw_om,        &CostBreakdown::total};

}  // namespace

std::string arrangement(std::int64_t series, std::int64_t parallel) {
  if (parallel == 1) return fmt::format("{}S", series);
  return fmt::format("{}S-{}P", series, parallel);
}

Report make_report(const std::string& label, const SynthesisResult& result, const EquipmentCatalog& catalog) {
  Report r;
  r.label = label;
  r.quadruples = result.stats.quadruples;
  r.feasible_candidates = result.stats.feasible;
  if (!result.sat()) {
    r.outcome = "unsat";
    return r;
  }
  r.outcome = "sat";
  r.hint_cost_at_stop = result.hint_cost_at_stop;
  const auto& c = *result.candidate;
  const auto& cfg = c.config;
  const auto& panel = catalog.panel(cfg.panel);
  const auto& battery = catalog.battery(cfg.battery);
  const auto& controller = catalog.controller(cfg.controller);
  const auto& inverter = catalog.inverter(cfg.inverter);
  r.equipment = {
      {"panel", panel.id, cfg.array.n_tp, arrangement(cfg.array.n_ps, cfg.array.n_pp),
       quantity(panel.p_max_ref) + "W"},
      {"battery", battery.id, cfg.bank.n_b_total, arrangement(cfg.bank.n_bs, cfg.bank.n_bp),
       quantity(battery.capacity) + "Ah"},
      {"controller", controller.id, 1, "", quantity(controller.i_c) + "A/" + quantity(controller.v_mppt_max) + "V"},
      {"inverter", inverter.id, 1, "", quantity(inverter.p_ac_ref) + "W/" + quantity(inverter.v_in_dc) + "V"},
  };
  r.electrical = ElectricalSummary{round2(cfg.e_corrected), round2(cfg.e_p), round2(cfg.bank.c_bank),
                                   round2(cfg.i_sc_amb), round2(cfg.i_c_min)};
  r.cost = c.cost;
  return r;
}

Report make_bound_exhausted_report(const std::string& label, const BoundExhausted& error, const EquipmentCatalog&) {
  Report r;
  r.label = label;
  r.outcome = "bound_exhausted";
  r.quadruples = error.stats().quadruples;
  r.feasible_candidates = error.stats().feasible;
  r.max_cost = error.max_cost();
  return r;
}

json to_json(const Report& r) {
  json j = {{"schema", kReportSchema},
            {"label", r.label},
            {"outcome", r.outcome},
            {"quadruples", r.quadruples},
            {"feasible_candidates", r.feasible_candidates}};
  if (r.hint_cost_at_stop) j["hint_cost_at_stop"] = r.hint_cost_at_stop->to_string();
  if (r.max_cost) j["max_cost"] = r.max_cost->to_string();
  if (r.replay_feasible) j["replay_feasible"] = *r.replay_feasible;
  if (!r.equipment.empty()) {
    auto& eq = j["equipment"] = json::array();
    for (const auto& e : r.equipment)
      eq.push_back({{"role", e.role}, {"id", e.id}, {"count", e.count}, {"arrangement", e.arrangement},
                    {"rating", e.rating}});
  }
  if (r.electrical) {
    const auto& e = *r.electrical;
    j["electrical"] = {{"e_corrected", e.e_corrected}, {"e_p", e.e_p}, {"c_bank", e.c_bank},
                       {"i_sc_amb", e.i_sc_amb},       {"i_c_min", e.i_c_min}};
  }
  if (r.cost) {
    json cost;
    for (std::size_t k = 0; k < std::size(kCostKeys); ++k) cost[kCostKeys[k]] = ((*r.cost).*kCostMembers[k]).to_string();
    j["cost"] = cost;
  }
  if (r.stats) {
    const auto& s = *r.stats;
    j["stats"] = {{"strategy", s.strategy},
                  {"cost_step", s.cost_step.to_string()},
                  {"workers", s.workers},
                  {"isa", s.isa},
                  {"iterations", s.iterations},
                  {"candidates_examined", s.candidates_examined},
                  {"wall_time_ms", s.wall_time_ms}};
  }
  return j;
}

Report report_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("/", "report must be a JSON object");
  if (str_field(j, "schema", "") != kReportSchema)
    throw SchemaError("/schema", std::string("expected \"") + kReportSchema + "\"");
  Report r;
  r.label = str_field(j, "label", "");
  r.outcome = str_field(j, "outcome", "");
  if (r.outcome != "sat" && r.outcome != "unsat" && r.outcome != "bound_exhausted")
    throw SchemaError("/outcome", "unknown outcome '" + r.outcome + "'");
  r.quadruples = uint_field(j, "quadruples", "");
  r.feasible_candidates = uint_field(j, "feasible_candidates", "");
  if (j.contains("hint_cost_at_stop")) r.hint_cost_at_stop = money_field(j, "hint_cost_at_stop", "");
  if (j.contains("max_cost")) r.max_cost = money_field(j, "max_cost", "");
  if (j.contains("replay_feasible")) r.replay_feasible = uint_field(j, "replay_feasible", "");
  if (j.contains("equipment")) {
    const auto& eq = j.at("equipment");
    if (!eq.is_array()) throw SchemaError("/equipment", "expected an array");
    for (std::size_t i = 0; i < eq.size(); ++i) {
      const std::string path = "/equipment/" + std::to_string(i);
      const auto& count = field(eq[i], "count", path);
      if (!count.is_number_integer()) throw SchemaError(path + "/count", "expected an integer");
      r.equipment.push_back({str_field(eq[i], "role", path), str_field(eq[i], "id", path), count.get<std::int64_t>(),
                             str_field(eq[i], "arrangement", path), str_field(eq[i], "rating", path)});
    }
  }
  if (j.contains("electrical")) {
    const auto& e = j.at("electrical");
    r.electrical = ElectricalSummary{num_field(e, "e_corrected", "/electrical"), num_field(e, "e_p", "/electrical"),
                                     num_field(e, "c_bank", "/electrical"), num_field(e, "i_sc_amb", "/electrical"),
                                     num_field(e, "i_c_min", "/electrical")};
  }
  if (j.contains("cost")) {
    CostBreakdown b;
    for (std::size_t k = 0; k < std::size(kCostKeys); ++k) b.*kCostMembers[k] = money_field(j.at("cost"), kCostKeys[k], "/cost");
    r.cost = b;
  }
  if (j.contains("stats")) {
    const auto& s = j.at("stats");
    RunStats st;
    st.strategy = str_field(s, "strategy", "/stats");
    st.cost_step = money_field(s, "cost_step", "/stats");
    st.workers = static_cast<unsigned>(uint_field(s, "workers", "/stats"));
    st.isa = str_field(s, "isa", "/stats");
    st.iterations = uint_field(s, "iterations", "/stats");
    st.candidates_examined = uint_field(s, "candidates_examined", "/stats");
    st.wall_time_ms = num_field(s, "wall_time_ms", "/stats");
    r.stats = st;
  }
  return r;
}

std::string render_text(const Report& r) {
  std::string out = fmt::format("{}\n", r.label);
  if (r.outcome == "unsat") {
    out += "UNSAT: no feasible equipment combination was found\n";
    out += fmt::format("  quadruples checked: {}, feasible: {}", r.quadruples, r.feasible_candidates);
    if (r.replay_feasible) out += fmt::format(", replay feasible: {}", *r.replay_feasible);
    return out + "\n";
  }
  if (r.outcome == "bound_exhausted") {
    return out + fmt::format("BOUND EXHAUSTED: {} feasible candidates, none at or below {}\n", r.feasible_candidates,
                             r.max_cost ? r.max_cost->to_display() : std::string("?"));
  }
  out += fmt::format("SAT at HintCost {}\n", r.hint_cost_at_stop ? r.hint_cost_at_stop->to_display() : "?");
  for (const auto& e : r.equipment) {
    if (e.role == "panel")
      out += fmt::format("  NTP: {} x {} {} ({})\n", e.count, e.id, e.rating, e.arrangement);
    else if (e.role == "battery")
      out += fmt::format("  NBT: {} x {} {} ({})\n", e.count, e.id, e.rating, e.arrangement);
    else
      out += fmt::format("  {}: {} {}\n", e.role == "controller" ? "Controller" : "Inverter", e.id, e.rating);
  }
  if (r.electrical) {
    const auto& e = *r.electrical;
    out += fmt::format("  E_corrected {:.2f} Wh/day, E_p {:.2f} Wh/day, C_bank {:.2f} Ah, I_sc,amb {:.2f} A, "
                       "I_c,min {:.2f} A\n",
                       e.e_corrected, e.e_p, e.c_bank, e.i_sc_amb, e.i_c_min);
  }
  if (r.cost) {
    const auto& c = *r.cost;
    out += fmt::format("  C_PV {}  C_bat {}  C_charger {}  C_inv {}\n", c.c_pv.to_display(), c.c_bat.to_display(),
                       c.c_charger.to_display(), c.c_inv.to_display());
    out += fmt::format("  C_installation {}  C_batrep {}  C_PWO&M {}\n", c.c_installation.to_display(),
                       c.c_batrep.to_display(), c.c_pw_om.to_display());
    out += fmt::format("  LCC: {}\n", c.total.to_display());
  }
  out += fmt::format("  quadruples checked: {}, feasible: {}\n", r.quadruples, r.feasible_candidates);
  if (r.stats) {
    const auto& s = *r.stats;
    out += fmt::format("  search: {} step {} | {} Verify iterations, {} candidate checks | {} kernels, {} worker(s), "
                       "{:.1f} ms\n",
                       s.strategy, s.cost_step.to_display(), s.iterations, s.candidates_examined, s.isa, s.workers,
                       s.wall_time_ms);
  }
  return out;
}

ReportDiff compare_reports(const Report& a, const Report& b) {
  if (a.label != b.label) throw Error("reports belong to different scenarios: '" + a.label + "' vs '" + b.label + "'");
  json ja = to_json(a);
  json jb = to_json(b);
  ja.erase("stats");
  jb.erase("stats");
  std::map<std::string, std::string> fa;
  std::map<std::string, std::string> fb;
  flatten(ja, "", fa);
  flatten(jb, "", fb);

  ReportDiff diff;
  if (a.cost && b.cost && a.cost->total != b.cost->total) {
    const auto ta = a.cost->total.cents();
    const auto tb = b.cost->total.cents();
    const auto delta = Money::from_cents(ta > tb ? ta - tb : tb - ta);
    diff.lines.push_back(fmt::format("f_obj delta: {}{}", tb >= ta ? "+" : "-", delta.to_string()));
  }
  for (const auto& [path, va] : fa) {
    const auto it = fb.find(path);
    if (it == fb.end())
      diff.lines.push_back(fmt::format("{}: {} -> (absent)", path, va));
    else if (it->second != va)
      diff.lines.push_back(fmt::format("{}: {} -> {}", path, va, it->second));
  }
  for (const auto& [path, vb] : fb)
    if (!fa.count(path)) diff.lines.push_back(fmt::format("{}: (absent) -> {}", path, vb));
  return diff;
}

}  // namespace pvsynth
