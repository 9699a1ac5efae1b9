#include "pvsynth/verifier.hpp"

#include <openssl/evp.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <charconv>
#include <functional>
#include <limits>
#include <sstream>

#include "pvsynth/errors.hpp"
#include "pvsynth/scenario.hpp"

namespace pvsynth {

namespace {

using boost::multiprecision::cpp_int;

// base^exp as an expression; powers past the 64-bit literal range become a
// product of chunks evaluated in __int128.
std::string power_literal(std::int64_t base, int exp) {
  const cpp_int limit = std::numeric_limits<std::int64_t>::max();
  std::vector<cpp_int> chunks{1};
  for (int i = 0; i < exp; ++i) {
    if (chunks.back() * base > limit) chunks.push_back(1);
    chunks.back() *= base;
  }
  if (chunks.size() == 1) return chunks.front().str();
  std::string s = "((__int128)" + chunks.front().str();
  for (std::size_t i = 1; i < chunks.size(); ++i) s += " * " + chunks[i].str();
  return s + ")";
}

// Shortest round-trip form, always recognisable as a floating literal.
std::string real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

class Writer {
 public:
  template <typename T, typename F>
  void table(const char* type, const std::string& name, const std::vector<T>& items, F field) {
    os_ << "const " << type << ' ' << name << '[' << items.size() << "] = {";
    for (std::size_t i = 0; i < items.size(); ++i) os_ << (i ? ", " : "") << field(items[i]);
    os_ << "};\n";
  }
  void constant(const char* type, const char* name, const std::string& value) {
    os_ << "const " << type << ' ' << name << " = " << value << ";\n";
  }
  Writer& line(const std::string& text = {}) {
    os_ << text << '\n';
    return *this;
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

std::string cents(Money m) { return std::to_string(m.cents()); }

// Half-up rounding of `amount * num / den` in integer arithmetic.
std::string scaled(const std::string& amount, const std::string& num, const std::string& den) {
  return "(2 * " + amount + " * " + num + " + " + den + ") / (2 * " + den + ")";
}

}  // namespace

std::string verification_input_hash(const SizingInstance& instance, const EquipmentCatalog& catalog,
                                    const CostModel& cost_model, Money hint_cost) {
  const nlohmann::json doc = {{"instance", to_json(instance)},
                              {"catalog", to_json(catalog)},
                              {"cost_model", to_json(cost_model)},
                              {"hint_cost", hint_cost.to_string()}};
  const std::string canonical = doc.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

std::string emit_verification_program(const SizingInstance& in, const EquipmentCatalog& cat,
                                      const CostModel& model, Money hint_cost) {
  validate_instance(in);
  validate_cost_model(model);
  const Ratio& rate = model.discount_rate;
  Writer w;
  w.line("// pv-synth verification program")
      .line("// content-hash: sha256:" + verification_input_hash(in, cat, model, hint_cost))
      .line("// The assertion fails exactly for feasible selections whose life-cycle")
      .line("// cost, in cents, is at most HINT_COST.")
      .line();

  w.constant("long long", "N_PANELS", std::to_string(cat.panels.size()));
  w.table("double", "PANEL_AREA", cat.panels, [](const auto& p) { return real(p.area); });
  w.table("double", "PANEL_ETA", cat.panels, [](const auto& p) { return real(p.eta_p); });
  w.table("double", "PANEL_V_MP_TMIN", cat.panels, [](const auto& p) { return real(p.v_mp_temp_min); });
  w.table("double", "PANEL_V_MP_TMAX", cat.panels, [](const auto& p) { return real(p.v_mp_temp_max); });
  w.table("double", "PANEL_I_SC", cat.panels, [](const auto& p) { return real(p.i_sc_ref); });
  w.table("double", "PANEL_MU_I", cat.panels, [](const auto& p) { return real(p.mu_i); });
  w.table("long long", "PANEL_COST", cat.panels, [](const auto& p) { return cents(p.unit_cost); });
  w.line();
  w.constant("long long", "N_BATTERIES", std::to_string(cat.batteries.size()));
  w.table("double", "BATTERY_CAPACITY", cat.batteries, [](const auto& b) { return real(b.capacity); });
  w.table("double", "BATTERY_V", cat.batteries, [](const auto& b) { return real(b.v_bat); });
  w.table("double", "BATTERY_ETA", cat.batteries, [](const auto& b) { return real(b.eta_b); });
  w.table("long long", "BATTERY_COST", cat.batteries, [](const auto& b) { return cents(b.unit_cost); });
  w.line();
  w.constant("long long", "N_CONTROLLERS", std::to_string(cat.controllers.size()));
  w.table("double", "CONTROLLER_V", cat.controllers, [](const auto& c) { return real(c.v_c); });
  w.table("double", "CONTROLLER_I", cat.controllers, [](const auto& c) { return real(c.i_c); });
  w.table("double", "CONTROLLER_MPPT_MIN", cat.controllers, [](const auto& c) { return real(c.v_mppt_min); });
  w.table("double", "CONTROLLER_MPPT_MAX", cat.controllers, [](const auto& c) { return real(c.v_mppt_max); });
  w.table("double", "CONTROLLER_ETA", cat.controllers, [](const auto& c) { return real(c.eta_c); });
  w.table("long long", "CONTROLLER_COST", cat.controllers, [](const auto& c) { return cents(c.unit_cost); });
  w.line();
  w.constant("long long", "N_INVERTERS", std::to_string(cat.inverters.size()));
  w.table("double", "INVERTER_V_DC", cat.inverters, [](const auto& i) { return real(i.v_in_dc); });
  w.table("double", "INVERTER_V_AC", cat.inverters, [](const auto& i) { return real(i.v_out_ac); });
  w.table("double", "INVERTER_P_AC", cat.inverters, [](const auto& i) { return real(i.p_ac_ref); });
  w.table("double", "INVERTER_MAX_AC", cat.inverters, [](const auto& i) { return real(i.max_ac_ref); });
  w.table("double", "INVERTER_ETA", cat.inverters, [](const auto& i) { return real(i.eta_i); });
  w.table("long long", "INVERTER_COST", cat.inverters, [](const auto& i) { return cents(i.unit_cost); });
  w.line();

  w.constant("double", "E_CONSUMPTION", real(in.load.e_consumption));
  w.constant("double", "DEMAND", real(in.load.demand));
  w.constant("double", "P_SURGE", real(in.load.p_surge));
  w.constant("double", "V_AC", real(in.load.v_ac));
  w.constant("double", "IRRADIANCE", real(in.site.irradiance));
  w.constant("double", "G", real(in.site.g));
  w.constant("double", "G_REF", real(in.site.g_ref));
  w.constant("double", "T_CELL", real(in.site.t_cell));
  w.constant("double", "V_SYSTEM", real(in.design.v_system));
  w.constant("double", "DOD", real(in.design.dod));
  w.constant("double", "AUTONOMY_HOURS", real(in.design.autonomy_hours));
  w.constant("double", "NUDGE", real(kRoundingNudge));
  w.constant("__int128", "OM_PRESENT_WORTH",
             cents(present_worth_annuity(model.om_annual, model.horizon_years, rate)));
  w.constant("__int128", "HINT_COST", cents(hint_cost));
  w.line();

  w.line("int main(void) {")
      .line("  long long ip = nondet_index(N_PANELS);")
      .line("  long long ib = nondet_index(N_BATTERIES);")
      .line("  long long ic = nondet_index(N_CONTROLLERS);")
      .line("  long long ii = nondet_index(N_INVERTERS);")
      .line()
      .line("  double e_corrected = E_CONSUMPTION / (BATTERY_ETA[ib] * CONTROLLER_ETA[ic] * INVERTER_ETA[ii]);")
      .line("  double e_p = IRRADIANCE * PANEL_AREA[ip] * PANEL_ETA[ip] * 1000.0;")
      .line("  long long n_tp_min = (long long)ceil(e_corrected / e_p - NUDGE);")
      .line("  long long ps_lo = (long long)ceil(CONTROLLER_MPPT_MIN[ic] / PANEL_V_MP_TMAX[ip] - NUDGE);")
      .line("  long long n_ps = ps_lo < 1 ? 1 : ps_lo;")
      .line("  long long ps_hi = (long long)floor(CONTROLLER_MPPT_MAX[ic] / PANEL_V_MP_TMIN[ip] + NUDGE);")
      .line("  assume(n_ps <= ps_hi);")
      .line("  long long n_pp = (n_tp_min + n_ps - 1) / n_ps;")
      .line("  long long n_tp = n_ps * n_pp;")
      .line("  double c_bank = e_corrected * (AUTONOMY_HOURS / 24.0) / (V_SYSTEM * DOD);")
      .line("  long long n_bs = llround(V_SYSTEM / BATTERY_V[ib]);")
      .line("  assume(n_bs >= 1 && n_bs * BATTERY_V[ib] == V_SYSTEM);")
      .line("  long long n_bp = (long long)ceil(c_bank / BATTERY_CAPACITY[ib] - NUDGE);")
      .line("  long long n_b_total = n_bs * n_bp;")
      .line("  assume(CONTROLLER_V[ic] == V_SYSTEM);")
      .line("  double i_sc_amb = (G / G_REF) * (PANEL_I_SC[ip] + PANEL_MU_I[ip] * (T_CELL - 25.0));")
      .line("  double i_c_min = i_sc_amb * n_pp;")
      .line("  assume(CONTROLLER_I[ic] >= i_c_min && INVERTER_V_DC[ii] == V_SYSTEM && INVERTER_V_AC[ii] == V_AC);")
      .line("  assume(DEMAND <= INVERTER_P_AC[ii] && P_SURGE <= INVERTER_MAX_AC[ii]);")
      .line()
      .line("  __int128 c_pv = n_tp * PANEL_COST[ip];")
      .line("  __int128 c_bat = n_b_total * BATTERY_COST[ib];")
      .line("  __int128 c_charger = CONTROLLER_COST[ic];")
      .line("  __int128 c_inv = INVERTER_COST[ii];")
      .line("  __int128 subtotal = c_pv + c_bat + c_charger + c_inv;");
  w.line("  __int128 c_installation = " +
         scaled("subtotal", std::to_string(model.install_fraction.num()), std::to_string(model.install_fraction.den())) + ";");

  std::string batrep = "0";
  for (int year : model.battery_replacement_years) {
    const std::string name = "batrep_y" + std::to_string(year);
    w.line("  __int128 " + name + " = " +
           scaled("c_bat", power_literal(rate.den(), year), power_literal(rate.den() + rate.num(), year)) + ";");
    batrep = batrep == "0" ? name : batrep + " + " + name;
  }
  w.line("  __int128 c_batrep = " + batrep + ";");

  std::string om = "OM_PRESENT_WORTH";
  for (int year : model.electronics_replacement_years) {
    const std::string name = "elecrep_y" + std::to_string(year);
    w.line("  __int128 " + name + " = " +
           scaled("(c_charger + c_inv)", power_literal(rate.den(), year), power_literal(rate.den() + rate.num(), year)) + ";");
    om += " + " + name;
  }
  w.line("  __int128 c_pw_om = " + om + ";")
      .line("  __int128 f_obj = subtotal + c_installation + c_batrep + c_pw_om;")
      .line("  assert(f_obj > HINT_COST);")
      .line("  return 0;")
      .line("}");
  return w.str();
}

}  // namespace pvsynth
