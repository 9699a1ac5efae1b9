// One line per acceptance criterion: PASS or FAIL, the criterion, and the
// evidence. Exit status is the number of failed criteria.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "fixtures.hpp"
#include "minic.hpp"
#include "oracle.hpp"
#include "pvsynth/cost.hpp"
#include "pvsynth/report.hpp"
#include "pvsynth/runner.hpp"
#include "pvsynth/sizing.hpp"
#include "pvsynth/synthesis.hpp"
#include "pvsynth/verifier.hpp"

using namespace pvsynth;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void verdict(bool ok, const std::string& name, const std::string& detail) {
  fmt::print("{} {}: {}\n", ok ? "PASS" : "FAIL", name, detail);
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Runs a criterion and turns an escaping exception into a failure.
template <typename F>
void criterion(const std::string& name, F body) {
  try {
    std::string detail;
    const bool ok = body(detail);
    verdict(ok, name, detail);
  } catch (const std::exception& e) {
    verdict(false, name, std::string("exception: ") + e.what());
  }
}

SynthesisConfig with(const fixtures::Problem& p, const char* step, Strategy s = Strategy::linear, unsigned workers = 1) {
  SynthesisConfig c = p.scenario.synthesis;
  c.cost_step = Money::parse(step);
  c.strategy = s;
  c.workers = workers;
  return c;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "pvsynth-acceptance";
  std::filesystem::create_directories(dir);
  return dir;
}

// Writes the JSON report of one CLI-equivalent run and returns its bytes.
std::string report_bytes(const std::string& scenario, Strategy s, const char* step, unsigned workers,
                         const std::string& tag) {
  RunOptions opt;
  opt.scenario_path = fixtures::scenario_path(scenario);
  opt.strategy = s;
  opt.step = step;
  opt.workers = workers;
  opt.json_path = (scratch() / (scenario + "-" + tag + ".json")).string();
  std::ostringstream out, err;
  const auto r = run_scenario(opt, out, err);
  if (r.exit_code != kExitSat) throw std::runtime_error(scenario + ": exit " + std::to_string(r.exit_code) + " " + err.str());
  return read_file(*opt.json_path);
}

bool near(double got, double want, double tol) { return std::fabs(got - want) <= tol + 1e-12; }

}  // namespace

int main() {
  std::vector<fixtures::Problem> cases;
  for (const auto& n : fixtures::case_names()) cases.push_back(fixtures::load(n));

  criterion("Oracle optimality (7 scenarios, step $0.01, identical ids and f_obj, < 60 s)", [&](std::string& d) {
    const auto start = Clock::now();
    bool ok = true;
    std::string worst;
    for (const auto& p : cases) {
      const auto& s = p.scenario;
      const auto r = cegis_synthesize(s.instance, p.catalog, s.cost_model, with(p, "0.01"));
      const auto bf = brute_force_optimum(s.instance, p.catalog, s.cost_model);
      const auto ref = oracle::optimum(oracle::feasible(s.instance, p.catalog, s.cost_model));
      if (!r.sat() || !bf.sat() || !ref) {
        ok = false;
        worst += " " + s.label + " not sat;";
        continue;
      }
      const auto& c = r.candidate->config;
      const bool same = c.panel == bf.candidate->config.panel && c.battery == bf.candidate->config.battery &&
                        c.controller == bf.candidate->config.controller &&
                        c.inverter == bf.candidate->config.inverter && r.candidate->f_obj() == bf.candidate->f_obj() &&
                        c.panel == p.catalog.panels[ref->ip].id && c.battery == p.catalog.batteries[ref->ib].id &&
                        c.controller == p.catalog.controllers[ref->ic].id &&
                        c.inverter == p.catalog.inverters[ref->ii].id && r.candidate->f_obj().cents() == ref->total_cents;
      if (!same) {
        ok = false;
        worst += " " + s.label + " mismatch;";
      }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    d = fmt::format("{} scenarios in {:.2f} s{}", cases.size(), secs, worst);
    return ok && secs < 60.0;
  });

  criterion("Step soundness (steps $0.01/$1/$10/$100, 0 <= gap < step)", [&](std::string& d) {
    bool ok = true;
    std::int64_t max_gap[4] = {0, 0, 0, 0};
    const char* steps[] = {"0.01", "1.00", "10.00", "100.00"};
    for (const auto& p : cases) {
      const auto& s = p.scenario;
      const auto ref = oracle::optimum(oracle::feasible(s.instance, p.catalog, s.cost_model));
      for (int k = 0; k < 4; ++k) {
        const auto r = cegis_synthesize(s.instance, p.catalog, s.cost_model, with(p, steps[k]));
        const std::int64_t gap = r.candidate->f_obj().cents() - ref->total_cents;
        max_gap[k] = std::max(max_gap[k], gap);
        ok = ok && gap >= 0 && gap < Money::parse(steps[k]).cents();
      }
    }
    d = fmt::format("max gap in cents: {} / {} / {} / {}", max_gap[0], max_gap[1], max_gap[2], max_gap[3]);
    return ok;
  });

  criterion("Strategy equivalence (linear $0.01 vs bisection, byte-identical JSON)", [&](std::string& d) {
    int same = 0;
    for (const auto& n : fixtures::case_names())
      same += report_bytes(n, Strategy::linear, "0.01", 1, "linear") ==
              report_bytes(n, Strategy::bisection, "0.01", 1, "bisection");
    d = fmt::format("{}/{} reports identical", same, fixtures::case_names().size());
    return same == static_cast<int>(fixtures::case_names().size());
  });

  criterion("Sizing-chain and present-worth unit values (+-0.01, +-$0.02)", [&](std::string& d) {
    int bad = 0;
    auto expect = [&](double got, double want, double tol) { bad += !near(got, want, tol); };
    expect(corrected_energy(3900, 0.85, 0.98, 0.90), 5202.08, 0.01);
    expect(corrected_energy(1000, 1, 1, 1), 1000, 0.01);
    expect(panel_energy(5.0, 2.0, 0.2), 2000, 0.01);
    expect(panel_energy(4.5, 1.94, 0.175), 1527.75, 0.01);
    expect(static_cast<double>(min_total_panels(5202.08, 1527.75)), 4, 0);
    expect(static_cast<double>(min_total_panels(2000, 2000)), 1, 0);
    expect(battery_bank_capacity(5202.08, 48, 24, 0.25), 1734.03, 0.01);
    expect(battery_bank_capacity(2400, 24, 24, 1.0), 100, 0.01);
    PvPanelSpec p;
    p.i_sc_ref = 9.0;
    p.mu_i = 0.005;
    SiteParams site;
    site.t_cell = 65;
    expect(ambient_short_circuit_current(p, site), 9.2, 0.01);
    site.g = 800;
    expect(ambient_short_circuit_current(p, site), 7.36, 0.01);
    ControllerSpec c{"C", 24, 20, 34, 100, 0.98, {}};
    bad += check_controller(c, 9.2, 2, 24).has_value();
    c.i_c = 15;
    const auto deficit = check_controller(c, 9.2, 2, 24);
    bad += !deficit || deficit->reason != Requirement::controller_current;
    if (deficit) expect(deficit->margin, 3.4, 0.01);
    const Ratio r(1, 10);
    auto money = [&](Money got, const char* want) { bad += std::abs(got.cents() - Money::parse(want).cents()) > 2; };
    money(present_worth(Money::parse("100.00"), 0, r), "100.00");
    money(present_worth(Money::parse("100.00"), 10, r), "38.55");
    money(present_worth(Money::parse("500.00"), 4, r), "341.51");
    money(present_worth_annuity(Money::parse("289.64"), 20, r), "2465.85");
    money(present_worth_annuity(Money::parse("0.00"), 20, r), "0.00");
    money(present_worth_annuity(Money::parse("100.00"), 1, r), "90.91");
    d = fmt::format("{} value(s) out of tolerance; annuity($289.64, 20y) = {}", bad,
                    present_worth_annuity(Money::parse("289.64"), 20, r).to_display());
    return bad == 0;
  });

  criterion("Structural fidelity (case 2 loads, 330 W panel -> n_ps = 2, \"2S\")", [&](std::string& d) {
    auto p = fixtures::load("case2_string");
    const auto r = cegis_synthesize(p.scenario.instance, p.catalog, p.scenario.cost_model, with(p, "0.01"));
    if (!r.sat()) {
      d = "not sat";
      return false;
    }
    const auto rep = make_report(p.scenario.label, r, p.catalog);
    const auto& panel = rep.equipment.at(0);
    const auto bf = brute_force_optimum(p.scenario.instance, p.catalog, p.scenario.cost_model);
    d = fmt::format("NTP: {} x {} ({}), n_ps = {}", panel.count, panel.rating, panel.arrangement,
                    r.candidate->config.array.n_ps);
    return r.candidate->config.array.n_ps == 2 && panel.arrangement == "2S" && panel.rating == "330W" &&
           panel.count == 2 && bf.candidate->ordinal == r.candidate->ordinal;
  });

  criterion("Infeasibility certification (48 V bus vs all-24 V controllers)", [&](std::string& d) {
    RunOptions opt;
    opt.scenario_path = fixtures::scenario_path("infeasible_48v");
    std::ostringstream out, err;
    const auto r = run_scenario(opt, out, err);
    auto p = fixtures::load("infeasible_48v");
    const auto replay = replay_feasible_count(p.scenario.instance, p.catalog);
    const auto ref = oracle::feasible(p.scenario.instance, p.catalog, p.scenario.cost_model).size();
    d = fmt::format("exit {}, outcome {}, replay feasible {}, reference feasible {}", r.exit_code,
                    r.report ? r.report->outcome : "-", replay, ref);
    return r.exit_code == kExitUnsat && r.report && r.report->outcome == "unsat" && r.report->replay_feasible == 0u &&
           replay == 0 && ref == 0;
  });

  criterion("Determinism under parallelism (1 vs N workers, identical reports)", [&](std::string& d) {
    const unsigned n = std::max(4u, std::thread::hardware_concurrency());
    int same = 0;
    for (const auto& name : fixtures::case_names())
      same += report_bytes(name, Strategy::linear, "1.00", 1, "w1") ==
              report_bytes(name, Strategy::linear, "1.00", n, "wN");
    d = fmt::format("{}/{} reports identical with {} workers", same, fixtures::case_names().size(), n);
    return same == static_cast<int>(fixtures::case_names().size());
  });

  criterion("Emitted-verifier consistency (toy, violation iff hint >= optimum)", [&](std::string& d) {
    auto p = fixtures::load("toy");
    const auto& s = p.scenario;
    const auto best = *oracle::optimum(oracle::feasible(s.instance, p.catalog, s.cost_model));
    const std::vector<std::int64_t> at_best{static_cast<std::int64_t>(best.ip), static_cast<std::int64_t>(best.ib),
                                            static_cast<std::int64_t>(best.ic), static_cast<std::int64_t>(best.ii)};
    int checked = 0;
    bool ok = true;
    for (std::int64_t hint = 0; hint <= 300'000; hint += hint < 262'000 || hint > 263'000 ? 2'500 : 1) {
      const auto text = emit_verification_program(s.instance, p.catalog, s.cost_model, Money::from_cents(hint));
      const auto run = minic::Program(text).explore();
      ++checked;
      const bool violated = !run.violations.empty();
      ok = ok && violated == (hint >= best.total_cents);
      if (hint == best.total_cents) ok = ok && run.violations.size() == 1 && run.violations[0] == at_best;
    }
    d = fmt::format("{} hint values, optimum {} at ({}, {}, {}, {})", checked,
                    Money::from_cents(best.total_cents).to_display(), best.ip, best.ib, best.ic, best.ii);
    return ok;
  });

  criterion("Monotonicity (cost strictly increasing; augmentation never raises the optimum; 1,000 toys)",
            [&](std::string& d) {
              std::mt19937_64 rng(20260214);
              int cost_bad = 0, aug_bad = 0, sat = 0;
              for (int i = 0; i < 1000; ++i) {
                auto t = fixtures::random_toy(rng);
                const LifeCycleCost eval(t.model);
                const auto cands = enumerate_feasible(t.instance, t.catalog, t.model);
                for (const auto& c : cands) {
                  const auto& cfg = c.config;
                  const auto& pn = t.catalog.panel(cfg.panel);
                  const auto& bt = t.catalog.battery(cfg.battery);
                  const auto& ct = t.catalog.controller(cfg.controller);
                  const auto& iv = t.catalog.inverter(cfg.inverter);
                  const Money base = c.f_obj();
                  auto more_panels = cfg;
                  more_panels.array.n_pp += 1;
                  more_panels.array.n_tp = more_panels.array.n_ps * more_panels.array.n_pp;
                  auto more_batteries = cfg;
                  more_batteries.bank.n_bp += 1;
                  more_batteries.bank.n_b_total = more_batteries.bank.n_bs * more_batteries.bank.n_bp;
                  auto dear_p = pn;
                  dear_p.unit_cost += Money::from_cents(1);
                  auto dear_b = bt;
                  dear_b.unit_cost += Money::from_cents(1);
                  auto dear_c = ct;
                  dear_c.unit_cost += Money::from_cents(1);
                  auto dear_i = iv;
                  dear_i.unit_cost += Money::from_cents(1);
                  cost_bad += !(eval.evaluate(more_panels, pn, bt, ct, iv).total > base);
                  cost_bad += !(eval.evaluate(more_batteries, pn, bt, ct, iv).total > base);
                  cost_bad += !(eval.evaluate(cfg, dear_p, bt, ct, iv).total > base);
                  cost_bad += !(eval.evaluate(cfg, pn, dear_b, ct, iv).total > base);
                  cost_bad += !(eval.evaluate(cfg, pn, bt, dear_c, iv).total > base);
                  cost_bad += !(eval.evaluate(cfg, pn, bt, ct, dear_i).total > base);
                }

                const auto before = brute_force_optimum(t.instance, t.catalog, t.model);
                auto bigger = t.catalog;
                switch (i % 4) {
                  case 0: bigger.panels.push_back(fixtures::random_panel(rng, 100)); break;
                  case 1: bigger.batteries.push_back(fixtures::random_battery(rng, 100)); break;
                  case 2: bigger.controllers.push_back(fixtures::random_controller(rng, 100)); break;
                  default: bigger.inverters.push_back(fixtures::random_inverter(rng, 100)); break;
                }
                const auto after = brute_force_optimum(t.instance, bigger, t.model);
                if (before.sat()) {
                  ++sat;
                  aug_bad += !after.sat() || after.candidate->f_obj() > before.candidate->f_obj();
                }
              }
              d = fmt::format("{} cost violations, {} augmentation violations, {} sat instances", cost_bad, aug_bad,
                              sat);
              return cost_bad == 0 && aug_bad == 0 && sat > 0;
            });

  fmt::print("{} criteria failed\n", failures);
  return failures;
}
