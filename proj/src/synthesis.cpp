#include "pvsynth/synthesis.hpp"

#include <algorithm>
#include <thread>

#include "pvsynth/kernels.hpp"

namespace pvsynth {

namespace {

using Clock = std::chrono::steady_clock;

// Candidates whose panel index lies in [first, last), canonical order.
std::vector<Candidate> enumerate_panels(const SizingInstance& in, const EquipmentCatalog& cat,
                                        const LifeCycleCost& cost, std::size_t first, std::size_t last) {
  std::vector<Candidate> out;
  const std::size_t nb = cat.batteries.size();
  const std::size_t nc = cat.controllers.size();
  const std::size_t ni = cat.inverters.size();
  for (std::size_t p = first; p < last; ++p)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t i = 0; i < ni; ++i) {
          const auto& panel = cat.panels[p];
          const auto& battery = cat.batteries[b];
          const auto& controller = cat.controllers[c];
          const auto& inverter = cat.inverters[i];
          auto outcome = size_candidate(in, panel, battery, controller, inverter);
          if (auto* cfg = std::get_if<FeasibleConfig>(&outcome)) {
            Candidate cand;
            cand.cost = cost.evaluate(*cfg, panel, battery, controller, inverter);
            cand.config = std::move(*cfg);
            cand.ordinal = ((p * nb + b) * nc + c) * ni + i;
            out.push_back(std::move(cand));
          }
        }
  return out;
}

std::vector<std::int64_t> cost_table(const std::vector<Candidate>& candidates) {
  std::vector<std::int64_t> costs;
  costs.reserve(candidates.size());
  for (const auto& c : candidates) costs.push_back(c.f_obj().cents());
  return costs;
}

unsigned resolve_workers(unsigned workers) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return workers;
}

}  // namespace

std::string_view to_string(Strategy s) noexcept {
  return s == Strategy::linear ? "linear" : "bisection";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "linear") return Strategy::linear;
  if (text == "bisection") return Strategy::bisection;
  throw ValidationError("synthesis", "strategy", "expected \"linear\" or \"bisection\"");
}

void validate_synthesis_config(const SynthesisConfig& c) {
  if (c.cost_step.cents() < 1) throw ValidationError("synthesis", "cost_step", "must be >= 0.01");
  if (c.max_cost.cents() < 1) throw ValidationError("synthesis", "max_cost", "must be > 0");
}

BoundExhausted::BoundExhausted(Money max_cost, SynthesisStats stats)
    : Error("feasible candidates exist but none costs at most " + max_cost.to_display() + " (" +
            std::to_string(stats.feasible) + " feasible)"),
      max_cost_(max_cost),
      stats_(stats) {}

std::vector<Candidate> enumerate_feasible(const SizingInstance& in, const EquipmentCatalog& cat,
                                          const CostModel& cost_model, unsigned workers) {
  validate_instance(in);
  const LifeCycleCost cost(cost_model);
  const std::size_t np = cat.panels.size();
  workers = std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(std::max<std::size_t>(np, 1)));
  if (workers <= 1) return enumerate_panels(in, cat, cost, 0, np);

  // Contiguous panel ranges, concatenated in range order: the result is the
  // same sequence the serial loop produces.
  std::vector<std::vector<Candidate>> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t first = np * w / workers;
      const std::size_t last = np * (w + 1) / workers;
      threads.emplace_back([&, w, first, last] {
        try {
          parts[w] = enumerate_panels(in, cat, cost, first, last);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Candidate> out;
  for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(out));
  return out;
}

SynthesisResult brute_force_optimum(const SizingInstance& in, const EquipmentCatalog& cat,
                                    const CostModel& cost_model, unsigned workers) {
  const auto start = Clock::now();
  auto candidates = enumerate_feasible(in, cat, cost_model, workers);
  SynthesisResult r;
  r.stats.quadruples = cat.combinations();
  r.stats.feasible = candidates.size();
  if (!candidates.empty()) {
    const auto costs = cost_table(candidates);
    const std::size_t best = kernels::argmin(costs);
    r.outcome = SynthesisResult::Outcome::sat;
    r.candidate = std::move(candidates[best]);
    r.hint_cost_at_stop = r.candidate->f_obj();
    r.stats.candidates_examined = candidates.size();
  }
  r.stats.wall_time = Clock::now() - start;
  return r;
}

SynthesisResult cegis_synthesize(const SizingInstance& in, const EquipmentCatalog& cat, const CostModel& cost_model,
                                 const SynthesisConfig& config) {
  validate_synthesis_config(config);
  const auto start = Clock::now();

  auto candidates = enumerate_feasible(in, cat, cost_model, config.workers);
  SynthesisResult r;
  r.stats.quadruples = cat.combinations();
  r.stats.feasible = candidates.size();
  if (candidates.empty()) {
    r.stats.wall_time = Clock::now() - start;
    return r;
  }

  const auto costs = cost_table(candidates);
  const std::span<const std::int64_t> table(costs);
  const std::int64_t max_cost = config.max_cost.cents();

  // One Verify run: is the assertion f_obj > bound violated by any candidate?
  auto verify = [&](std::int64_t bound) {
    ++r.stats.iterations;
    const std::size_t hit = kernels::first_at_or_below(table, bound);
    r.stats.candidates_examined += hit < table.size() ? hit + 1 : table.size();
    return hit;
  };
  auto finish = [&](std::size_t hit, std::int64_t bound) {
    r.outcome = SynthesisResult::Outcome::sat;
    r.candidate = std::move(candidates[hit]);
    r.hint_cost_at_stop = Money::from_cents(bound);
    r.stats.wall_time = Clock::now() - start;
    return r;
  };

  if (config.strategy == Strategy::linear) {
    const std::int64_t step = config.cost_step.cents();
    for (std::int64_t bound = 0; bound <= max_cost; bound += step) {
      const std::size_t hit = verify(bound);
      if (hit < table.size()) return finish(hit, bound);
    }
  } else {
    if (verify(max_cost) < table.size()) {
      std::int64_t lo = 0;
      std::int64_t hi = max_cost;
      while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (verify(mid) < table.size())
          hi = mid;
        else
          lo = mid + 1;
      }
      return finish(verify(lo), lo);
    }
  }
  r.stats.wall_time = Clock::now() - start;
  throw BoundExhausted(config.max_cost, r.stats);
}

std::size_t replay_feasible_count(const SizingInstance& in, const EquipmentCatalog& cat) {
  std::size_t count = 0;
  for (const auto& p : cat.panels)
    for (const auto& b : cat.batteries)
      for (const auto& c : cat.controllers)
        for (const auto& i : cat.inverters)
          count += std::holds_alternative<FeasibleConfig>(size_candidate(in, p, b, c, i)) ? 1 : 0;
  return count;
}

}  // namespace pvsynth
