#pragma once

// Synthesize/verify loop over an incrementally raised cost bound, plus the
// exhaustive reference search it is checked against.
//
// Synthesize: every quadruple of the catalog product goes through the sizing
// chain; the ones that pass become candidates with their life-cycle cost.
// Verify: for each bound, the first candidate in canonical order whose cost
// does not exceed the bound violates the cost assertion and is the answer.
// Nothing learned at one bound is carried to the next.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pvsynth/catalog.hpp"
#include "pvsynth/cost.hpp"
#include "pvsynth/errors.hpp"
#include "pvsynth/sizing.hpp"

namespace pvsynth {

enum class Strategy { linear, bisection };

std::string_view to_string(Strategy s) noexcept;
Strategy parse_strategy(std::string_view text);

struct SynthesisConfig {
  Money max_cost = Money::from_cents(100'000'000);
  Money cost_step = Money::from_cents(100);
  Strategy strategy = Strategy::linear;
  /// Threads for the Synthesize-phase enumeration; 0 means one per hardware thread.
  unsigned workers = 1;
};

void validate_synthesis_config(const SynthesisConfig& config);

struct Candidate {
  FeasibleConfig config;
  CostBreakdown cost;
  /// Position of the quadruple in the canonical (panel, battery, controller,
  /// inverter) product order.
  std::size_t ordinal = 0;

  Money f_obj() const noexcept { return cost.total; }
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct SynthesisStats {
  std::uint64_t quadruples = 0;           // sizing-chain evaluations
  std::uint64_t feasible = 0;             // candidates produced by Synthesize
  std::uint64_t iterations = 0;           // bounds tried by Verify
  std::uint64_t candidates_examined = 0;  // candidate-vs-bound checks
  std::chrono::nanoseconds wall_time{0};
};

struct SynthesisResult {
  enum class Outcome { sat, unsat };
  Outcome outcome = Outcome::unsat;
  std::optional<Candidate> candidate;  // set iff sat
  Money hint_cost_at_stop;             // bound at which the assertion broke
  SynthesisStats stats;

  bool sat() const noexcept { return outcome == Outcome::sat; }
};

/// Feasible candidates exist, but none at or below max_cost.
class BoundExhausted : public Error {
 public:
  BoundExhausted(Money max_cost, SynthesisStats stats);
  Money max_cost() const noexcept { return max_cost_; }
  const SynthesisStats& stats() const noexcept { return stats_; }

 private:
  Money max_cost_;
  SynthesisStats stats_;
};

/// Every feasible quadruple with its cost, in canonical order. Independent
/// of `workers`.
std::vector<Candidate> enumerate_feasible(const SizingInstance& instance, const EquipmentCatalog& catalog,
                                          const CostModel& cost_model, unsigned workers = 1);

/// Minimum-cost candidate by exhaustive scan; ties go to the earlier ordinal.
SynthesisResult brute_force_optimum(const SizingInstance& instance, const EquipmentCatalog& catalog,
                                    const CostModel& cost_model, unsigned workers = 1);

/// Throws BoundExhausted; returns unsat when no quadruple is feasible.
SynthesisResult cegis_synthesize(const SizingInstance& instance, const EquipmentCatalog& catalog,
                                 const CostModel& cost_model, const SynthesisConfig& config);

/// Serial replay of the sizing chain over every quadruple, counting the
/// feasible ones. Used to certify unsat outcomes.
std::size_t replay_feasible_count(const SizingInstance& instance, const EquipmentCatalog& catalog);

}  // namespace pvsynth
