#pragma once

// Emits the search as a self-contained program in a small C-like subset, for
// an external bounded model checker or the interpreter in the test suite.
//
// Subset: `const` scalar and array declarations at file scope; inside main,
// typed declarations, `assume(e)`, `assert(e)`, `return e`. Expressions use C
// precedence with `?:`, casts to `long long`/`double`, and the builtins
// nondet_index(n) (any integer in [0, n)), ceil, floor, llround. Integer
// arithmetic is at least 128 bits wide (`__int128` for money values).

#include <string>

#include "pvsynth/catalog.hpp"
#include "pvsynth/cost.hpp"
#include "pvsynth/money.hpp"
#include "pvsynth/sizing.hpp"

namespace pvsynth {

/// Byte-identical for identical inputs; LF line endings. The assertion is
/// violated exactly by feasible selections costing at most `hint_cost`.
std::string emit_verification_program(const SizingInstance& instance, const EquipmentCatalog& catalog,
                                      const CostModel& cost_model, Money hint_cost);

/// Hex SHA-256 over the canonical JSON of the four inputs.
std::string verification_input_hash(const SizingInstance& instance, const EquipmentCatalog& catalog,
                                    const CostModel& cost_model, Money hint_cost);

}  // namespace pvsynth
