#pragma once

// Data-parallel kernels over the candidate cost table (integer cents).
// Each kernel has a scalar reference and optional SIMD variants; the active
// set is picked once at startup from CPU features and may be forced with
// PVSYNTH_ISA=scalar|avx2|neon.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pvsynth::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

/// Index of the first element <= bound, or n when there is none.
using FirstAtOrBelowFn = std::size_t (*)(const std::int64_t* costs, std::size_t n, std::int64_t bound);
/// Index of the first minimum element; n must be > 0.
using ArgMinFn = std::size_t (*)(const std::int64_t* costs, std::size_t n);
/// Number of elements <= bound.
using CountAtOrBelowFn = std::size_t (*)(const std::int64_t* costs, std::size_t n, std::int64_t bound);

struct KernelTable {
  Isa isa;
  FirstAtOrBelowFn first_at_or_below;
  ArgMinFn argmin;
  CountAtOrBelowFn count_at_or_below;
};

namespace scalar {
std::size_t first_at_or_below(const std::int64_t* costs, std::size_t n, std::int64_t bound);
std::size_t argmin(const std::int64_t* costs, std::size_t n);
std::size_t count_at_or_below(const std::int64_t* costs, std::size_t n, std::int64_t bound);
}  // namespace scalar

#if defined(PVSYNTH_HAVE_AVX2)
namespace avx2 {
std::size_t first_at_or_below(const std::int64_t* costs, std::size_t n, std::int64_t bound);
std::size_t argmin(const std::int64_t* costs, std::size_t n);
std::size_t count_at_or_below(const std::int64_t* costs, std::size_t n, std::int64_t bound);
}  // namespace avx2
#endif

#if defined(PVSYNTH_HAVE_NEON)
namespace neon {
std::size_t first_at_or_below(const std::int64_t* costs, std::size_t n, std::int64_t bound);
std::size_t argmin(const std::int64_t* costs, std::size_t n);
std::size_t count_at_or_below(const std::int64_t* costs, std::size_t n, std::int64_t bound);
}  // namespace neon
#endif

/// Tables compiled in and supported by this CPU; scalar is always first.
std::vector<KernelTable> available();
const KernelTable& active();

inline std::size_t first_at_or_below(std::span<const std::int64_t> costs, std::int64_t bound) {
  return active().first_at_or_below(costs.data(), costs.size(), bound);
}
inline std::size_t argmin(std::span<const std::int64_t> costs) { return active().argmin(costs.data(), costs.size()); }
inline std::size_t count_at_or_below(std::span<const std::int64_t> costs, std::int64_t bound) {
  return active().count_at_or_below(costs.data(), costs.size(), bound);
}

}  // namespace pvsynth::kernels
