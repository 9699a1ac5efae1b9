#include "pvsynth/kernels.hpp"

namespace pvsynth::kernels::scalar {

std::size_t first_at_or_below(const std::int64_t* costs, std::size_t n, std::int64_t bound) {
  for (std::size_t i = 0; i < n; ++i)
    if (costs[i] <= bound) return i;
  return n;
}

std::size_t argmin(const std::int64_t* costs, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (costs[i] < costs[best]) best = i;
  return best;
}

std::size_t count_at_or_below(const std::int64_t* costs, std::size_t n, std::int64_t bound) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += costs[i] <= bound ? 1 : 0;
  return count;
}

}  // namespace pvsynth::kernels::scalar
