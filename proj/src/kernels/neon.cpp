#include <arm_neon.h>

#include "pvsynth/kernels.hpp"

namespace pvsynth::kernels::neon {

std::size_t first_at_or_below(const std::int64_t* costs, std::size_t n, std::int64_t bound) {
  const int64x2_t limit = vdupq_n_s64(bound);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const uint64x2_t m0 = vcleq_s64(vld1q_s64(costs + i), limit);
    const uint64x2_t m1 = vcleq_s64(vld1q_s64(costs + i + 2), limit);
    const uint64x2_t m2 = vcleq_s64(vld1q_s64(costs + i + 4), limit);
    const uint64x2_t m3 = vcleq_s64(vld1q_s64(costs + i + 6), limit);
    const uint64x2_t any = vorrq_u64(vorrq_u64(m0, m1), vorrq_u64(m2, m3));
    if (vmaxvq_u32(vreinterpretq_u32_u64(any)) != 0) break;
  }
  for (; i < n; ++i)
    if (costs[i] <= bound) return i;
  return n;
}

std::size_t argmin(const std::int64_t* costs, std::size_t n) {
  if (n < 4) return scalar::argmin(costs, n);
  int64x2_t best = vld1q_s64(costs);
  int64x2_t best_idx = {0, 1};
  int64x2_t idx = best_idx;
  const int64x2_t step = vdupq_n_s64(2);
  std::size_t i = 2;
  for (; i + 2 <= n; i += 2) {
    idx = vaddq_s64(idx, step);
    const int64x2_t v = vld1q_s64(costs + i);
    const uint64x2_t lt = vcltq_s64(v, best);
    best = vbslq_s64(lt, v, best);
    best_idx = vbslq_s64(lt, idx, best_idx);
  }
  std::int64_t value = vgetq_lane_s64(best, 0);
  auto result = static_cast<std::size_t>(vgetq_lane_s64(best_idx, 0));
  const std::int64_t v1 = vgetq_lane_s64(best, 1);
  const auto i1 = static_cast<std::size_t>(vgetq_lane_s64(best_idx, 1));
  if (v1 < value || (v1 == value && i1 < result)) {
    value = v1;
    result = i1;
  }
  for (; i < n; ++i)
    if (costs[i] < value) {
      value = costs[i];
      result = i;
    }
  return result;
}

std::size_t count_at_or_below(const std::int64_t* costs, std::size_t n, std::int64_t bound) {
  const int64x2_t limit = vdupq_n_s64(bound);
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vsubq_u64(acc, vcleq_s64(vld1q_s64(costs + i), limit));
  std::size_t count = static_cast<std::size_t>(vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1));
  for (; i < n; ++i) count += costs[i] <= bound ? 1 : 0;
  return count;
}

}  // namespace pvsynth::kernels::neon
