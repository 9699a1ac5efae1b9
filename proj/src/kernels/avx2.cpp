#include <immintrin.h>

#include <limits>

#include "pvsynth/kernels.hpp"

namespace pvsynth::kernels::avx2 {

namespace {

inline __m256i load(const std::int64_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }

// Lane mask of (v < limit), one bit per 64-bit lane.
inline int below(__m256i v, __m256i limit) {
  return _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpgt_epi64(limit, v)));
}

}  // namespace

std::size_t first_at_or_below(const std::int64_t* costs, std::size_t n, std::int64_t bound) {
  if (bound == std::numeric_limits<std::int64_t>::max()) return 0 < n ? 0 : n;
  const __m256i limit = _mm256_set1_epi64x(bound + 1);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const __m256i m0 = _mm256_cmpgt_epi64(limit, load(costs + i));
    const __m256i m1 = _mm256_cmpgt_epi64(limit, load(costs + i + 4));
    const __m256i m2 = _mm256_cmpgt_epi64(limit, load(costs + i + 8));
    const __m256i m3 = _mm256_cmpgt_epi64(limit, load(costs + i + 12));
    const __m256i any = _mm256_or_si256(_mm256_or_si256(m0, m1), _mm256_or_si256(m2, m3));
    if (!_mm256_testz_si256(any, any)) break;
  }
  for (; i + 4 <= n; i += 4) {
    const int mask = below(load(costs + i), limit);
    if (mask) return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i)
    if (costs[i] <= bound) return i;
  return n;
}

std::size_t argmin(const std::int64_t* costs, std::size_t n) {
  if (n < 8) return scalar::argmin(costs, n);
  __m256i best = load(costs);
  __m256i best_idx = _mm256_setr_epi64x(0, 1, 2, 3);
  __m256i idx = best_idx;
  const __m256i step = _mm256_set1_epi64x(4);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) {
    idx = _mm256_add_epi64(idx, step);
    const __m256i v = load(costs + i);
    // Strict compare keeps the earliest index within each lane.
    const __m256i lt = _mm256_cmpgt_epi64(best, v);
    best = _mm256_blendv_epi8(best, v, lt);
    best_idx = _mm256_blendv_epi8(best_idx, idx, lt);
  }
  alignas(32) std::int64_t vals[4];
  alignas(32) std::int64_t idxs[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(vals), best);
  _mm256_store_si256(reinterpret_cast<__m256i*>(idxs), best_idx);
  std::size_t result = static_cast<std::size_t>(idxs[0]);
  std::int64_t value = vals[0];
  for (int lane = 1; lane < 4; ++lane) {
    const auto li = static_cast<std::size_t>(idxs[lane]);
    if (vals[lane] < value || (vals[lane] == value && li < result)) {
      value = vals[lane];
      result = li;
    }
  }
  for (; i < n; ++i)
    if (costs[i] < value) {
      value = costs[i];
      result = i;
    }
  return result;
}

std::size_t count_at_or_below(const std::int64_t* costs, std::size_t n, std::int64_t bound) {
  if (bound == std::numeric_limits<std::int64_t>::max()) return n;
  const __m256i limit = _mm256_set1_epi64x(bound + 1);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(below(load(costs + i), limit))));
  for (; i < n; ++i) count += costs[i] <= bound ? 1 : 0;
  return count;
}

}  // namespace pvsynth::kernels::avx2
