#include <cstdlib>
#include <string>

#include "pvsynth/kernels.hpp"

namespace pvsynth::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(PVSYNTH_HAVE_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

KernelTable select() {
  const auto tables = available();
  if (const char* forced = std::getenv("PVSYNTH_ISA")) {
    for (const auto& t : tables)
      if (to_string(t.isa) == forced) return t;
  }
  return tables.back();
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

std::vector<KernelTable> available() {
  std::vector<KernelTable> tables{{Isa::scalar, scalar::first_at_or_below, scalar::argmin, scalar::count_at_or_below}};
#if defined(PVSYNTH_HAVE_AVX2)
  if (cpu_has_avx2())
    tables.push_back({Isa::avx2, avx2::first_at_or_below, avx2::argmin, avx2::count_at_or_below});
#endif
#if defined(PVSYNTH_HAVE_NEON)
  tables.push_back({Isa::neon, neon::first_at_or_below, neon::argmin, neon::count_at_or_below});
#endif
  return tables;
}

const KernelTable& active() {
  static const KernelTable table = select();
  return table;
}

}  // namespace pvsynth::kernels
