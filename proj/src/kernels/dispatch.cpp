#include <cstdlib>

#include "deolog/kernels.hpp"

namespace deolog::kernels {

#if defined(DEOLOG_HAVE_AVX2)
const Table& avx2_table();
#endif

const Table* avx2() {
#if defined(DEOLOG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  }();
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() {
  static const Table& chosen = [] () -> const Table& {
    const char* force = std::getenv("DEOLOG_FORCE_SCALAR");
    if (force && *force && *force != '0') return scalar();
    const Table* v = avx2();
    return v ? *v : scalar();
  }();
  return chosen;
}

}  // namespace deolog::kernels
