#include <cstdlib>
#include <string_view>

#include "coursekit/kernels.hpp"

namespace coursekit::kernels {

#if defined(COURSEKIT_HAVE_AVX2)
const KernelTable* avx2_table();
#endif

const KernelTable* avx2() {
#if defined(COURSEKIT_HAVE_AVX2)
  return avx2_table();
#else
  return nullptr;
#endif
}

bool cpu_supports_avx2() {
#if defined(COURSEKIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const KernelTable& select() {
  if (const char* forced = std::getenv("COURSEKIT_KERNELS")) {
    if (std::string_view(forced) == "scalar") return scalar();
  }
  if (avx2() != nullptr && cpu_supports_avx2()) return *avx2();
  return scalar();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace coursekit::kernels
