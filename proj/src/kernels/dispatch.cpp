#include <cstdlib>
#include <string_view>

#include "fgiqa/kernels.hpp"

namespace fgiqa::kernels {

#if defined(FGIQA_WITH_AVX2)
const KernelTable& avx2_table_impl();
#endif

const KernelTable* avx2_table() {
#if defined(FGIQA_WITH_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* forced = std::getenv("FGIQA_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
    if (const KernelTable* wide = avx2_table()) return *wide;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace fgiqa::kernels
