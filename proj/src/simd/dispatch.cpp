#include <cstdlib>
#include <string_view>

#include "kawactrl/simd/kernels.hpp"

namespace kawactrl::simd {

#if defined(KAWACTRL_HAVE_AVX2)
const KernelTable* avx2_kernels_unchecked() noexcept;
#endif

const KernelTable* avx2_kernels() noexcept {
#if defined(KAWACTRL_HAVE_AVX2)
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? avx2_kernels_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept {
  static const KernelTable* table = [] {
    const char* env = std::getenv("KAWACTRL_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") {
      return &scalar_kernels();
    }
    const KernelTable* fast = avx2_kernels();
    return fast != nullptr ? fast : &scalar_kernels();
  }();
  return *table;
}

}  // namespace kawactrl::simd
