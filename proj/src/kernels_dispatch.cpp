#include "adiagap/kernels.hpp"

namespace adiagap::kernels {

bool cpu_has_avx2() {
#if defined(ADIAGAP_AVX2_BUILT) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace adiagap::kernels
