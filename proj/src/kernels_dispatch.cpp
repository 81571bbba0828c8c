#include "kap/kernels.hpp"

#include <stdexcept>

namespace kap {

bool avx2_built() {
#if defined(KAP_HAVE_AVX2)
    return true;
#else
    return false;
#endif
}

bool avx2_usable() {
#if defined(KAP_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

ReciprocalFn resolve_sum_recip(SimdMode mode) {
    if (mode == SimdMode::ForceScalar) return sum_recip_scalar;
#if defined(KAP_HAVE_AVX2)
    if (avx2_usable()) return sum_recip_avx2;
#endif
    if (mode == SimdMode::ForceAvx2)
        throw std::runtime_error("AVX2 backend unavailable on this build or CPU");
    return sum_recip_scalar;
}

WeightedFn resolve_sum_weighted(SimdMode mode) {
    if (mode == SimdMode::ForceScalar) return sum_weighted_scalar;
#if defined(KAP_HAVE_AVX2)
    if (avx2_usable()) return sum_weighted_avx2;
#endif
    if (mode == SimdMode::ForceAvx2)
        throw std::runtime_error("AVX2 backend unavailable on this build or CPU");
    return sum_weighted_scalar;
}

const char* backend_name(SimdMode mode) {
    if (mode != SimdMode::ForceScalar && avx2_usable()) return "avx2";
    return "scalar";
}

}  // namespace kap
