#pragma once

#include "kap/dd.hpp"

#include <cstddef>
#include <cstdint>

namespace kap {

enum class SimdMode { Auto, ForceScalar, ForceAvx2 };

using ReciprocalFn = TD (*)(const std::uint64_t*, std::size_t);
using WeightedFn = TD (*)(const std::uint64_t*, const std::uint64_t*, std::size_t);

// Reference backend, always present.
TD sum_recip_scalar(const std::uint64_t* n, std::size_t count);
TD sum_weighted_scalar(const std::uint64_t* n, const std::uint64_t* w, std::size_t count);

// AVX2 backend; linked in only when the toolchain can target AVX2+FMA
// (KAP_HAVE_AVX2). Calling through resolve_* never reaches these on an
// unsupported CPU.
#if defined(KAP_HAVE_AVX2)
TD sum_recip_avx2(const std::uint64_t* n, std::size_t count);
TD sum_weighted_avx2(const std::uint64_t* n, const std::uint64_t* w, std::size_t count);
#endif

bool avx2_built();
bool avx2_usable();

// Picks the backend for `mode`; throws std::runtime_error for ForceAvx2 when
// AVX2 is unavailable.
ReciprocalFn resolve_sum_recip(SimdMode mode);
WeightedFn resolve_sum_weighted(SimdMode mode);
const char* backend_name(SimdMode mode);

namespace lanes {

// Both backends accumulate into four independent lanes: element i of the
// block region (the first count - count%4 elements) goes to lane i%4, and the
// trailing count%4 elements go to lanes 0.. afterward. The scalar backend
// steps the lanes one at a time, the AVX2 backend steps all four per vector
// op, but the per-lane value/operation sequence is identical, so the two are
// bit-equal, not merely close. The block phase exports raw lane states plus
// the shared renormalization phase, and everything after that runs through
// the common code below.
inline constexpr std::size_t kCount = 4;

struct BlockState {
    TD lane[kCount];
    unsigned pending = 0;  // adds per lane since the last renormalization
};

// Tail contributions and the lane merge. tail_count < 4.
inline TD finish(const BlockState& st, const DD* tail_terms, std::size_t tail_count) {
    TdAcc acc[kCount];
    for (std::size_t l = 0; l < kCount; ++l) acc[l].set_raw(st.lane[l], st.pending);
    for (std::size_t i = 0; i < tail_count; ++i) acc[i].add(tail_terms[i]);
    TD total = acc[0].value();
    for (std::size_t l = 1; l < kCount; ++l) total = td_add(total, acc[l].value());
    return total;
}

inline TD finish_recip(const BlockState& st, const std::uint64_t* tail, std::size_t tail_count) {
    DD terms[kCount];
    for (std::size_t i = 0; i < tail_count; ++i)
        terms[i] = dd_recip(static_cast<double>(tail[i]));
    return finish(st, terms, tail_count);
}

inline TD finish_weighted(const BlockState& st, const std::uint64_t* tail,
                          const std::uint64_t* wtail, std::size_t tail_count) {
    DD terms[kCount];
    for (std::size_t i = 0; i < tail_count; ++i)
        terms[i] = dd_scale(dd_recip(static_cast<double>(tail[i])),
                            static_cast<double>(wtail[i]));
    return finish(st, terms, tail_count);
}

}  // namespace lanes

}  // namespace kap
