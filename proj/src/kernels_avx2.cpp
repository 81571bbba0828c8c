#include "kap/kernels.hpp"

#if defined(KAP_HAVE_AVX2)

#include <immintrin.h>

namespace kap {

namespace {

struct V2 {
    __m256d s, e;
};

// Elementwise Knuth two_sum, op for op the same as the scalar version.
inline V2 vtwo_sum(__m256d a, __m256d b) {
    __m256d s = _mm256_add_pd(a, b);
    __m256d bb = _mm256_sub_pd(s, a);
    __m256d err =
        _mm256_add_pd(_mm256_sub_pd(a, _mm256_sub_pd(s, bb)), _mm256_sub_pd(b, bb));
    return {s, err};
}

// u64 -> double through the 2^52 bias trick; exact for n < 2^52 and therefore
// equal to the scalar static_cast on every sieve value.
inline __m256d to_double(__m256i v) {
    const __m256i bias_i = _mm256_set1_epi64x(0x4330000000000000LL);
    const __m256d bias_d = _mm256_set1_pd(4503599627370496.0);
    return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(v, bias_i)), bias_d);
}

// Four TdAcc lanes in three registers, renormalizing on the shared cadence.
struct VAcc {
    __m256d t0 = _mm256_setzero_pd();
    __m256d t1 = _mm256_setzero_pd();
    __m256d t2 = _mm256_setzero_pd();
    unsigned pending = 0;

    inline void add(__m256d hi, __m256d lo) {
        V2 s0 = vtwo_sum(t0, hi);
        t0 = s0.s;
        V2 s1 = vtwo_sum(t1, lo);
        V2 s2 = vtwo_sum(s1.s, s0.e);
        t1 = s2.s;
        t2 = _mm256_add_pd(t2, _mm256_add_pd(s1.e, s2.e));
        if (++pending == TdAcc::RENORM_EVERY) renorm();
    }

    void renorm() {
        V2 a = vtwo_sum(t1, t2);
        V2 b = vtwo_sum(t0, a.s);
        V2 c = vtwo_sum(b.e, a.e);
        t0 = b.s;
        t1 = c.s;
        t2 = c.e;
        pending = 0;
    }

    lanes::BlockState state() const {
        alignas(32) double b0[4], b1[4], b2[4];
        _mm256_store_pd(b0, t0);
        _mm256_store_pd(b1, t1);
        _mm256_store_pd(b2, t2);
        lanes::BlockState st;
        st.pending = pending;
        for (std::size_t l = 0; l < lanes::kCount; ++l) st.lane[l] = {b0[l], b1[l], b2[l]};
        return st;
    }
};

}  // namespace

TD sum_recip_avx2(const std::uint64_t* n, std::size_t count) {
    const std::size_t blocks = count / lanes::kCount;
    const __m256d ones = _mm256_set1_pd(1.0);
    VAcc acc;
    for (std::size_t b = 0; b < blocks; ++b) {
        __m256i v =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(n + lanes::kCount * b));
        __m256d nd = to_double(v);
        __m256d hi = _mm256_div_pd(ones, nd);
        __m256d r = _mm256_fnmadd_pd(hi, nd, ones);  // fma(-hi, n, 1)
        __m256d lo = _mm256_mul_pd(r, hi);
        acc.add(hi, lo);
    }
    return lanes::finish_recip(acc.state(), n + blocks * lanes::kCount,
                               count % lanes::kCount);
}

TD sum_weighted_avx2(const std::uint64_t* n, const std::uint64_t* w, std::size_t count) {
    const std::size_t blocks = count / lanes::kCount;
    const __m256d ones = _mm256_set1_pd(1.0);
    VAcc acc;
    for (std::size_t b = 0; b < blocks; ++b) {
        __m256i vn =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(n + lanes::kCount * b));
        __m256i vw =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + lanes::kCount * b));
        __m256d nd = to_double(vn);
        __m256d wd = to_double(vw);
        __m256d hi = _mm256_div_pd(ones, nd);
        __m256d r = _mm256_fnmadd_pd(hi, nd, ones);
        __m256d lo = _mm256_mul_pd(r, hi);
        __m256d ph = _mm256_mul_pd(wd, hi);
        __m256d e = _mm256_fmsub_pd(wd, hi, ph);   // fma(w, hi, -ph)
        __m256d pl = _mm256_fmadd_pd(wd, lo, e);   // fma(w, lo, e)
        acc.add(ph, pl);
    }
    return lanes::finish_weighted(acc.state(), n + blocks * lanes::kCount,
                                  w + blocks * lanes::kCount, count % lanes::kCount);
}

}  // namespace kap

#endif  // KAP_HAVE_AVX2
