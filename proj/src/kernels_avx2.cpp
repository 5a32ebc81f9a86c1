// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma in its own translation
// unit; callers reach these only through the runtime dispatch in kernels.cpp.

#include <immintrin.h>

#include <bit>
#include <cstdint>

#include "tracelab/kernels.hpp"

namespace tracelab::kernels {

namespace {

std::size_t count_colocated_avx2(const std::int32_t* a, const std::int32_t* b,
                                 std::size_t n) {
    std::size_t count = 0;
    std::size_t i = 0;
    const __m256i all_ones = _mm256_set1_epi32(-1);
    for (; i + 8 <= n; i += 8) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i eq = _mm256_cmpeq_epi32(va, vb);
        // a[i] >= 0  <=>  a[i] > -1
        __m256i nonneg = _mm256_cmpgt_epi32(va, all_ones);
        __m256i hit = _mm256_and_si256(eq, nonneg);
        unsigned mask = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(hit)));
        count += static_cast<std::size_t>(std::popcount(mask));
    }
    for (; i < n; ++i) count += (a[i] == b[i] && a[i] >= 0) ? 1 : 0;
    return count;
}

double reduce_add_f64x4(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(s, s);
    return _mm_cvtsd_f64(_mm_add_sd(s, swapped));
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    }
    double total = reduce_add_f64x4(acc);
    for (; i < n; ++i) total += x[i];
    return total;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    }
    double total = reduce_add_f64x4(acc);
    for (; i < n; ++i) total += x[i] * y[i];
    return total;
}

double sum_sq_diff_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double total = reduce_add_f64x4(acc);
    for (; i < n; ++i) {
        double d = x[i] - y[i];
        total += d * d;
    }
    return total;
}

constexpr Ops kAvx2Ops{
    "avx2", count_colocated_avx2, sum_avx2, dot_avx2, sum_sq_diff_avx2,
};

}  // namespace

const Ops* avx2_ops() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") ? &kAvx2Ops
                                                                           : nullptr;
#else
    return nullptr;
#endif
}

}  // namespace tracelab::kernels
