#include <immintrin.h>

#include "ncairy/simd.hpp"

namespace ncairy::simd::avx2 {

// Two complex numbers per register. The lane arithmetic matches the scalar
// kernel operation for operation, so results are bitwise identical.
void csub_scaled(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const double* xs = reinterpret_cast<const double*>(x);
    double* ys = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        __m256d xsw = _mm256_permute_pd(xv, 0b0101);
        __m256d t1 = _mm256_mul_pd(ar, xv);
        __m256d t2 = _mm256_mul_pd(ai, xsw);
        __m256d prod = _mm256_addsub_pd(t1, t2);
        __m256d yv = _mm256_loadu_pd(ys + 2 * i);
        _mm256_storeu_pd(ys + 2 * i, _mm256_sub_pd(yv, prod));
    }
    if (i < n) scalar::csub_scaled(n - i, a, x + i, y + i);
}

double dot(std::size_t n, const double* x, const double* y) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

} // namespace ncairy::simd::avx2
