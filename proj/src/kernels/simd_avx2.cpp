#if defined(__x86_64__)

#include <immintrin.h>

#include "pipeserve/kernels/simd.hpp"

namespace pipeserve::simd {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

inline __m256d lo_pd(__m256 v) { return _mm256_cvtps_pd(_mm256_castps256_ps128(v)); }
inline __m256d hi_pd(__m256 v) { return _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1)); }

double dot_avx2(const float* a, const float* b, size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 va = _mm256_loadu_ps(a + i);
        __m256 vb = _mm256_loadu_ps(b + i);
        acc0 = _mm256_fmadd_pd(lo_pd(va), lo_pd(vb), acc0);
        acc1 = _mm256_fmadd_pd(hi_pd(va), hi_pd(vb), acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += double(a[i]) * double(b[i]);
    return acc;
}

double sum_squares_avx2(const float* x, size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_loadu_ps(x + i);
        __m256d l = lo_pd(v), h = hi_pd(v);
        acc0 = _mm256_fmadd_pd(l, l, acc0);
        acc1 = _mm256_fmadd_pd(h, h, acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += double(x[i]) * double(x[i]);
    return acc;
}

double dot_centered_avx2(const float* row, const float* x, const float* mean, size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 vr = _mm256_loadu_ps(row + i);
        __m256 vx = _mm256_loadu_ps(x + i);
        __m256 vm = _mm256_loadu_ps(mean + i);
        __m256d cl = _mm256_sub_pd(lo_pd(vx), lo_pd(vm));
        __m256d ch = _mm256_sub_pd(hi_pd(vx), hi_pd(vm));
        acc0 = _mm256_fmadd_pd(lo_pd(vr), cl, acc0);
        acc1 = _mm256_fmadd_pd(hi_pd(vr), ch, acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += double(row[i]) * (double(x[i]) - double(mean[i]));
    return acc;
}

void sqdist_rows_avx2(const float* rows, size_t k, size_t d, const float* x, float* out) {
    for (size_t r = 0; r < k; ++r) {
        const float* c = rows + r * d;
        __m256d acc0 = _mm256_setzero_pd();
        __m256d acc1 = _mm256_setzero_pd();
        size_t i = 0;
        for (; i + 8 <= d; i += 8) {
            __m256 vx = _mm256_loadu_ps(x + i);
            __m256 vc = _mm256_loadu_ps(c + i);
            __m256d dl = _mm256_sub_pd(lo_pd(vx), lo_pd(vc));
            __m256d dh = _mm256_sub_pd(hi_pd(vx), hi_pd(vc));
            acc0 = _mm256_fmadd_pd(dl, dl, acc0);
            acc1 = _mm256_fmadd_pd(dh, dh, acc1);
        }
        double acc = hsum(_mm256_add_pd(acc0, acc1));
        for (; i < d; ++i) {
            double diff = double(x[i]) - double(c[i]);
            acc += diff * diff;
        }
        out[r] = static_cast<float>(acc);
    }
}

void scale_avx2(const float* x, double s, float* y, size_t n) {
    __m256d vs = _mm256_set1_pd(s);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_loadu_ps(x + i);
        __m128 lo = _mm256_cvtpd_ps(_mm256_mul_pd(lo_pd(v), vs));
        __m128 hi = _mm256_cvtpd_ps(_mm256_mul_pd(hi_pd(v), vs));
        _mm256_storeu_ps(y + i, _mm256_set_m128(hi, lo));
    }
    for (; i < n; ++i) y[i] = static_cast<float>(double(x[i]) * s);
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops{
        "avx2", dot_avx2, sum_squares_avx2, dot_centered_avx2, sqdist_rows_avx2, scale_avx2,
    };
    return ops;
}

}  // namespace pipeserve::simd

#endif  // __x86_64__
