#pragma once

#include <cstddef>
#include <cstdint>

namespace pipeserve::simd {

// Data-parallel inner loops behind the physical stage kernels. Every
// operation has a scalar reference implementation and (on x86-64) an
// AVX2/FMA variant; the active set is chosen once at startup. Products and
// accumulation are carried in double so scalar and SIMD paths agree to
// summation-order rounding and pushed-through partial dot products match a
// direct dot product at 1e-9.

struct Ops {
    const char* name;

    double (*dot)(const float* a, const float* b, size_t n);
    double (*sum_squares)(const float* x, size_t n);
    // y[i] = (x[i] - mean[i]) for the row dot: out = sum_j rows[j] * (x[j] - mean[j])
    double (*dot_centered)(const float* row, const float* x, const float* mean, size_t n);
    // out[i] = squared L2 distance from x to centroid i (k rows of dim d)
    void (*sqdist_rows)(const float* rows, size_t k, size_t d, const float* x, float* out);
    // y[i] = float(x[i] * s)
    void (*scale)(const float* x, double s, float* y, size_t n);
};

const Ops& scalar_ops();
#if defined(__x86_64__)
const Ops& avx2_ops();
#endif

// Runtime-selected implementation: AVX2 when the CPU supports avx2+fma and
// PIPESERVE_SIMD is not set to "scalar".
const Ops& active_ops();
bool avx2_available();

// Sparse loops are gather-dominated; scalar only.
double dot_sparse(const float* w, const uint32_t* idx, const float* val, size_t nnz);
double sum_squares_sparse(const float* val, size_t nnz);

}  // namespace pipeserve::simd
