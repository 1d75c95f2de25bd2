#include "pipeserve/kernels/simd.hpp"

namespace pipeserve::simd {

namespace {

double dot_scalar(const float* a, const float* b, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += double(a[i]) * double(b[i]);
    return acc;
}

double sum_squares_scalar(const float* x, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += double(x[i]) * double(x[i]);
    return acc;
}

double dot_centered_scalar(const float* row, const float* x, const float* mean, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += double(row[i]) * (double(x[i]) - double(mean[i]));
    return acc;
}

void sqdist_rows_scalar(const float* rows, size_t k, size_t d, const float* x, float* out) {
    for (size_t i = 0; i < k; ++i) {
        const float* c = rows + i * d;
        double acc = 0.0;
        for (size_t j = 0; j < d; ++j) {
            double diff = double(x[j]) - double(c[j]);
            acc += diff * diff;
        }
        out[i] = static_cast<float>(acc);
    }
}

void scale_scalar(const float* x, double s, float* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = static_cast<float>(double(x[i]) * s);
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{
        "scalar", dot_scalar, sum_squares_scalar, dot_centered_scalar, sqdist_rows_scalar,
        scale_scalar,
    };
    return ops;
}

double dot_sparse(const float* w, const uint32_t* idx, const float* val, size_t nnz) {
    double acc = 0.0;
    for (size_t i = 0; i < nnz; ++i) acc += double(w[idx[i]]) * double(val[i]);
    return acc;
}

double sum_squares_sparse(const float* val, size_t nnz) {
    double acc = 0.0;
    for (size_t i = 0; i < nnz; ++i) acc += double(val[i]) * double(val[i]);
    return acc;
}

}  // namespace pipeserve::simd
