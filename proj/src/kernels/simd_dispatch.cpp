#include <cstdlib>
#include <cstring>

#include "pipeserve/kernels/simd.hpp"

namespace pipeserve::simd {

bool avx2_available() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {
const Ops* select() {
    const char* env = std::getenv("PIPESERVE_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_ops();
#if defined(__x86_64__)
    if (avx2_available()) return &avx2_ops();
#endif
    return &scalar_ops();
}
}  // namespace

const Ops& active_ops() {
    static const Ops* ops = select();
    return *ops;
}

}  // namespace pipeserve::simd
