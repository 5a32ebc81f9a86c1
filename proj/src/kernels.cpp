#include "tracelab/kernels.hpp"

#include <cstdlib>

namespace tracelab::kernels {

namespace {

std::size_t count_colocated_scalar(const std::int32_t* a, const std::int32_t* b,
                                   std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        count += (a[i] == b[i] && a[i] >= 0) ? 1 : 0;
    }
    return count;
}

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double sum_sq_diff_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = x[i] - y[i];
        acc += d * d;
    }
    return acc;
}

constexpr Ops kScalarOps{
    "scalar", count_colocated_scalar, sum_scalar, dot_scalar, sum_sq_diff_scalar,
};

const Ops* select_active() {
    if (const char* env = std::getenv("TRACE_LAB_NO_SIMD");
        env && env[0] == '1') {
        return &kScalarOps;
    }
    if (const Ops* avx2 = avx2_ops()) return avx2;
    return &kScalarOps;
}

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

#if !defined(TRACELAB_HAVE_AVX2_TU)
const Ops* avx2_ops() { return nullptr; }
#endif

const Ops& active_ops() {
    static const Ops* active = select_active();
    return *active;
}

}  // namespace tracelab::kernels
