#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Data-parallel inner loops used by the analytics modules: snapshot-cell
// match counting for the similarity index, and flat double reductions for
// correlation and fit objectives. Each kernel has a scalar reference
// implementation and an AVX2 variant; the active set is chosen once at
// runtime from CPU features. TRACE_LAB_NO_SIMD=1 forces the scalar set.

namespace tracelab::kernels {

struct Ops {
    const char* name;
    // Count of positions where a[i] == b[i] and a[i] is a valid location
    // (>= 0). Offline cells are encoded as negative values.
    std::size_t (*count_colocated)(const std::int32_t* a, const std::int32_t* b,
                                   std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    double (*sum_sq_diff)(const double* x, const double* y, std::size_t n);
};

const Ops& scalar_ops();
// Null when the binary has no AVX2 translation unit or the CPU lacks AVX2.
const Ops* avx2_ops();
// The runtime-selected set (AVX2 when available, else scalar).
const Ops& active_ops();

inline std::size_t count_colocated(std::span<const std::int32_t> a,
                                   std::span<const std::int32_t> b) {
    return active_ops().count_colocated(a.data(), b.data(),
                                        a.size() < b.size() ? a.size() : b.size());
}

inline double sum(std::span<const double> x) {
    return active_ops().sum(x.data(), x.size());
}

inline double dot(std::span<const double> x, std::span<const double> y) {
    return active_ops().dot(x.data(), y.data(),
                            x.size() < y.size() ? x.size() : y.size());
}

inline double sum_sq_diff(std::span<const double> x, std::span<const double> y) {
    return active_ops().sum_sq_diff(x.data(), y.data(),
                                    x.size() < y.size() ? x.size() : y.size());
}

}  // namespace tracelab::kernels
