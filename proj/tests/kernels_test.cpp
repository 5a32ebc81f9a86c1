#include <cstdint>
#include <vector>

#include "doctest.h"

#include "tracelab/kernels.hpp"
#include "tracelab/rng.hpp"

using namespace tracelab;

TEST_SUITE_BEGIN("kernels");

TEST_CASE("colocated counting ignores offline cells") {
    const std::vector<std::int32_t> a{0, 1, -1, 2, 3, -1};
    const std::vector<std::int32_t> b{0, 2, -1, 2, -1, 5};
    CHECK(kernels::count_colocated(a, b) == 2);
    const std::vector<std::int32_t> shorter{0, 2};
    CHECK(kernels::count_colocated(shorter, a) == 1);  // clipped to min length
    CHECK(kernels::count_colocated({}, {}) == 0);
}

TEST_CASE("double reductions on hand values") {
    const std::vector<double> x{1.0, 2.0, 3.5};
    const std::vector<double> y{2.0, -1.0, 0.5};
    CHECK(kernels::sum(x) == 6.5);
    CHECK(kernels::dot(x, y) == doctest::Approx(2.0 - 2.0 + 1.75).epsilon(1e-15));
    CHECK(kernels::sum_sq_diff(x, y) == doctest::Approx(1.0 + 9.0 + 9.0).epsilon(1e-15));
    CHECK(kernels::sum({}) == 0.0);
}

TEST_CASE("avx2 variant agrees with the scalar reference") {
    const kernels::Ops* simd = kernels::avx2_ops();
    if (simd == nullptr) return;  // host without AVX2: nothing to compare
    const kernels::Ops& ref = kernels::scalar_ops();

    Rng rng(83);
    for (std::size_t n = 0; n <= 67; ++n) {
        std::vector<std::int32_t> ia(n);
        std::vector<std::int32_t> ib(n);
        std::vector<double> da(n);
        std::vector<double> db(n);
        for (std::size_t i = 0; i < n; ++i) {
            ia[i] = static_cast<std::int32_t>(rng.uniform_int(-1, 3));
            ib[i] = static_cast<std::int32_t>(rng.uniform_int(-1, 3));
            da[i] = rng.uniform_real() * 2.0 - 1.0;
            db[i] = rng.uniform_real() * 2.0 - 1.0;
        }
        CHECK(simd->count_colocated(ia.data(), ib.data(), n) ==
              ref.count_colocated(ia.data(), ib.data(), n));
        CHECK(simd->sum(da.data(), n) ==
              doctest::Approx(ref.sum(da.data(), n)).epsilon(1e-12));
        CHECK(simd->dot(da.data(), db.data(), n) ==
              doctest::Approx(ref.dot(da.data(), db.data(), n)).epsilon(1e-12));
        CHECK(simd->sum_sq_diff(da.data(), db.data(), n) ==
              doctest::Approx(ref.sum_sq_diff(da.data(), db.data(), n)).epsilon(1e-12));
    }
}

TEST_CASE("active set is one of the known implementations") {
    const kernels::Ops& active = kernels::active_ops();
    const std::vector<std::int32_t> a{1, 2, 3, -1, 5, 5, 0};
    const std::vector<std::int32_t> b{1, 0, 3, -1, 5, 4, 0};
    CHECK(active.count_colocated(a.data(), b.data(), a.size()) ==
          kernels::scalar_ops().count_colocated(a.data(), b.data(), a.size()));
}

TEST_SUITE_END();
