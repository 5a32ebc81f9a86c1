#include <cmath>
#include <vector>

#include "doctest.h"

#include "tracelab/errors.hpp"
#include "tracelab/parallel.hpp"

using namespace tracelab;

namespace {

struct CapGuard {
    std::size_t saved = parallel::thread_cap();
    ~CapGuard() { parallel::set_thread_cap(saved); }
};

}  // namespace

TEST_SUITE_BEGIN("parallel");

TEST_CASE("every index runs exactly once") {
    CapGuard guard;
    parallel::set_thread_cap(8);
    std::vector<int> hits(10000, 0);
    parallel::parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) CHECK(h == 1);
    parallel::parallel_for(0, [&](std::size_t) { FAIL("must not run"); });
}

TEST_CASE("worker exceptions propagate") {
    CapGuard guard;
    for (std::size_t cap : {std::size_t{1}, std::size_t{8}}) {
        parallel::set_thread_cap(cap);
        CHECK_THROWS_AS(parallel::parallel_for(1000,
                                               [&](std::size_t i) {
                                                   if (i == 137)
                                                       throw UsageError("boom");
                                               }),
                        UsageError);
    }
}

TEST_CASE("slot results do not depend on the worker count") {
    CapGuard guard;
    const std::size_t n = 5000;
    auto fill = [&](std::size_t cap) {
        parallel::set_thread_cap(cap);
        std::vector<double> out(n);
        parallel::parallel_for(n, [&](std::size_t i) {
            out[i] = std::sin(static_cast<double>(i)) * std::sqrt(static_cast<double>(i) + 1.0);
        });
        return out;
    };
    const auto solo = fill(1);
    CHECK(fill(4) == solo);
    CHECK(fill(16) == solo);
}

TEST_CASE("cap is never zero") {
    CapGuard guard;
    parallel::set_thread_cap(0);
    CHECK(parallel::thread_cap() == 1);
    parallel::set_thread_cap(3);
    CHECK(parallel::thread_cap() == 3);
}

TEST_SUITE_END();
