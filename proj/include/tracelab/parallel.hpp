#pragma once

#include <cstddef>
#include <functional>

namespace tracelab::parallel {

// Worker cap shared by all modules. Defaults to TRACE_LAB_THREADS if set,
// otherwise the hardware concurrency. Never zero.
std::size_t thread_cap();
void set_thread_cap(std::size_t n);

// Runs fn(i) for i in [0, n). Each index is independent and writes only its
// own output slot, so results are identical for any worker count, including 1.
// Reductions over the produced slots must be done sequentially by the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace tracelab::parallel
