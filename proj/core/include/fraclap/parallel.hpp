#pragma once

#include <cstddef>
#include <functional>

namespace fraclap {

// Worker count used by grid sweeps. Zero restores the default, which is the
// value of FRACLAP_THREADS when set and the hardware concurrency otherwise.
void set_thread_count(unsigned count);
unsigned thread_count();

// Runs body(i) for i in [0, count). Indices are split into contiguous blocks,
// one per worker, so results written to slot i are independent of scheduling.
// The first exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fraclap
