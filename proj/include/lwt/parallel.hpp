#pragma once

#include <cstddef>
#include <functional>

namespace lwt {

// Worker count used for grid fan-out. Resolution order: explicit
// set_thread_count(), the WHITTAKER_THREADS environment variable, then
// hardware concurrency. Always at least 1.
int thread_count();

// n >= 1 pins the count; n <= 0 restores automatic resolution.
void set_thread_count(int n);

// Runs fn(i) for i in [0, count). Each item writes only to its own output
// slot, so results are identical to a serial loop regardless of scheduling.
// The first exception thrown by any item is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace lwt
