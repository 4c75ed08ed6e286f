#pragma once

#include <cstddef>
#include <functional>

namespace pal {

/// Worker count: PAL_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_count();

/// Runs fn(i) for i in [0, n) over up to thread_count() threads. Blocks until
/// all calls finish; rethrows the first exception by index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace pal
