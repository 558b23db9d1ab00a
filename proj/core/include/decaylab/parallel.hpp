#pragma once

#include <cstddef>
#include <functional>

namespace decaylab {

/// Worker count from DECAYLAB_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
int thread_count();

/// Calls fn(i) for i in [0, n) on up to `threads` workers (0 = thread_count()).
/// Each index is processed exactly once; when calls throw, the exception of
/// the lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads = 0);

}  // namespace decaylab
