#pragma once

// Minimal deterministic parallel map. The thread count is capped by the
// CESLAB_THREADS environment variable; results must be written to
// caller-owned per-index slots so evaluation order never matters.

#include <cstddef>
#include <functional>

namespace ceslab::par {

std::size_t thread_count();

// Runs fn(i) for every i in [0, n), on up to thread_count() threads.
// Exceptions thrown by fn are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ceslab::par
