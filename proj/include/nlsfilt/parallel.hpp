#pragma once

#include <cstddef>
#include <functional>

namespace nlsfilt {

// Thread cap from NLSFILT_THREADS, else hardware concurrency (at least 1).
unsigned default_thread_count();

// Runs task(i) for i in [0, count) on up to `threads` workers. Results must
// be written to per-index slots; the first exception by index is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

}  // namespace nlsfilt
