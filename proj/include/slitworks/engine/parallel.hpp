#pragma once

#include <cstddef>
#include <functional>

namespace slitworks {

/// Thread count from SLITWORKS_THREADS, else hardware concurrency (at least 1).
unsigned defaultThreadCount();

/// Overrides defaultThreadCount() for the rest of the process; 0 restores the environment default.
void setDefaultThreadCount(unsigned n);

/// Calls fn(i) for i in [0, n) on contiguous static chunks. Results written by index are
/// independent of the thread count.
void parallelFor(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

}  // namespace slitworks
