#pragma once

#include <cstddef>
#include <functional>

namespace stretchlab {

/// Worker count: STRETCHLAB_THREADS if set to a positive integer, else the
/// hardware concurrency, never less than one.
int thread_budget();

/// Runs body(i) for i in [0, n) on up to thread_budget() threads. Indices
/// are handed out in increasing order; the first exception thrown by any
/// body is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace stretchlab
