#pragma once

#include <cstddef>
#include <functional>

namespace otgs {

/// Worker threads used by parallel sections; 0 restores the hardware default.
void set_thread_count(int threads);
int thread_count();

/// Runs fn(0), ..., fn(count-1), possibly across threads. Callers must write
/// results into per-index slots so the outcome is independent of scheduling.
/// The first exception thrown by any task is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace otgs
