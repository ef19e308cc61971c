#pragma once

#include <cstddef>
#include <functional>

namespace curvlet {

// Worker count resolution: explicit request > CURVLET_WORKERS env var >
// hardware concurrency. A request of 0 means "decide for me".
int default_worker_count();
int resolve_worker_count(int requested);

// Runs fn(i) for i in [0, count) over `workers` threads with static block
// partitioning. Deterministic: the work done for index i never depends on
// the thread it lands on. Exceptions from fn propagate to the caller.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace curvlet
