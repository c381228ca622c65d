#pragma once

#include <cstddef>
#include <functional>

namespace xiboot {

// Runs fn(i) for every i in [0, count) on up to `threads` workers. fn must
// depend only on i (each task derives its own rng stream and writes to its
// own slot), so the result is the same for every thread count. The first
// exception thrown by a task is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace xiboot
