#pragma once

#include <cstddef>
#include <functional>

namespace physector {

// Effective worker count: `requested` if positive, otherwise the hardware
// concurrency. The environment variable PHYSECTOR_THREADS, when set to a
// positive integer, caps the result (0 or unset means no cap).
int resolve_thread_count(int requested = 0);

// Runs fn(0..n-1) on up to n_threads workers. Iterations must be independent;
// results are expected to be written to per-index slots so that reductions
// done afterwards in index order stay deterministic. If any iteration throws,
// the exception from the lowest index is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  int n_threads = 0);

}  // namespace physector
