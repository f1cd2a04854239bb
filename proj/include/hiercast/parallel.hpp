#pragma once

#include <cstddef>
#include <functional>

namespace hiercast {

// 0 or negative -> hardware concurrency.
int resolve_threads(int requested);

// Runs block_fn(begin, end) over a static partition of [0, n). Callers must
// write only to disjoint slots so the result is independent of thread count.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& block_fn);

}  // namespace hiercast
