#include "hiercast/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace hiercast {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& block_fn) {
  if (n == 0) return;
  const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), n);
  if (nt <= 1) {
    block_fn(0, n);
    return;
  }
  const std::size_t chunk = (n + nt - 1) / nt;
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&, t, begin, end] {
      try {
        block_fn(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace hiercast
