// Deterministic task parallelism: results are written into slots indexed by
// task id, so the output never depends on scheduling. Thread count comes from
// ALGD_THREADS (default 1).
#ifndef ALGD_PARALLEL_HPP
#define ALGD_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace algd {

inline int thread_count()
{
  const char* env = std::getenv("ALGD_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n < 1 ? 1 : n;
}

/// Runs fn(i) for i in [0, n). All values are immutable from fn's point of
/// view except its own output slot.
inline void parallel_for(int n, const std::function<void(int)>& fn)
{
  int workers = thread_count();
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next(0);
  auto work = [&]() {
    while (true) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int spawn = workers < n ? workers : n;
  pool.reserve(spawn);
  for (int t = 0; t < spawn; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
}

} // namespace algd

#endif
