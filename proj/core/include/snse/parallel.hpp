#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace snse {

/// Run f(i) for i in [0, items) on up to `jobs` threads. Work items must write
/// only to their own slots; reductions happen after the join, in index order,
/// so results do not depend on scheduling.
template <class F>
void parallel_for(int jobs, int items, F&& f) {
  if (jobs <= 1 || items <= 1) {
    for (int i = 0; i < items; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < items; i = next.fetch_add(1)) f(i);
  };
  std::vector<std::thread> pool;
  int threads = std::min(jobs, items);
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace snse
