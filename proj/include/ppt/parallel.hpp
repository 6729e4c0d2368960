#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace ppt {

/// Runs fn(0..count-1) across up to `jobs` worker threads. Results must be
/// written to disjoint slots by index; reductions stay with the caller so
/// outputs are independent of scheduling.
inline void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t)
    workers.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& w : workers) w.join();
}

}  // namespace ppt
