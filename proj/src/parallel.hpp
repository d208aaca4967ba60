#pragma once

#include <cstddef>
#include <functional>

namespace hyperwave {

// Runs task(i) for i in [0, count). Implementations may run tasks concurrently;
// callers write results into per-index slots so the outcome never depends on scheduling.
using Executor = std::function<void(std::size_t count, const std::function<void(std::size_t)>& task)>;

inline void run_indexed(const Executor& ex, std::size_t count, const std::function<void(std::size_t)>& task) {
  if (ex) {
    ex(count, task);
    return;
  }
  for (std::size_t i = 0; i < count; ++i) task(i);
}

}  // namespace hyperwave
