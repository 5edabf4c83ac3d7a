#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dyngraph {

// Runs independent tasks on a fixed number of workers. With one worker every
// task runs inline, in index order, which is the deterministic reference mode.
class Executor {
 public:
  explicit Executor(unsigned workers = 1) : workers_(std::max(1u, workers)) {}

  unsigned workers() const noexcept { return workers_; }
  bool serial() const noexcept { return workers_ == 1; }

  template <class F>
  void parallel_for(std::size_t task_count, F&& task) const {
    if (workers_ == 1 || task_count <= 1) {
      for (std::size_t i = 0; i < task_count; ++i) task(i);
      return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto drain = [&] {
      try {
        for (std::size_t i; (i = next.fetch_add(1, std::memory_order_relaxed)) < task_count;) task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(task_count, std::memory_order_relaxed);
      }
    };

    const auto helpers = static_cast<unsigned>(std::min<std::size_t>(workers_, task_count)) - 1;
    {
      std::vector<std::jthread> pool;
      pool.reserve(helpers);
      for (unsigned i = 0; i < helpers; ++i) pool.emplace_back(drain);
      drain();
    }
    if (failure) std::rethrow_exception(failure);
  }

 private:
  unsigned workers_;
};

}  // namespace dyngraph
