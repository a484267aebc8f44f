#pragma once

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace motifconv {

// Runs fn(0..task_count-1) across `workers` threads, worker t taking indices
// t, t+workers, ... Tasks must write to disjoint locations; together with
// each task being a pure function of its index, the result is identical for
// any worker count. The first exception thrown by a task is rethrown after
// all threads join.
template <typename Fn>
void parallel_for(std::size_t task_count, int workers, Fn&& fn) {
  if (workers < 1) workers = 1;
  if (workers == 1 || task_count <= 1) {
    for (std::size_t i = 0; i < task_count; ++i) fn(i);
    return;
  }
  const int spawn = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(workers), task_count));
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> threads;
  threads.reserve(spawn);
  for (int t = 0; t < spawn; ++t) {
    threads.emplace_back([&, t]() {
      try {
        for (std::size_t i = static_cast<std::size_t>(t); i < task_count;
             i += static_cast<std::size_t>(spawn)) {
          fn(i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace motifconv
