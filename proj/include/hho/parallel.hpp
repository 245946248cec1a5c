// Minimal helper to distribute independent per-element work over threads.

#ifndef HHO_PARALLEL_HPP
#define HHO_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace hho {

/// Apply fn(i) for i in [0, n). Each index is processed exactly once; fn must
/// only write to slots owned by its index so the result is deterministic.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         bool use_threads = true) {
  unsigned nb_threads = use_threads ? std::thread::hardware_concurrency() : 1;
  if (nb_threads <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; i++) fn(i);
    return;
  }
  nb_threads = std::min<std::size_t>(nb_threads, n);
  std::vector<std::thread> workers;
  workers.reserve(nb_threads);
  std::size_t chunk = n / nb_threads;
  std::size_t rem = n % nb_threads;
  std::size_t begin = 0;
  for (unsigned t = 0; t < nb_threads; t++) {
    std::size_t end = begin + chunk + (t < rem ? 1 : 0);
    workers.emplace_back([begin, end, &fn]() {
      for (std::size_t i = begin; i < end; i++) fn(i);
    });
    begin = end;
  }
  for (auto& w : workers) w.join();
}

}  // namespace hho

#endif
