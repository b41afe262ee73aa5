#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pwc {

inline std::size_t resolve_threads(std::size_t requested) {
  if (requested != 0) {
    return requested;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/*
Static block partition of [0, count) over worker threads. `make_state` builds
one per-worker scratch object; `body(state, i)` must only write outputs owned
by index i, so results do not depend on the thread count.
*/
template <typename MakeState, typename Body>
void parallel_for(std::size_t count, std::size_t threads, MakeState make_state,
                  Body body) {
  threads = std::min(resolve_threads(threads), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    auto state = make_state();
    for (std::size_t i = 0; i < count; ++i) {
      body(state, i);
    }
    return;
  }

  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) {
      break;
    }
    workers.emplace_back([&, begin, end] {
      try {
        auto state = make_state();
        for (std::size_t i = begin; i < end; ++i) {
          body(state, i);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
      }
    });
  }
  workers.clear(); // joins
  if (error) {
    std::rethrow_exception(error);
  }
}

} // namespace pwc
