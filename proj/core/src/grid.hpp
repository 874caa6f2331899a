#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "ctrc/interp.hpp"

namespace ctrc::detail {

// Calls fn on every point of {0..max}^dims in lexicographic order (first
// coordinate slowest); stops early when fn returns false.
template <class Fn>
void for_each_point(std::size_t dims, std::uint64_t max, Fn&& fn) {
  std::vector<std::uint64_t> point(dims, 0);
  for (;;) {
    if (!fn(static_cast<const std::vector<std::uint64_t>&>(point))) return;
    std::size_t d = dims;
    while (d > 0) {
      if (point[d - 1] < max) {
        ++point[d - 1];
        break;
      }
      point[d - 1] = 0;
      --d;
    }
    if (d == 0) return;
  }
}

// Over pairs each value takes two coordinates, cost before size.
inline std::vector<Value> to_values(const std::vector<std::uint64_t>& point, Domain domain) {
  std::vector<Value> out;
  if (domain == Domain::nat) {
    for (std::uint64_t v : point) out.push_back({v, 0});
  } else {
    for (std::size_t i = 0; i + 1 < point.size(); i += 2) out.push_back({point[i], point[i + 1]});
  }
  return out;
}

inline std::size_t coordinates(std::size_t values, Domain domain) {
  return domain == Domain::nat ? values : 2 * values;
}

// Runs fn(0..count-1) on worker threads. The first exception thrown by any
// task is rethrown after all workers have stopped.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  std::size_t workers = std::min<std::size_t>(count, std::max(1U, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ctrc::detail
