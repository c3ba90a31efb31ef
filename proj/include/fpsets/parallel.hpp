#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace fpsets {

/// Runs fn(0..n-1) across `jobs` threads; results keep index order and the
/// first exception (by index) is rethrown.
template <typename R>
std::vector<R> parallel_map(int n, int jobs, const std::function<R(int)>& fn) {
  std::vector<std::optional<R>> slots(static_cast<std::size_t>(std::max(n, 0)));
  if (n > 0) {
    if (jobs <= 1) {
      for (int i = 0; i < n; ++i) slots[i].emplace(fn(i));
    } else {
      std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
      std::atomic<int> next{0};
      auto worker = [&] {
        for (;;) {
          int i = next.fetch_add(1);
          if (i >= n) break;
          try {
            slots[i].emplace(fn(i));
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      };
      std::vector<std::thread> pool;
      int count = std::min(jobs, n);
      pool.reserve(count);
      for (int t = 0; t < count; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      for (int i = 0; i < n; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
    }
  }
  std::vector<R> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace fpsets
