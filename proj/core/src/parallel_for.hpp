#pragma once

#include <thread>
#include <vector>

namespace dareal::detail {

// Runs fn(i) for i in [0, n).  Work is split into contiguous chunks; each
// result must be written to a caller-owned slot indexed by i, so the output
// is identical for any thread count.
template <typename Fn>
void parallel_for(long n, int threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  int nt = static_cast<int>(std::min<long>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nt));
  long chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    long lo = t * chunk;
    long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (long i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace dareal::detail
