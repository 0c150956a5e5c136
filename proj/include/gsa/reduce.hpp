#pragma once

#include <Eigen/Dense>

#include <thread>
#include <vector>

namespace gsa {

/// Pairwise (cascade) summation of term(k) for k in [0, n). The reduction
/// tree depends only on n, so results are identical for any thread count
/// and accumulation error stays O(log n) at large n.
template <class F>
double pairwise_sum(Eigen::Index n, F&& term) {
  struct Rec {
    static double run(Eigen::Index lo, Eigen::Index hi, F& f) {
      constexpr Eigen::Index kBlock = 32;
      if (hi - lo <= kBlock) {
        double s = 0.0;
        for (Eigen::Index k = lo; k < hi; ++k) s += f(k);
        return s;
      }
      const Eigen::Index mid = lo + (hi - lo) / 2;
      return run(lo, mid, f) + run(mid, hi, f);
    }
  };
  if (n <= 0) return 0.0;
  return Rec::run(0, n, term);
}

/// Runs body(i) for i in [0, n) on up to `threads` workers with a static
/// block partition. Each index must be independent; per-index results are
/// then identical for any worker count.
template <class F>
void parallel_for(Eigen::Index n, int threads, F&& body) {
  if (n <= 0) return;
  if (threads <= 1 || n == 1) {
    for (Eigen::Index i = 0; i < n; ++i) body(i);
    return;
  }
  const int workers = static_cast<int>(
      std::min<Eigen::Index>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const Eigen::Index chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const Eigen::Index lo = static_cast<Eigen::Index>(w) * chunk;
    const Eigen::Index hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (Eigen::Index i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace gsa
