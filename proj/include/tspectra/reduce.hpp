#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace tspectra {

// Reductions over large index ranges. The blocked variants parallelize with
// OpenMP but stay bitwise independent of the thread count: block boundaries
// are fixed, each block folds sequentially, and block results combine in a
// fixed pairwise order.

inline constexpr std::int64_t kReduceBlock = 4096;

template <class T, class F, class Combine>
T blocked_reduce(std::int64_t n, T identity, F&& f, Combine&& combine) {
  if (n <= 0) return identity;
  const std::int64_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<T> partial(static_cast<std::size_t>(nblocks), identity);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nblocks; ++b) {
    const std::int64_t lo = b * kReduceBlock;
    const std::int64_t hi = std::min(n, lo + kReduceBlock);
    T acc = identity;
    for (std::int64_t k = lo; k < hi; ++k) acc = combine(acc, f(k));
    partial[static_cast<std::size_t>(b)] = acc;
  }
  std::int64_t width = nblocks;
  while (width > 1) {
    const std::int64_t half = (width + 1) / 2;
    for (std::int64_t i = 0; i + half < width; ++i) {
      partial[static_cast<std::size_t>(i)] =
          combine(partial[static_cast<std::size_t>(i)], partial[static_cast<std::size_t>(i + half)]);
    }
    width = half;
  }
  return partial[0];
}

template <class F>
double blocked_sum(std::int64_t n, F&& f) {
  return blocked_reduce(
      n, 0.0, std::forward<F>(f), [](double a, double b) { return a + b; });
}

/// Plain left-to-right fold. Reference path for tests and benchmarks.
template <class T, class F, class Combine>
T serial_reduce(std::int64_t n, T identity, F&& f, Combine&& combine) {
  T acc = identity;
  for (std::int64_t k = 0; k < n; ++k) acc = combine(acc, f(k));
  return acc;
}

template <class F>
double serial_sum(std::int64_t n, F&& f) {
  return serial_reduce(n, 0.0, std::forward<F>(f), [](double a, double b) { return a + b; });
}

}  // namespace tspectra
