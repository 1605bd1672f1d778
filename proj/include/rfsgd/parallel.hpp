#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rfsgd {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Parallel loop over [0, n). Iterations must touch disjoint state.
template <class Fn>
void parallel_for(std::ptrdiff_t n, Fn&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
}

// Variant for loops with uneven per-iteration cost.
template <class Fn>
void parallel_for_dynamic(std::ptrdiff_t n, Fn&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
}

template <class Fn>
void serial_for(std::ptrdiff_t n, Fn&& fn) {
  for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
}

// Block size for deterministic reductions. Partial sums are formed per
// fixed-size block and combined in block order, so the result is identical
// for any thread count, including the serial path.
inline constexpr std::ptrdiff_t kSumBlock = 2048;

namespace detail {

template <class Loop, class Fn>
double blocked_sum_impl(Loop&& loop, std::ptrdiff_t n, Fn&& fn) {
  if (n <= 0) return 0.0;
  if (n <= kSumBlock) {
    double s = 0.0;
    for (std::ptrdiff_t i = 0; i < n; ++i) s += fn(i);
    return s;
  }
  const std::ptrdiff_t nblocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> partial(static_cast<std::size_t>(nblocks));
  loop(nblocks, [&](std::ptrdiff_t b) {
    const std::ptrdiff_t lo = b * kSumBlock;
    const std::ptrdiff_t hi = std::min(lo + kSumBlock, n);
    double s = 0.0;
    for (std::ptrdiff_t i = lo; i < hi; ++i) s += fn(i);
    partial[static_cast<std::size_t>(b)] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace detail

template <class Fn>
double blocked_sum(std::ptrdiff_t n, Fn&& fn) {
  return detail::blocked_sum_impl(
      [](std::ptrdiff_t m, auto&& body) { parallel_for(m, body); }, n, fn);
}

template <class Fn>
double blocked_sum_serial(std::ptrdiff_t n, Fn&& fn) {
  return detail::blocked_sum_impl(
      [](std::ptrdiff_t m, auto&& body) { serial_for(m, body); }, n, fn);
}

}  // namespace rfsgd
