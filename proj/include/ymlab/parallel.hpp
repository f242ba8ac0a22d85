#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ymlab {

using index_t = std::int64_t;

inline int max_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_workers(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

template <typename Fn>
void parallel_for(index_t n, Fn fn) {
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) fn(i);
}

// Reduction over fixed-size blocks. Partial sums are accumulated per block and
// combined in block order, so the result does not depend on the number of
// threads. Block size is a constant of the scheme, not of the machine.
inline constexpr index_t kReduceBlock = 4096;

template <typename Fn>
double deterministic_sum(index_t n, Fn term) {
  if (n <= 0) return 0.0;
  const index_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(static_cast<size_t>(nblocks), 0.0);
#pragma omp parallel for schedule(static)
  for (index_t b = 0; b < nblocks; ++b) {
    const index_t lo = b * kReduceBlock;
    const index_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
    double s = 0.0;
    for (index_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<size_t>(b)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

namespace ref {

// Serial counterparts, kept as the reference path for kernel tests.
template <typename Fn>
void serial_for(index_t n, Fn fn) {
  for (index_t i = 0; i < n; ++i) fn(i);
}

template <typename Fn>
double serial_sum(index_t n, Fn term) {
  const index_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
  double total = 0.0;
  for (index_t b = 0; b < nblocks; ++b) {
    const index_t lo = b * kReduceBlock;
    const index_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
    double s = 0.0;
    for (index_t i = lo; i < hi; ++i) s += term(i);
    total += s;
  }
  return total;
}

}  // namespace ref
}  // namespace ymlab
