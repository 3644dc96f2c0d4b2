#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// OpenMP helpers.  Every parallel kernel in the project has a serial
// reference twin; results are bitwise identical because reductions are
// blocked in a fixed order and element writes are independent.

namespace kelab::par {

// Global switch so the serial reference path can be forced (tests, bench).
inline bool& enabled() {
  static bool on = true;
  return on;
}

template <class F>
void for_each_index(std::size_t n, F&& f) {
#ifdef _OPENMP
  if (enabled()) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) f(static_cast<std::size_t>(i));
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) f(i);
}

// Deterministic sum: fixed-size blocks are reduced independently (possibly
// in parallel), then combined serially in block order, so the result does
// not depend on the thread count.
template <class F>
double block_sum(std::size_t n, F&& term, std::size_t block = 4096) {
  std::size_t nb = (n + block - 1) / block;
  std::vector<double> partial(nb, 0.0);
  for_each_index(nb, [&](std::size_t b) {
    double acc = 0.0;
    std::size_t end = std::min(n, (b + 1) * block);
    for (std::size_t i = b * block; i < end; ++i) acc += term(i);
    partial[b] = acc;
  });
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
}

template <class F>
double block_max(std::size_t n, F&& term, std::size_t block = 4096) {
  std::size_t nb = (n + block - 1) / block;
  std::vector<double> partial(nb, -1e300);
  for_each_index(nb, [&](std::size_t b) {
    double acc = -1e300;
    std::size_t end = std::min(n, (b + 1) * block);
    for (std::size_t i = b * block; i < end; ++i) acc = std::max(acc, term(i));
    partial[b] = acc;
  });
  double acc = -1e300;
  for (double p : partial) acc = std::max(acc, p);
  return acc;
}

}  // namespace kelab::par
