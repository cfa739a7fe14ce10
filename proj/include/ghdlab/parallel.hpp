#pragma once

// Index-parallel kernels. Every kernel has a plain serial loop kept as the
// reference and an OpenMP loop; both produce identical results because work
// item i only ever sees its own inputs (per-index random substreams) and the
// reductions are over integers or over index-ordered result vectors.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ghdlab {

enum class Exec { serial, parallel };

/// Sets the OpenMP worker count (no-op without OpenMP). 0 keeps the default.
inline void set_workers(int workers) {
#ifdef _OPENMP
  if (workers > 0) omp_set_num_threads(workers);
#else
  (void)workers;
#endif
}

inline int max_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Number of indices i in [0, count) with pred(i) true.
template <class Pred>
std::uint64_t count_if_index(std::uint64_t count, Pred&& pred, Exec exec = Exec::parallel) {
  std::uint64_t hits = 0;
  if (exec == Exec::serial) {
    for (std::uint64_t i = 0; i < count; ++i) {
      if (pred(i)) ++hits;
    }
    return hits;
  }
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for reduction(+ : hits) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    if (pred(static_cast<std::uint64_t>(i))) ++hits;
  }
  return hits;
}

/// Component-wise sum over i of f(i), where f returns std::array<uint64_t, K>.
template <std::size_t K, class F>
std::array<std::uint64_t, K> tally_index(std::uint64_t count, F&& f, Exec exec = Exec::parallel) {
  std::array<std::uint64_t, K> total{};
  if (exec == Exec::serial) {
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto part = f(i);
      for (std::size_t j = 0; j < K; ++j) total[j] += part[j];
    }
    return total;
  }
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel
  {
    std::array<std::uint64_t, K> local{};
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto part = f(static_cast<std::uint64_t>(i));
      for (std::size_t j = 0; j < K; ++j) local[j] += part[j];
    }
#pragma omp critical(ghdlab_tally)
    for (std::size_t j = 0; j < K; ++j) total[j] += local[j];
  }
  return total;
}

/// out[i] = f(i) for i in [0, count), in index order.
template <class T, class F>
std::vector<T> map_index(std::uint64_t count, F&& f, Exec exec = Exec::parallel) {
  std::vector<T> out(count);
  if (exec == Exec::serial) {
    for (std::uint64_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::uint64_t>(i));
  return out;
}

}  // namespace ghdlab
