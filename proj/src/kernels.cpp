#include "ghdlab/kernels.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

#include "ghdlab/bitstring.hpp"

namespace ghdlab::kernels {

std::uint64_t snap_point(std::uint64_t x, std::span<const std::uint64_t> targets) {
  std::uint64_t best = targets[0];
  int best_d = std::popcount(x ^ best);
  for (std::size_t i = 1; i < targets.size(); ++i) {
    const std::uint64_t a = targets[i];
    const int d = std::popcount(x ^ a);
    if (d < best_d || (d == best_d && lex_less_packed(a, best))) {
      best = a;
      best_d = d;
    }
  }
  return best;
}

namespace {

void check_targets(std::size_t n, std::span<const std::uint64_t> targets) {
  if (targets.empty()) throw std::invalid_argument("cannot snap to an empty set");
  if (n > 30) throw std::invalid_argument("snap tables support n <= 30");
}

}  // namespace

std::vector<std::uint64_t> snap_table_serial(std::size_t n, std::span<const std::uint64_t> targets) {
  check_targets(n, targets);
  std::vector<std::uint64_t> out(1ULL << n);
  for (std::uint64_t x = 0; x < out.size(); ++x) out[x] = snap_point(x, targets);
  return out;
}

std::vector<std::uint64_t> snap_table_parallel(std::size_t n, std::span<const std::uint64_t> targets) {
  check_targets(n, targets);
  std::vector<std::uint64_t> out(1ULL << n);
  const auto size = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t x = 0; x < size; ++x) {
    out[static_cast<std::size_t>(x)] = snap_point(static_cast<std::uint64_t>(x), targets);
  }
  return out;
}

std::vector<std::uint64_t> snap_table(std::size_t n, std::span<const std::uint64_t> targets,
                                      Exec exec) {
  return exec == Exec::serial ? snap_table_serial(n, targets) : snap_table_parallel(n, targets);
}

std::vector<std::uint16_t> distance_to_set_serial(std::size_t n, std::span<const std::uint8_t> member) {
  const std::uint64_t size = 1ULL << n;
  if (member.size() != size) throw std::invalid_argument("membership table must have 2^n entries");
  std::vector<std::uint16_t> dist(size, kUnreachable);
  std::vector<std::uint64_t> frontier;
  for (std::uint64_t x = 0; x < size; ++x) {
    if (member[x] != 0) {
      dist[x] = 0;
      frontier.push_back(x);
    }
  }
  std::vector<std::uint64_t> next;
  for (std::uint16_t level = 0; !frontier.empty(); ++level) {
    next.clear();
    for (std::uint64_t x : frontier) {
      for (std::size_t b = 0; b < n; ++b) {
        const std::uint64_t z = x ^ (1ULL << b);
        if (dist[z] == kUnreachable) {
          dist[z] = static_cast<std::uint16_t>(level + 1);
          next.push_back(z);
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

std::vector<std::uint16_t> distance_to_set_parallel(std::size_t n, std::span<const std::uint8_t> member) {
  const std::uint64_t size = 1ULL << n;
  if (member.size() != size) throw std::invalid_argument("membership table must have 2^n entries");
  std::vector<std::uint16_t> dist(size, kUnreachable);
  const auto count = static_cast<std::int64_t>(size);
  std::int64_t reached = 0;
#pragma omp parallel for reduction(+ : reached)
  for (std::int64_t x = 0; x < count; ++x) {
    if (member[static_cast<std::size_t>(x)] != 0) {
      dist[static_cast<std::size_t>(x)] = 0;
      ++reached;
    }
  }
  if (reached == 0) return dist;
  for (std::uint16_t level = 0; level < n; ++level) {
    std::int64_t changed = 0;
    // Reads only entries equal to `level`, writes only unreached entries.
#pragma omp parallel for reduction(+ : changed) schedule(static)
    for (std::int64_t xi = 0; xi < count; ++xi) {
      const auto x = static_cast<std::uint64_t>(xi);
      if (dist[x] != kUnreachable) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (dist[x ^ (1ULL << b)] == level) {
          dist[x] = static_cast<std::uint16_t>(level + 1);
          ++changed;
          break;
        }
      }
    }
    if (changed == 0) break;
  }
  return dist;
}

std::vector<std::uint16_t> distance_to_set(std::size_t n, std::span<const std::uint8_t> member,
                                           Exec exec) {
  return exec == Exec::serial ? distance_to_set_serial(n, member)
                              : distance_to_set_parallel(n, member);
}

std::uint32_t nearest_row(std::span<const double> points, std::span<const double> query,
                          std::size_t dimension, double* squared_distance) {
  const std::size_t rows = points.size() / dimension;
  if (rows == 0) throw std::invalid_argument("nearest_row needs at least one point");
  std::uint32_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < rows; ++r) {
    const double* p = points.data() + r * dimension;
    double d = 0.0;
    for (std::size_t j = 0; j < dimension; ++j) {
      const double t = p[j] - query[j];
      d += t * t;
    }
    if (d < best_d) {
      best_d = d;
      best = static_cast<std::uint32_t>(r);
    }
  }
  if (squared_distance != nullptr) *squared_distance = best_d;
  return best;
}

std::vector<std::uint32_t> nearest_rows_serial(std::span<const double> points,
                                               std::span<const double> queries,
                                               std::size_t dimension) {
  const std::size_t q = queries.size() / dimension;
  std::vector<std::uint32_t> out(q);
  for (std::size_t i = 0; i < q; ++i) {
    out[i] = nearest_row(points, queries.subspan(i * dimension, dimension), dimension);
  }
  return out;
}

std::vector<std::uint32_t> nearest_rows_parallel(std::span<const double> points,
                                                 std::span<const double> queries,
                                                 std::size_t dimension) {
  const auto q = static_cast<std::int64_t>(queries.size() / dimension);
  std::vector<std::uint32_t> out(static_cast<std::size_t>(q));
  if (q > 0 && points.size() < dimension) {
    throw std::invalid_argument("nearest_row needs at least one point");
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < q; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out[u] = nearest_row(points, queries.subspan(u * dimension, dimension), dimension);
  }
  return out;
}

}  // namespace ghdlab::kernels
