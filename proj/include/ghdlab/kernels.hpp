#pragma once

// Hot loops with a serial reference and an OpenMP variant. Tests assert the
// two agree exactly; bench/ compares their throughput.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ghdlab/parallel.hpp"

namespace ghdlab::kernels {

/// Nearest member of `targets` to x in Hamming distance, ties to the
/// lexicographically smallest. `targets` must be nonempty.
std::uint64_t snap_point(std::uint64_t x, std::span<const std::uint64_t> targets);

/// For every point of {0,1}^n (packed, coordinate 1 at bit 0), the member of
/// `targets` nearest in Hamming distance; ties go to the lexicographically
/// smallest string. `targets` must be nonempty.
std::vector<std::uint64_t> snap_table_serial(std::size_t n, std::span<const std::uint64_t> targets);
std::vector<std::uint64_t> snap_table_parallel(std::size_t n, std::span<const std::uint64_t> targets);
std::vector<std::uint64_t> snap_table(std::size_t n, std::span<const std::uint64_t> targets,
                                      Exec exec = Exec::parallel);

inline constexpr std::uint16_t kUnreachable = 0xffff;

/// Hamming distance from every point of {0,1}^n to the set marked in
/// `member` (size 2^n). Serial: breadth-first search. Parallel:
/// level-synchronous relaxation. kUnreachable everywhere if the set is empty.
std::vector<std::uint16_t> distance_to_set_serial(std::size_t n, std::span<const std::uint8_t> member);
std::vector<std::uint16_t> distance_to_set_parallel(std::size_t n, std::span<const std::uint8_t> member);
std::vector<std::uint16_t> distance_to_set(std::size_t n, std::span<const std::uint8_t> member,
                                           Exec exec = Exec::parallel);

/// Index of the nearest row of `points` (row-major, `dimension` columns) to
/// each query row; ties go to the lower index.
std::vector<std::uint32_t> nearest_rows_serial(std::span<const double> points,
                                               std::span<const double> queries,
                                               std::size_t dimension);
std::vector<std::uint32_t> nearest_rows_parallel(std::span<const double> points,
                                                 std::span<const double> queries,
                                                 std::size_t dimension);

/// Index of the nearest row to a single query (serial).
std::uint32_t nearest_row(std::span<const double> points, std::span<const double> query,
                          std::size_t dimension, double* squared_distance = nullptr);

}  // namespace ghdlab::kernels
