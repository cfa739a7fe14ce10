#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ghdlab {

inline constexpr double kUnitNormTolerance = 1e-9;

/// A point on the unit sphere S^{n-1}.
class SphereVector {
 public:
  /// Wraps coordinates that already have unit norm (within 1e-9).
  static SphereVector from_coords(std::vector<double> coords);

  /// Scales a nonzero vector to unit norm.
  static SphereVector normalized(std::vector<double> coords);

  /// Standard basis vector e_{axis+1} in dimension n.
  static SphereVector basis(std::size_t n, std::size_t axis);

  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  SphereVector operator-() const;

  friend bool operator==(const SphereVector&, const SphereVector&) = default;

 private:
  explicit SphereVector(std::vector<double> coords) : coords_(std::move(coords)) {}
  std::vector<double> coords_;
};

double dot(std::span<const double> a, std::span<const double> b);
double dot(const SphereVector& a, const SphereVector& b);

/// Euclidean distance ||a - b||.
double distance(const SphereVector& a, const SphereVector& b);

}  // namespace ghdlab
