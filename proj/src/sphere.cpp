#include "ghdlab/sphere.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ghdlab {

namespace {

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("vectors have different dimensions: " + std::to_string(a) +
                                " vs " + std::to_string(b));
  }
}

}  // namespace

SphereVector SphereVector::from_coords(std::vector<double> coords) {
  if (coords.empty()) throw std::invalid_argument("sphere dimension must be at least 1");
  const double r = norm(coords);
  if (!(std::abs(r - 1.0) <= kUnitNormTolerance)) {
    throw std::invalid_argument("vector norm " + std::to_string(r) + " is not 1");
  }
  return SphereVector(std::move(coords));
}

SphereVector SphereVector::normalized(std::vector<double> coords) {
  if (coords.empty()) throw std::invalid_argument("sphere dimension must be at least 1");
  const double r = norm(coords);
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  for (double& c : coords) c /= r;
  return SphereVector(std::move(coords));
}

SphereVector SphereVector::basis(std::size_t n, std::size_t axis) {
  if (axis >= n) throw std::invalid_argument("basis axis out of range");
  std::vector<double> c(n, 0.0);
  c[axis] = 1.0;
  return SphereVector(std::move(c));
}

SphereVector SphereVector::operator-() const {
  std::vector<double> c(coords_);
  for (double& v : c) v = -v;
  return SphereVector(std::move(c));
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double dot(const SphereVector& a, const SphereVector& b) { return dot(a.coords(), b.coords()); }

double distance(const SphereVector& a, const SphereVector& b) {
  require_same_size(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace ghdlab
