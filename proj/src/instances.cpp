#include "ghdlab/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace ghdlab {

const char* to_string(Label label) {
  switch (label) {
    case Label::zero:
      return "0";
    case Label::one:
      return "1";
    case Label::outside_promise:
      return "outside-promise";
  }
  return "?";
}

CubePromise CubePromise::make(std::size_t n, double g) {
  if (n == 0) throw std::invalid_argument("cube dimension must be at least 1");
  if (!(g >= 0.0) || g > static_cast<double>(n) / 2.0) {
    throw std::invalid_argument("cube gap g=" + std::to_string(g) + " must lie in [0, n/2]");
  }
  return {n, g};
}

bool CubePromise::holds(std::size_t distance) const noexcept {
  return std::abs(static_cast<double>(distance) - static_cast<double>(n) / 2.0) >= g;
}

SpherePromise SpherePromise::make(std::size_t n, double gamma) {
  if (n == 0) throw std::invalid_argument("sphere dimension must be at least 1");
  if (!(gamma > 0.0) || gamma > 1.0) {
    throw std::invalid_argument("sphere gap gamma=" + std::to_string(gamma) +
                                " must lie in (0, 1]");
  }
  return {n, gamma};
}

bool SpherePromise::holds(double inner_product) const noexcept {
  return std::abs(inner_product) >= gamma;
}

Label ghd_label(std::size_t distance, const CubePromise& promise) noexcept {
  const double d = static_cast<double>(distance);
  const double half = static_cast<double>(promise.n) / 2.0;
  if (d <= half - promise.g) return Label::zero;
  if (d >= half + promise.g) return Label::one;
  return Label::outside_promise;
}

Label ghd_label(const BitString& x, const BitString& y, const CubePromise& promise) {
  if (x.size() != promise.n) throw std::invalid_argument("input dimension differs from promise n");
  return ghd_label(hamming_distance(x, y), promise);
}

Label ghs_label(const SphereVector& x, const SphereVector& y, const SpherePromise& promise) {
  if (x.size() != promise.n) throw std::invalid_argument("input dimension differs from promise n");
  const double ip = dot(x, y);
  if (ip >= promise.gamma) return Label::zero;
  if (ip <= -promise.gamma) return Label::one;
  return Label::outside_promise;
}

PromiseUnreachable::PromiseUnreachable(std::uint64_t attempts)
    : std::runtime_error("promise region unreachable: rejected " + std::to_string(attempts) +
                         " attempts"),
      attempts_(attempts) {}

SphereVector sample_haar(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sphere dimension must be at least 1");
  std::vector<double> g(n);
  for (;;) {
    double norm2 = 0.0;
    for (double& c : g) {
      c = rng.normal();
      norm2 += c * c;
    }
    if (norm2 > 0.0) return SphereVector::normalized(g);
  }
}

SphereVector sample_haar(std::size_t n, const RandomSource& source) {
  Rng rng = source.rng();
  return sample_haar(n, rng);
}

BitString sample_cube(std::size_t n, Rng& rng) {
  BitString x(n);
  for (std::size_t i = 0; i < n; i += 64) {
    const std::uint64_t word = rng();
    for (std::size_t b = 0; b < 64 && i + b < n; ++b) x.set(i + b, ((word >> b) & 1ULL) != 0);
  }
  return x;
}

CubePair sample_promise(const CubePromise& promise, Rng& rng, std::uint64_t budget) {
  for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
    BitString x = sample_cube(promise.n, rng);
    BitString y = sample_cube(promise.n, rng);
    if (promise.holds(hamming_distance(x, y))) return {std::move(x), std::move(y)};
  }
  throw PromiseUnreachable(budget);
}

SpherePair sample_promise(const SpherePromise& promise, Rng& rng, std::uint64_t budget) {
  for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
    SphereVector x = sample_haar(promise.n, rng);
    SphereVector y = sample_haar(promise.n, rng);
    if (promise.holds(dot(x, y))) return {std::move(x), std::move(y)};
  }
  throw PromiseUnreachable(budget);
}

CubePair sample_promise(const CubePromise& promise, const RandomSource& source,
                        std::uint64_t budget) {
  Rng rng = source.rng();
  return sample_promise(promise, rng, budget);
}

SpherePair sample_promise(const SpherePromise& promise, const RandomSource& source,
                          std::uint64_t budget) {
  Rng rng = source.rng();
  return sample_promise(promise, rng, budget);
}

BitString flip_random_coordinates(const BitString& x, std::size_t distance, Rng& rng) {
  if (distance > x.size()) throw std::invalid_argument("cannot flip more coordinates than n");
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates: the first `distance` slots form a uniform subset.
  for (std::size_t i = 0; i < distance; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(x.size() - i));
    std::swap(idx[i], idx[j]);
  }
  BitString y = x;
  for (std::size_t i = 0; i < distance; ++i) y.flip(idx[i]);
  return y;
}

SphereVector sample_at_inner_product(const SphereVector& x, double inner_product, Rng& rng) {
  if (x.size() < 2) throw std::invalid_argument("need dimension >= 2 to fix an inner product");
  if (std::abs(inner_product) > 1.0) throw std::invalid_argument("inner product must be in [-1,1]");
  const std::size_t n = x.size();
  std::vector<double> u(n);
  for (;;) {
    for (double& c : u) c = rng.normal();
    const double proj = dot(u, x.coords());
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] -= proj * x[i];
      norm2 += u[i] * u[i];
    }
    if (norm2 > 1e-24) {
      const double scale = std::sqrt(std::max(0.0, 1.0 - inner_product * inner_product) / norm2);
      std::vector<double> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = inner_product * x[i] + scale * u[i];
      return SphereVector::normalized(std::move(y));
    }
  }
}

BitString repeat_amplify(const BitString& x, std::size_t r) {
  if (r == 0) throw std::invalid_argument("repetition count must be positive");
  BitString out(x.size() * r);
  for (std::size_t block = 0; block < r; ++block) {
    for (std::size_t i = 0; i < x.size(); ++i) out.set(block * x.size() + i, x[i]);
  }
  return out;
}

}  // namespace ghdlab
