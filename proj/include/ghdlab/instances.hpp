#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "ghdlab/bitstring.hpp"
#include "ghdlab/random.hpp"
#include "ghdlab/sphere.hpp"

namespace ghdlab {

/// Outcome of a gap predicate.
enum class Label : int { zero = 0, one = 1, outside_promise = 2 };

const char* to_string(Label label);

/// GHD_{n,g}: |Delta(x,y) - n/2| >= g.
struct CubePromise {
  std::size_t n = 1;
  double g = 0.0;

  /// Validates n >= 1 and 0 <= g <= n/2.
  static CubePromise make(std::size_t n, double g);

  bool holds(std::size_t distance) const noexcept;
};

/// GHS_{n,gamma}: |x . y| >= gamma.
struct SpherePromise {
  std::size_t n = 1;
  double gamma = 1.0;

  /// Validates n >= 1 and 0 < gamma <= 1.
  static SpherePromise make(std::size_t n, double gamma);

  bool holds(double inner_product) const noexcept;
};

/// sgn(z) = 0 if z >= 0, 1 otherwise.
constexpr int sgn(double z) noexcept { return z >= 0.0 ? 0 : 1; }

/// Sign label of a cube pair through the +-1/sqrt(n) embedding:
/// 0 iff Delta(x,y) <= n/2, i.e. iff the embedded inner product is >= 0.
constexpr int cube_sign_label(std::size_t distance, std::size_t n) noexcept {
  return 2 * distance <= n ? 0 : 1;
}

/// 0 if Delta <= n/2 - g, 1 if Delta >= n/2 + g, outside_promise otherwise.
Label ghd_label(const BitString& x, const BitString& y, const CubePromise& promise);
Label ghd_label(std::size_t distance, const CubePromise& promise) noexcept;

/// 0 if x.y >= gamma, 1 if x.y <= -gamma, outside_promise otherwise.
Label ghs_label(const SphereVector& x, const SphereVector& y, const SpherePromise& promise);

class PromiseUnreachable : public std::runtime_error {
 public:
  explicit PromiseUnreachable(std::uint64_t attempts);
  std::uint64_t attempts() const noexcept { return attempts_; }

 private:
  std::uint64_t attempts_;
};

inline constexpr std::uint64_t kDefaultRejectionBudget = 1'000'000;

struct CubePair {
  BitString x;
  BitString y;
};

struct SpherePair {
  SphereVector x;
  SphereVector y;
};

/// Haar-distributed point of S^{n-1}: normalized standard Gaussian vector.
SphereVector sample_haar(std::size_t n, Rng& rng);
SphereVector sample_haar(std::size_t n, const RandomSource& source);

/// Uniform point of {0,1}^n.
BitString sample_cube(std::size_t n, Rng& rng);

/// Uniform pair on the promise region, by rejection from the product measure.
/// Throws PromiseUnreachable once `budget` attempts have been rejected.
CubePair sample_promise(const CubePromise& promise, Rng& rng,
                        std::uint64_t budget = kDefaultRejectionBudget);
SpherePair sample_promise(const SpherePromise& promise, Rng& rng,
                          std::uint64_t budget = kDefaultRejectionBudget);
CubePair sample_promise(const CubePromise& promise, const RandomSource& source,
                        std::uint64_t budget = kDefaultRejectionBudget);
SpherePair sample_promise(const SpherePromise& promise, const RandomSource& source,
                          std::uint64_t budget = kDefaultRejectionBudget);

/// Copy of x with exactly `distance` uniformly chosen coordinates flipped.
BitString flip_random_coordinates(const BitString& x, std::size_t distance, Rng& rng);

/// Unit vector y with x.y == inner_product, uniform among such vectors.
/// Requires dimension >= 2 and |inner_product| <= 1.
SphereVector sample_at_inner_product(const SphereVector& x, double inner_product, Rng& rng);

/// Concatenation of r copies of x; Delta scales by r.
BitString repeat_amplify(const BitString& x, std::size_t r);

}  // namespace ghdlab
