#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ghdlab/parallel.hpp"
#include "ghdlab/random.hpp"
#include "ghdlab/sphere.hpp"

namespace ghdlab {

/// An upper bound next to a measured or exactly computed probability.
///
/// Monte Carlo checks: half_width = 2.576 sqrt(p(1-p)/trials), floored at
/// 3/trials when the count is 0 or trials, and
/// verdict = estimate <= analytic_bound + half_width. Exact checks have
/// trials = 0, half_width = 0, and the comparison is done in 50-digit
/// arithmetic. `violations` counts samplewise implications that failed
/// (only some checks have one); any violation makes the verdict false.
struct BoundCheck {
  std::string name;
  std::vector<std::pair<std::string, double>> params;
  double analytic_bound = 0.0;
  double estimate = 0.0;
  double half_width = 0.0;
  std::uint64_t trials = 0;
  bool exact = false;
  std::uint64_t violations = 0;
  bool verdict = false;

  std::optional<double> param(const std::string& key) const;
};

/// estimate <= analytic_bound + half_width and no violations.
bool recompute_verdict(const BoundCheck& c);

// Sphere caps.

/// e^{-gamma^2 n / 2}.
double cap_bound(double gamma, std::size_t n);
/// Exact Haar measure of {y : x.y >= gamma}: (1/2) I_{1-gamma^2}((n-1)/2, 1/2)
/// for gamma >= 0.
double cap_measure(double gamma, std::size_t n);
/// Fraction of Haar samples y with x.y >= gamma.
BoundCheck estimate_cap(const SphereVector& x, double gamma, std::uint64_t trials,
                        const RandomSource& source, Exec exec = Exec::parallel);

/// Subsets of the sphere with a distance oracle.
struct SphereSet {
  enum class Kind { everything, cap, finite };
  Kind kind = Kind::everything;
  SphereVector center = SphereVector::basis(2, 0);  // cap direction
  double level = 0.0;                               // cap: {x : x.center >= level}
  std::vector<SphereVector> points;                 // finite sets
  std::size_t dimension = 2;

  static SphereSet everything(std::size_t n);
  static SphereSet cap(const SphereVector& center, double level);
  static SphereSet hemisphere(std::size_t n);  // {x : x_1 >= 0}
  static SphereSet finite(std::vector<SphereVector> points);

  bool contains(const SphereVector& x) const;
  /// Euclidean distance from x to the set.
  double distance_to(const SphereVector& x) const;
  /// Exact Haar measure where closed form exists (everything, caps).
  std::optional<double> measure() const;
};

/// 4 e^{-t^2 n / 4}.
double sphere_concentration_bound(double t, std::size_t n);
/// Estimates Pr(x in A) Pr(x' not in A_t) as one Bernoulli: each trial draws
/// independent Haar x, x' and succeeds when x in A and d(x', A) > t.
BoundCheck sphere_concentration_check(const SphereSet& A, double t, std::uint64_t trials,
                                      const RandomSource& source, Exec exec = Exec::parallel);

// Hamming caps.

/// e^{-2 c^2}.
double hamming_cap_bound(double c);
/// Largest d with d <= n/2 - c sqrt(n) (tolerance 1e-9), or -1 if none.
long long hamming_cap_radius(std::size_t n, double c);
/// Exact 2^{-n} |T_c|: sum over d <= n/2 - c sqrt(n) of C(n, d) / 2^n.
BoundCheck hamming_cap_check(std::size_t n, double c);
/// hamming_cap_check for every n in [1, max_n] and every c, sharing one
/// binomial row per n.
std::vector<BoundCheck> hamming_cap_sweep(std::size_t max_n, const std::vector<double>& cs);

/// Subsets of {0,1}^n with a distance oracle.
struct HammingSet {
  enum class Kind { explicit_table, weight_ball };
  Kind kind = Kind::explicit_table;
  std::size_t n = 0;
  std::vector<std::uint8_t> member;  // explicit: 2^n entries
  std::size_t radius = 0;            // weight ball: {x : |x| <= radius}

  static HammingSet from_table(std::size_t n, std::vector<std::uint8_t> member);
  static HammingSet everything(std::size_t n);
  static HammingSet weight_ball(std::size_t n, std::size_t radius);
  /// Strings with more zeros than ones, |x| < n/2.
  static HammingSet majority_zero(std::size_t n);
  /// Each string independently with probability `density`.
  static HammingSet random(std::size_t n, double density, Rng& rng);
};

inline constexpr std::size_t kHammingExhaustiveMaxN = 20;

/// e^{-c^2}.
double hamming_concentration_bound(double c);
/// Pr(x in A) Pr(x not in A_c) with A_c = points within c sqrt(n) of A.
/// Exhaustive (exact) when n <= 20 and A is enumerable; otherwise Monte
/// Carlo with independent x, x' per trial (weight balls only).
BoundCheck hamming_concentration_check(const HammingSet& A, double c,
                                       std::uint64_t trials = 0,
                                       const RandomSource& source = {},
                                       Exec exec = Exec::parallel);

// Inner products of Haar pairs.

/// log(omega_{n-1} / omega_n), omega_n the volume of the unit n-ball.
double log_ball_volume_ratio(std::size_t n);
/// Density of x.y for independent Haar x, y on S^{n-1}:
/// Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2)) (1 - t^2)^{(n-3)/2}. Requires n >= 2.
double inner_product_density(std::size_t n, double t);
/// Pr(0 <= x.y <= alpha) by tanh-sinh quadrature of the density.
double near_zero_mass_quadrature(double alpha, std::size_t n);
/// Same quantity via the incomplete beta function: (1/2) I_{alpha^2}(1/2, (n-1)/2).
double near_zero_mass_beta(double alpha, std::size_t n);

struct NearZeroMass {
  BoundCheck monte_carlo;
  BoundCheck quadrature;
};

/// Pr(0 <= x.y <= alpha) vs alpha sqrt(n), by sampling and by quadrature.
NearZeroMass near_zero_mass_check(double alpha, std::size_t n, std::uint64_t trials,
                                  const RandomSource& source, Exec exec = Exec::parallel);

/// Pr(x~.y >= alpha and x.y < 0) vs e^{-alpha^2 n / (8 d1^2)} with x~ = e_1,
/// x = (1 - d^2/2, -sqrt(d^2 - d^4/4), 0, ...). Counts samples where the
/// event holds but y_2 > alpha/(2d) does not as violations. Requires
/// 0 < alpha <= 1/(4 sqrt(n)) and 0 <= d <= d1 <= 1.
BoundCheck perturbed_sign_flip_check(double d, double alpha, std::size_t n, double d1,
                                     std::uint64_t trials, const RandomSource& source,
                                     Exec exec = Exec::parallel);

// Hypergeometric tail.

/// Pr(|X ∩ Y| <= E|X ∩ Y| - a) for Y a fixed weight_y subset of [n] and X a
/// uniform weight_x subset, vs e^{-2 a^2 / weight_x}. Exact.
BoundCheck hypergeometric_tail_check(std::size_t n, std::size_t weight_y, std::size_t weight_x,
                                     double a);
/// Monte Carlo version of the same tail.
BoundCheck hypergeometric_tail_monte_carlo(std::size_t n, std::size_t weight_y,
                                           std::size_t weight_x, double a, std::uint64_t trials,
                                           const RandomSource& source, Exec exec = Exec::parallel);

struct SweepOptions {
  std::uint64_t trials = 200000;
  RandomSource source{};
  Exec exec = Exec::parallel;
  std::size_t exact_max_n = 1000;
};

/// The standing sweep over every bound above.
std::vector<BoundCheck> default_sweep(const SweepOptions& options);

}  // namespace ghdlab
