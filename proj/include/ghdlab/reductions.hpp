#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ghdlab/bitstring.hpp"
#include "ghdlab/parallel.hpp"
#include "ghdlab/protocol.hpp"
#include "ghdlab/random.hpp"
#include "ghdlab/sphere.hpp"

namespace ghdlab {

/// x -> ((-1)^{x_i} / sqrt(n))_i. Embedded inner product is 1 - 2 Delta / n.
SphereVector embed_cube_to_sphere(const BitString& x);

/// Probability that a random hyperplane separates two unit vectors with the
/// given inner product: acos(ip) / pi. Values within 1e-9 outside [-1, 1]
/// are clamped; anything further out is rejected.
double collision_probability(double inner_product);

/// Shared public randomness for the sphere-to-cube sketch. Hyperplane i is
/// drawn from RandomSource{seed, stream}.substream(i), so either party (or
/// any worker) regenerates it independently.
struct HyperplaneSketchSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::size_t n_out = 0;

  RandomSource source() const noexcept { return {seed, stream}; }
  friend bool operator==(const HyperplaneSketchSeed&, const HyperplaneSketchSeed&) = default;
};

/// Materialized hyperplane normals for one seed and input dimension. Normals
/// are standard Gaussian vectors: the direction is Haar and only the sign of
/// x.w is ever used, so they are not normalized.
class HyperplaneSketch {
 public:
  HyperplaneSketch(const HyperplaneSketchSeed& seed, std::size_t dimension,
                   Exec exec = Exec::parallel);

  std::size_t n_out() const noexcept { return seed_.n_out; }
  std::size_t dimension() const noexcept { return dimension_; }
  const HyperplaneSketchSeed& seed() const noexcept { return seed_; }
  std::span<const double> normal(std::size_t i) const noexcept {
    return {normals_.data() + i * dimension_, dimension_};
  }

  /// Bit i = sgn(x . w_i), with sgn(0) = 0.
  BitString apply(const SphereVector& x, Exec exec = Exec::parallel) const;

 private:
  HyperplaneSketchSeed seed_;
  std::size_t dimension_;
  std::vector<double> normals_;
};

/// One-shot sketch that regenerates the hyperplanes from the seed.
BitString sketch_sphere_to_cube(const SphereVector& x, const HyperplaneSketchSeed& seed,
                                Exec exec = Exec::parallel);

struct GapTransferSide {
  double inner_product = 0.0;
  double empirical_rate = 0.0;  // fraction of differing sketch bits
  double closed_form = 0.0;     // acos(inner_product) / pi
  double abs_err = 0.0;
  double sigma = 0.0;           // binomial standard error of empirical_rate
  double mean_offset = 0.0;     // mean of Delta - n_out/2
  double sd_offset = 0.0;
  double correct_side = 0.0;    // fraction landing on the right side of the cube gap
  double correct_side_half_width = 0.0;
  std::uint64_t trials = 0;
};

struct GapTransferReport {
  double gamma = 0.0;
  std::size_t n_out = 0;
  std::size_t dimension = 0;
  double c0 = 0.0;
  double cube_gap = 0.0;   // g = n_out * gamma / c0
  GapTransferSide positive;  // x.y = +gamma
  GapTransferSide negative;  // x.y = -gamma
  double failure_rate = 0.0;  // 1 - correct_side, both sides pooled
  double failure_half_width = 0.0;
  double taylor_residual = 0.0;       // |acos(gamma) - (pi/2 - gamma - gamma^3/6)|
  double linearized_bias = 0.0;       // 1/2 - acos(gamma)/pi
  double linearized_bias_taylor = 0.0;  // gamma/pi + gamma^3/(6 pi)
};

inline constexpr double kDefaultC0 = 8.0;

/// Sketches `trials` pairs at x.y = +gamma and as many at -gamma (dimension
/// `dimension`, fresh hyperplanes each trial) and compares the differing-bit
/// statistics with the closed form. Requires 0 <= gamma < 1.
GapTransferReport gap_transfer_check(double gamma, std::size_t n_out, std::uint64_t trials,
                                     const RandomSource& source, double c0 = kDefaultC0,
                                     std::size_t dimension = 3, Exec exec = Exec::parallel);

struct C0CalibrationRow {
  double c0 = 0.0;
  double gamma = 0.0;
  double failure_rate = 0.0;  // sketched pair misses the cube promise side
  double failure_half_width = 0.0;
  double lifted_error = 0.0;  // error of the sketch-lifted exact cube protocol
  double lifted_half_width = 0.0;
};

struct C0Calibration {
  std::size_t n = 0;
  double g = 0.0;
  double target = 0.05;
  std::vector<C0CalibrationRow> rows;
  double chosen_c0 = 0.0;   // smallest c0 whose lifted error + half-width <= target; 0 if none
  bool monotone = false;    // failure curve nonincreasing within confidence bands
};

/// Sweeps C0 at fixed (n, g): gamma = C0 g / n, pairs on the +-gamma boundary,
/// sketch to n bits, run the full-information cube protocol on the sketches.
C0Calibration calibrate_c0(std::size_t n, double g, const std::vector<double>& c0_grid,
                           std::uint64_t trials, const RandomSource& source,
                           double target = 0.05, std::size_t dimension = 3,
                           Exec exec = Exec::parallel);

enum class LiftDirection { cube_to_sphere, sphere_to_cube };

/// GHD_{n,g} protocol from a GHS_{n,2g/n} protocol: both parties embed their
/// cube inputs and run the sphere protocol. Deterministic; rounds and max-cost
/// are unchanged. Inputs of dimension other than n are rejected at run time.
Protocol<BitString> lift_cube_to_sphere(const Protocol<SphereVector>& sphere_protocol,
                                        std::size_t n);

/// GHS_{d,C0 g/n} protocol from a GHD_{n,g} protocol: the public coin fixes a
/// HyperplaneSketchSeed with n_out = n; both parties sketch their unit
/// vectors (dimension d) and run the cube protocol.
PublicCoinProtocol<SphereVector> lift_sphere_to_cube(const Protocol<BitString>& cube_protocol,
                                                     std::size_t n, std::size_t dimension);

}  // namespace ghdlab
