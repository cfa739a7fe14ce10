#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ghdlab/parallel.hpp"
#include "ghdlab/protocol.hpp"
#include "ghdlab/random.hpp"
#include "ghdlab/sphere.hpp"

namespace ghdlab {

class NetNotCertified : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite point set on S^{n-1} meant to cover the sphere at spacing delta.
///
/// Built greedily from Haar samples: a sample joins the net when it is
/// farther than delta from every point already in it. Building stops once
/// `certify_run` consecutive samples are all covered. That is a heuristic
/// certificate, not a proof of covering.
class DeltaNet {
 public:
  static DeltaNet build(std::size_t n, double delta, const RandomSource& source,
                        std::uint64_t certify_run = 2000, std::size_t max_points = 200000);

  std::size_t dimension() const noexcept { return n_; }
  double delta() const noexcept { return delta_; }
  std::size_t size() const noexcept { return coords_.size() / n_; }
  bool certified() const noexcept { return certified_; }

  SphereVector point(std::size_t i) const;
  std::span<const double> coords(std::size_t i) const noexcept {
    return {coords_.data() + i * n_, n_};
  }
  std::span<const double> flat() const noexcept { return coords_; }

  /// Index of the nearest net point (ties to the lower index).
  std::size_t round_index(const SphereVector& x) const;
  SphereVector round(const SphereVector& x) const { return point(round_index(x)); }

  /// Largest distance from a sample to its nearest net point over `samples`
  /// fresh Haar draws.
  double max_rounding_distance(std::uint64_t samples, const RandomSource& source,
                               Exec exec = Exec::parallel) const;

 private:
  DeltaNet(std::size_t n, double delta, std::vector<double> coords, bool certified)
      : n_(n), delta_(delta), coords_(std::move(coords)), certified_(certified) {}

  std::size_t n_;
  double delta_;
  std::vector<double> coords_;
  bool certified_;
};

/// Protocol that first rounds both inputs to the nearest net point and then
/// runs `p`. Rejects nets with delta > gamma / 4.
Protocol<SphereVector> discretize(const Protocol<SphereVector>& p, const DeltaNet& net,
                                  double gamma);

/// `p` tabulated on the net points: domain index i stands for net.point(i).
TableProtocol tabulate_on_net(const Protocol<SphereVector>& p, const DeltaNet& net);

}  // namespace ghdlab
