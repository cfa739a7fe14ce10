#include "ghdlab/delta_net.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "ghdlab/instances.hpp"
#include "ghdlab/kernels.hpp"

namespace ghdlab {

DeltaNet DeltaNet::build(std::size_t n, double delta, const RandomSource& source,
                         std::uint64_t certify_run, std::size_t max_points) {
  if (n < 2) throw std::invalid_argument("delta-net needs dimension >= 2");
  if (!(delta > 0.0) || delta >= 2.0) throw std::invalid_argument("delta must lie in (0, 2)");
  if (certify_run == 0) throw std::invalid_argument("certify_run must be positive");
  Rng rng = source.rng();
  std::vector<double> coords;
  std::uint64_t covered_in_a_row = 0;
  const double delta2 = delta * delta;
  while (covered_in_a_row < certify_run) {
    const SphereVector x = sample_haar(n, rng);
    double d2 = 4.0;
    if (!coords.empty()) kernels::nearest_row(coords, x.coords(), n, &d2);
    if (d2 <= delta2) {
      ++covered_in_a_row;
      continue;
    }
    covered_in_a_row = 0;
    if (coords.size() / n >= max_points) {
      return DeltaNet(n, delta, std::move(coords), false);
    }
    coords.insert(coords.end(), x.coords().begin(), x.coords().end());
  }
  return DeltaNet(n, delta, std::move(coords), true);
}

SphereVector DeltaNet::point(std::size_t i) const {
  const auto c = coords(i);
  return SphereVector::from_coords(std::vector<double>(c.begin(), c.end()));
}

std::size_t DeltaNet::round_index(const SphereVector& x) const {
  if (x.size() != n_) {
    throw std::invalid_argument("net dimension " + std::to_string(n_) +
                                " does not match input dimension " + std::to_string(x.size()));
  }
  return kernels::nearest_row(coords_, x.coords(), n_);
}

double DeltaNet::max_rounding_distance(std::uint64_t samples, const RandomSource& source,
                                       Exec exec) const {
  const auto d = map_index<double>(
      samples,
      [&](std::uint64_t i) {
        Rng rng = source.substream(i).rng();
        const SphereVector x = sample_haar(n_, rng);
        double d2 = 0.0;
        kernels::nearest_row(coords_, x.coords(), n_, &d2);
        return std::sqrt(d2);
      },
      exec);
  return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

Protocol<SphereVector> discretize(const Protocol<SphereVector>& p, const DeltaNet& net,
                                  double gamma) {
  if (net.delta() > gamma / 4.0) {
    throw std::invalid_argument("net spacing " + std::to_string(net.delta()) +
                                " exceeds gamma/4 = " + std::to_string(gamma / 4.0));
  }
  auto shared = std::make_shared<const DeltaNet>(net);
  auto snap = [shared](const SphereVector& v) { return shared->round(v); };
  std::vector<Protocol<SphereVector>::Round> rounds;
  for (const auto& r : p.round_list()) {
    rounds.push_back({r.spec, [fn = r.message, snap](const SphereVector& own, const Transcript& t) {
                        return fn(snap(own), t);
                      }});
  }
  return Protocol<SphereVector>(
      "net(" + p.name() + ")", std::move(rounds),
      [fn = p.output_fn(), snap](const SphereVector& own, const Transcript& t) {
        return fn(snap(own), t);
      },
      p.output_party());
}

TableProtocol tabulate_on_net(const Protocol<SphereVector>& p, const DeltaNet& net) {
  std::vector<SphereVector> domain;
  domain.reserve(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) domain.push_back(net.point(i));
  return tabulate(p, std::span<const SphereVector>(domain));
}

}  // namespace ghdlab
