#pragma once

// Hand-rolled generators for property tests. Each property loops over
// kCases draws from a fixed seed, so failures reproduce.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ghdlab/bitstring.hpp"
#include "ghdlab/instances.hpp"
#include "ghdlab/protocol.hpp"
#include "ghdlab/protocols.hpp"
#include "ghdlab/random.hpp"
#include "ghdlab/sphere.hpp"

namespace gen {

inline constexpr int kCases = 200;

inline ghdlab::Rng rng_for(std::uint64_t property_id) { return ghdlab::Rng(0xfeed0000ULL + property_id); }

inline std::size_t size_in(ghdlab::Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + rng.below(hi - lo + 1);
}

inline double real_in(ghdlab::Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

inline ghdlab::BitString bits(ghdlab::Rng& rng, std::size_t n) {
  ghdlab::BitString x(n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, rng.coin());
  return x;
}

/// Bit string with a biased weight, to reach the tails of the weight distribution.
inline ghdlab::BitString biased_bits(ghdlab::Rng& rng, std::size_t n) {
  const double p = rng.uniform();
  ghdlab::BitString x(n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, rng.uniform() < p);
  return x;
}

inline ghdlab::SphereVector unit(ghdlab::Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& c : v) {
      c = rng.normal();
      norm += c * c;
    }
  } while (norm == 0.0);
  return ghdlab::SphereVector::normalized(std::move(v));
}

/// Alternating schedule with random message lengths.
inline std::vector<ghdlab::RoundSpec> schedule(ghdlab::Rng& rng, std::size_t rounds, std::size_t max_bits) {
  std::vector<ghdlab::RoundSpec> s;
  for (std::size_t r = 0; r < rounds; ++r) {
    s.push_back({r % 2 == 0 ? ghdlab::Party::alice : ghdlab::Party::bob, size_in(rng, 0, max_bits)});
  }
  return s;
}

inline ghdlab::TableProtocol table_protocol(ghdlab::Rng& rng, std::size_t n, std::size_t rounds,
                                            std::size_t max_bits) {
  return ghdlab::protocols::random_table(n, schedule(rng, rounds, max_bits), rng);
}

}  // namespace gen
