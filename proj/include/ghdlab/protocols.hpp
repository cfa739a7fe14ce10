#pragma once

// Builtin protocols: the full-information protocol, constant protocols, the
// shared-randomness sampling protocol, and small table protocols used to
// exercise round elimination.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ghdlab/bitstring.hpp"
#include "ghdlab/protocol.hpp"
#include "ghdlab/random.hpp"
#include "ghdlab/sphere.hpp"

namespace ghdlab::protocols {

/// Alice sends x (n bits); Bob outputs the sign label (0 iff Delta <= n/2).
Protocol<BitString> trivial_cube(std::size_t n);

/// trivial_cube as tables (n <= 15).
TableProtocol trivial_cube_table(std::size_t n);

/// 0-round protocol; Bob outputs `value`.
template <class Input>
Protocol<Input> constant(int value) {
  return Protocol<Input>("constant" + std::to_string(value), {},
                         [value](const Input&, const Transcript&) { return value; });
}

TableProtocol constant_table(std::uint64_t domain_size, int value);

/// Alice sends the sign pattern of x (n bits); Bob outputs
/// sgn(sum_i s_i y_i). Exact on inputs of the form (+-1/sqrt(n))^n.
Protocol<SphereVector> sign_pattern_sphere(std::size_t n);

/// Probability that a majority vote over m independent samples is wrong when
/// each sample points the wrong way with probability p (m odd).
double majority_error(std::size_t m, double p);

/// Cube sampling protocol: the coin picks m indices with replacement; Alice
/// sends x at those indices; Bob outputs 1 iff more than half differ from y.
/// `gamma` is recorded in the name only. Rejects even or zero m.
PublicCoinProtocol<BitString> sampling_cube(std::size_t n, double gamma, std::size_t m);

/// Sphere sampling protocol: the coin picks m random hyperplanes; Alice sends
/// sgn(x.w_j); Bob outputs 1 iff more than half disagree with sgn(y.w_j).
PublicCoinProtocol<SphereVector> sampling_sphere(std::size_t n, double gamma, std::size_t m);

/// Table protocol with the given schedule whose message and output tables
/// are uniform random.
TableProtocol random_table(std::size_t n, const std::vector<RoundSpec>& schedule, Rng& rng);

/// Round 1: Alice sends x_1. Round 2: Bob sends y. Alice outputs the sign
/// label. Exact, with a 1-bit first message.
TableProtocol first_bit_then_trivial(std::size_t n);

/// k-round exact protocol with alternating speakers: Alice sends x in round 1,
/// every later round is a 0-bit message. The output party computes the sign
/// label from its own input and x.
TableProtocol trivial_then_silent(std::size_t n, std::size_t k);

/// Alternating protocol where round r's speaker sends the first `bits` bits of
/// their input (bits <= n) and the output party outputs the sign label of its
/// input against everything revealed about the other input, treating unknown
/// coordinates as equal. Inexact; a good playground for elimination.
TableProtocol prefix_revealing(std::size_t n, std::size_t k, std::size_t bits);

}  // namespace ghdlab::protocols
