#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace ghdlab {

/// SplitMix64 finalizer. Used to derive generator states from (seed, stream)
/// pairs so that nearby integers give unrelated streams.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** generator. Satisfies UniformRandomBitGenerator, so the
/// standard distributions work on top of it.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t s = seed;
    for (auto& word : state_) {
      s += 0x9e3779b97f4a7c15ULL;
      word = mix64(s);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(*this);
  }

  bool coin() noexcept { return ((*this)() >> 63) != 0; }

  double normal() { return normal_(*this); }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4]{};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// A reproducible source of randomness: identical (seed, stream) pairs give
/// identical draws, distinct streams give independent ones.
struct RandomSource {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  Rng rng() const noexcept { return Rng(mix64(seed ^ mix64(stream ^ 0x5851f42d4c957f2dULL))); }

  /// Child stream for trial / index `i`. Children of distinct parents or
  /// distinct indices do not collide in practice (64-bit mixing).
  RandomSource substream(std::uint64_t i) const noexcept {
    return {seed, mix64(stream * 0x2545f4914f6cdd1dULL + mix64(i + 1))};
  }

  friend bool operator==(const RandomSource&, const RandomSource&) = default;
};

}  // namespace ghdlab
