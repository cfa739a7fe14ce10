#include <doctest.h>

#include <bit>
#include <cmath>

#include "generators.hpp"
#include "ghdlab/bitstring.hpp"
#include "ghdlab/instances.hpp"

using namespace ghdlab;

namespace {

// Independent oracle: character-by-character comparison.
std::size_t naive_distance(const BitString& x, const BitString& y) {
  const std::string a = x.to_string();
  const std::string b = y.to_string();
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

}  // namespace

TEST_SUITE("instances") {

TEST_CASE("hamming distance examples") {
  const auto x = BitString::from_string("0101");
  CHECK(hamming_distance(x, x) == 0);
  CHECK(hamming_distance(BitString::from_string("0000"), BitString::from_string("1111")) == 4);
  CHECK(hamming_distance(x, BitString::from_string("0110")) == 2);
  CHECK_THROWS_AS(hamming_distance(x, BitString(5)), std::invalid_argument);
}

TEST_CASE("property: hamming distance is a metric and matches the string oracle") {
  Rng rng = gen::rng_for(1);
  for (int i = 0; i < gen::kCases; ++i) {
    const std::size_t n = gen::size_in(rng, 1, 300);
    const BitString x = gen::biased_bits(rng, n);
    const BitString y = gen::bits(rng, n);
    const BitString z = gen::bits(rng, n);
    const std::size_t dxy = hamming_distance(x, y);
    REQUIRE(dxy == naive_distance(x, y));
    CHECK(dxy == hamming_distance(y, x));
    CHECK(dxy == (x ^ y).weight());
    CHECK(hamming_distance(x, z) <= dxy + hamming_distance(y, z));
    CHECK(hamming_distance(x, ~x) == n);
  }
}

TEST_CASE("property: string, hex and word round trips") {
  Rng rng = gen::rng_for(2);
  for (int i = 0; i < gen::kCases; ++i) {
    const std::size_t n = gen::size_in(rng, 1, 200);
    const BitString x = gen::bits(rng, n);
    CHECK(BitString::from_string(x.to_string()) == x);
    CHECK(BitString::from_hex(n, x.to_hex()) == x);
    if (n <= 64) CHECK(BitString::from_word(x.to_word(), n) == x);
  }
  CHECK_THROWS(BitString::from_hex(3, "f"));  // padding bit set
  CHECK_THROWS(BitString::from_string("01x"));
}

TEST_CASE("lexicographic order agrees for packed and unpacked strings") {
  Rng rng = gen::rng_for(3);
  for (int i = 0; i < gen::kCases; ++i) {
    const std::size_t n = gen::size_in(rng, 1, 16);
    const std::uint64_t a = rng.below(1ULL << n);
    const std::uint64_t b = rng.below(1ULL << n);
    const auto sa = BitString::from_word(a, n);
    const auto sb = BitString::from_word(b, n);
    CHECK(lex_less_packed(a, b) == (sa.to_string() < sb.to_string()));
    CHECK(lex_less(sa, sb) == (sa.to_string() < sb.to_string()));
  }
}

TEST_CASE("ghd label examples") {
  const auto p = CubePromise::make(4, 2);
  const auto z = BitString::from_string("0000");
  CHECK(ghd_label(z, z, p) == Label::zero);
  CHECK(ghd_label(z, BitString::from_string("1111"), p) == Label::one);
  CHECK(ghd_label(z, BitString::from_string("1100"), p) == Label::outside_promise);
  CHECK_THROWS_AS(CubePromise::make(4, 2.5), std::invalid_argument);
}

TEST_CASE("ghs label examples") {
  const auto p = SpherePromise::make(3, 0.1);
  const auto e1 = SphereVector::basis(3, 0);
  CHECK(ghs_label(e1, e1, p) == Label::zero);
  CHECK(ghs_label(e1, -e1, p) == Label::one);
  CHECK(ghs_label(e1, SphereVector::basis(3, 1), p) == Label::outside_promise);
}

TEST_CASE("property: labels partition by distance") {
  Rng rng = gen::rng_for(4);
  for (int i = 0; i < gen::kCases; ++i) {
    const std::size_t n = gen::size_in(rng, 1, 64);
    const double g = gen::real_in(rng, 0.0, n / 2.0);
    const auto p = CubePromise::make(n, g);
    const BitString x = gen::bits(rng, n);
    const BitString y = gen::biased_bits(rng, n);
    const double d = static_cast<double>(hamming_distance(x, y));
    const Label l = ghd_label(x, y, p);
    if (d <= n / 2.0 - g) {
      CHECK(l == Label::zero);
    } else if (d >= n / 2.0 + g) {
      CHECK(l == Label::one);
    } else {
      CHECK(l == Label::outside_promise);
    }
  }
}

TEST_CASE("sgn convention puts zero on the 0 side") {
  CHECK(sgn(0.0) == 0);
  CHECK(sgn(-0.0) == 0);
  CHECK(sgn(-1e-300) == 1);
  CHECK(cube_sign_label(2, 4) == 0);
  CHECK(cube_sign_label(3, 4) == 1);
}

TEST_CASE("haar samples are unit vectors with coordinate variance 1/n") {
  Rng rng = gen::rng_for(5);
  constexpr std::size_t n = 50;
  constexpr int draws = 100000;
  std::vector<double> mean(n, 0.0);
  for (int i = 0; i < draws; ++i) {
    const auto v = sample_haar(n, rng);
    double norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      norm += v[j] * v[j];
      mean[j] += v[j];
    }
    REQUIRE(std::abs(std::sqrt(norm) - 1.0) <= 1e-9);
  }
  const double tol = 4.0 / std::sqrt(draws * 1.0 * n);
  for (double m : mean) CHECK(std::abs(m / draws) <= tol);
}

TEST_CASE("haar on the 0-sphere is a fair sign") {
  Rng rng = gen::rng_for(6);
  int plus = 0;
  constexpr int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const auto v = sample_haar(1, rng);
    REQUIRE(std::abs(v[0]) == 1.0);
    plus += v[0] > 0;
  }
  CHECK(std::abs(plus / static_cast<double>(draws) - 0.5) <= 3.0 * 0.5 / std::sqrt(draws));
}

TEST_CASE("promise sampling") {
  Rng rng = gen::rng_for(7);
  const auto p = CubePromise::make(4, 2);
  for (int i = 0; i < 500; ++i) {
    const auto pair = sample_promise(p, rng);
    const auto d = hamming_distance(pair.x, pair.y);
    CHECK((d == 0 || d == 4));
  }
  CHECK_THROWS_AS(sample_promise(SpherePromise::make(2, 1.0), rng, 1000), PromiseUnreachable);
}

TEST_CASE("property: promise samples satisfy the promise and are seed-deterministic") {
  Rng rng = gen::rng_for(8);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = gen::size_in(rng, 16, 256);
    const double g = gen::real_in(rng, 0.0, std::sqrt(static_cast<double>(n)));
    const auto p = CubePromise::make(n, g);
    const RandomSource src{rng(), 3};
    const auto a = sample_promise(p, src);
    const auto b = sample_promise(p, src);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(p.holds(hamming_distance(a.x, a.y)));

    const std::size_t m = gen::size_in(rng, 2, 40);
    const double gamma = gen::real_in(rng, 0.01, 0.3);
    const auto sp = sample_promise(SpherePromise::make(m, gamma), rng);
    CHECK(std::abs(dot(sp.x, sp.y)) >= gamma);
  }
}

TEST_CASE("flip and sample-at-inner-product hit their targets") {
  Rng rng = gen::rng_for(9);
  for (int i = 0; i < gen::kCases; ++i) {
    const std::size_t n = gen::size_in(rng, 1, 100);
    const BitString x = gen::bits(rng, n);
    const std::size_t d = gen::size_in(rng, 0, n);
    CHECK(hamming_distance(x, flip_random_coordinates(x, d, rng)) == d);

    const std::size_t m = gen::size_in(rng, 2, 30);
    const auto u = gen::unit(rng, m);
    const double ip = gen::real_in(rng, -1.0, 1.0);
    CHECK(dot(u, sample_at_inner_product(u, ip, rng)) == doctest::Approx(ip).epsilon(1e-9));
  }
}

TEST_CASE("repeat amplification") {
  CHECK(repeat_amplify(BitString::from_string("01"), 3).to_string() == "010101");
  Rng rng = gen::rng_for(10);
  for (int i = 0; i < gen::kCases; ++i) {
    const std::size_t n = gen::size_in(rng, 1, 40);
    const std::size_t r = gen::size_in(rng, 1, 6);
    const BitString x = gen::bits(rng, n);
    const BitString y = gen::bits(rng, n);
    CHECK(hamming_distance(repeat_amplify(x, r), repeat_amplify(y, r)) == r * hamming_distance(x, y));
  }
}

}  // TEST_SUITE
