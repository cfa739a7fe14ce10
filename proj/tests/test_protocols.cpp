#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "ghdlab/evaluation.hpp"
#include "ghdlab/protocols.hpp"

using namespace ghdlab;

namespace {

// Exact binomial coefficient as a double (small n).
double choose(unsigned n, unsigned k) {
  double c = 1.0;
  for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Direct sum oracle for Pr(Bin(m, p) > m/2).
double majority_oracle(unsigned m, double p) {
  double s = 0.0;
  for (unsigned j = m / 2 + 1; j <= m; ++j) s += choose(m, j) * std::pow(p, j) * std::pow(1 - p, m - j);
  return s;
}

// Brute-force table-protocol error: replays the tables by hand.
std::uint64_t brute_errors(const TableProtocol& p, std::size_t n) {
  std::uint64_t errors = 0;
  const std::uint64_t size = 1ULL << n;
  for (std::uint64_t x = 0; x < size; ++x) {
    for (std::uint64_t y = 0; y < size; ++y) {
      std::uint64_t t = 0;
      std::size_t off = 0;
      for (std::size_t r = 0; r < p.rounds(); ++r) {
        const auto& spec = p.schedule()[r];
        const std::uint64_t own = spec.speaker == Party::alice ? x : y;
        t |= static_cast<std::uint64_t>(p.message_table(r)[(own << off) | t]) << off;
        off += spec.bits;
      }
      const std::uint64_t own = p.output_party() == Party::alice ? x : y;
      const int out = p.output_table()[(own << off) | t];
      errors += out != (2 * std::popcount(x ^ y) <= static_cast<int>(n) ? 0 : 1);
    }
  }
  return errors;
}

}  // namespace

TEST_SUITE("protocols") {

TEST_CASE("trivial protocol is exact with cost n") {
  const std::size_t n = 8;
  const auto p = protocols::trivial_cube(n);
  CHECK(p.max_cost() == n);
  CHECK(p.rounds() == 1);
  const auto r = evaluate_error_exhaustive(p, n, Convention::sign_of_inner_product);
  CHECK(r.errors == 0);
  CHECK(r.counted == 1ULL << (2 * n));
  CHECK(r.max_cost == n);
  const auto t = evaluate_error_exhaustive(protocols::trivial_cube_table(n), n, Convention::sign_of_inner_product);
  CHECK(t.errors == 0);
}

TEST_CASE("constant-0 error is the exact binomial tail 93/256") {
  const std::size_t n = 8;
  double tail = 0.0;
  for (unsigned d = 5; d <= 8; ++d) tail += choose(8, d);
  const auto r = evaluate_error_exhaustive(protocols::constant_table(1ULL << n, 0), n,
                                           Convention::sign_of_inner_product);
  REQUIRE(r.exact);
  CHECK(r.exact->num == 93);
  CHECK(r.exact->den == 256);
  CHECK(r.error_probability == doctest::Approx(tail / 256.0));
  CHECK(r.max_cost == 0);
  const auto c = evaluate_error_exhaustive(protocols::constant<BitString>(0), n,
                                           Convention::sign_of_inner_product);
  CHECK(c.exact == r.exact);
}

TEST_CASE("constant-0 errs on a far pair") {
  const auto p = protocols::constant<BitString>(0);
  CHECK(p.output(BitString::from_string("0000"), BitString::from_string("1111")) == 0);
  CHECK(p.max_cost() == 0);
}

TEST_CASE("promise-only convention counts promise pairs only") {
  const std::size_t n = 6;
  const auto promise = CubePromise::make(n, 1);
  const auto r = evaluate_error_exhaustive(protocols::constant_table(1ULL << n, 0), n,
                                           Convention::promise_only, promise);
  // Promise pairs: Delta <= 2 or Delta >= 4; errors: Delta >= 4.
  double counted = 0;
  double errs = 0;
  for (unsigned d = 0; d <= 6; ++d) {
    if (d <= 2 || d >= 4) counted += choose(6, d);
    if (d >= 4) errs += choose(6, d);
  }
  CHECK(r.counted == static_cast<std::uint64_t>(counted * 64));
  CHECK(r.errors == static_cast<std::uint64_t>(errs * 64));
  CHECK_THROWS(evaluate_error_exhaustive(protocols::constant_table(64, 0), n, Convention::promise_only));
}

TEST_CASE("majority error") {
  CHECK(protocols::majority_error(1, 0.4) == doctest::Approx(0.4));
  CHECK(protocols::majority_error(3, 0.4) == doctest::Approx(0.352).epsilon(1e-12));
  for (unsigned m : {1u, 3u, 5u, 11u, 25u, 51u}) {
    for (double p : {0.05, 0.3, 0.45, 0.5, 0.7}) {
      CHECK(protocols::majority_error(m, p) == doctest::Approx(majority_oracle(m, p)).epsilon(1e-10));
    }
  }
  CHECK_THROWS(protocols::majority_error(4, 0.3));
}

TEST_CASE("sampling protocol cost and sphere error at gamma = 0.5") {
  const auto cube = protocols::sampling_cube(64, 0.1, 7);
  CHECK(cube.max_cost() == 7);
  CHECK_THROWS(protocols::sampling_cube(64, 0.1, 2));
  const std::size_t m = 3;
  const auto sphere = protocols::sampling_sphere(6, 0.5, m);
  const auto r = evaluate_error_monte_carlo(sphere, gap_boundary_sphere_pairs(6, 0.5),
                                            Convention::sign_of_inner_product, 40000, {2, 0});
  // Each hyperplane disagrees with probability acos(0.5)/pi = 1/3.
  const double expected = majority_oracle(3, 1.0 / 3.0);
  CHECK(std::abs(r.error_probability - expected) <= r.half_width);
}

TEST_CASE("cube sampling error matches the binomial tail at the gap boundary") {
  const std::size_t n = 1000;
  const double gamma = 0.1;
  for (std::size_t m : {1, 5, 25}) {
    const auto r = evaluate_error_monte_carlo(protocols::sampling_cube(n, gamma, m),
                                              gap_boundary_cube_pairs(n, gamma),
                                              Convention::sign_of_inner_product, 20000, {4, m});
    const double expected = majority_oracle(static_cast<unsigned>(m), 0.5 - gamma);
    const double sigma = std::sqrt(expected * (1 - expected) / 20000.0);
    CHECK(std::abs(r.error_probability - expected) <= 3.0 * sigma);
  }
}

TEST_CASE("monte carlo evaluation does not depend on the worker count") {
  const auto p = protocols::sampling_cube(100, 0.1, 5);
  const auto s = uniform_cube_pairs(100, Convention::sign_of_inner_product);
  const auto a = evaluate_error_monte_carlo(p, s, Convention::sign_of_inner_product, 3000, {8, 8}, Exec::serial);
  const auto b = evaluate_error_monte_carlo(p, s, Convention::sign_of_inner_product, 3000, {8, 8}, Exec::parallel);
  CHECK(a.errors == b.errors);
  CHECK(a.counted == b.counted);
}

TEST_CASE("over-budget messages are rejected") {
  Protocol<BitString> bad("chatty", {{{Party::alice, 1}, [](const BitString&, const Transcript&) {
                                        return Message(3, 2);
                                      }}},
                          [](const BitString&, const Transcript&) { return 0; });
  CHECK_THROWS_AS(bad.output(BitString(2), BitString(2)), MalformedProtocol);
}

TEST_CASE("output party defaults to the last receiver") {
  const std::vector<RoundSpec> ab{{Party::alice, 1}, {Party::bob, 1}};
  CHECK(default_output_party(ab) == Party::alice);
  CHECK(default_output_party(std::span<const RoundSpec>{}) == Party::bob);
}

TEST_CASE("property: table evaluation matches a hand replay of the tables") {
  Rng rng = gen::rng_for(30);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = gen::size_in(rng, 1, 6);
    const auto p = gen::table_protocol(rng, n, gen::size_in(rng, 0, 3), 3);
    const auto r = evaluate_error_exhaustive(p, n, Convention::sign_of_inner_product);
    CHECK(r.errors == brute_errors(p, n));
    CHECK(evaluate_error_exhaustive(p, n, Convention::sign_of_inner_product, std::nullopt, Exec::serial).errors ==
          r.errors);
  }
}

TEST_CASE("property: tabulating a callback protocol preserves every run") {
  Rng rng = gen::rng_for(31);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = gen::size_in(rng, 2, 6);
    const auto table = gen::table_protocol(rng, n, gen::size_in(rng, 1, 3), 2);
    const auto callback = table.as_cube_protocol(n);
    std::vector<BitString> domain;
    for (std::uint64_t x = 0; x < (1ULL << n); ++x) domain.push_back(BitString::from_word(x, n));
    const TableProtocol again = tabulate(callback, std::span<const BitString>(domain));
    for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
      for (std::uint64_t y = 0; y < (1ULL << n); ++y) {
        REQUIRE(again.run(x, y) == table.run(x, y));
        REQUIRE(callback.output(domain[x], domain[y]) == table.run(x, y));
      }
    }
  }
}

TEST_CASE("exhaustive evaluation refuses large n") {
  CHECK_THROWS_AS(evaluate_error_exhaustive(protocols::trivial_cube(13), 13, Convention::sign_of_inner_product),
                  EnumerationCapExceeded);
}

TEST_CASE("builtin exact table protocols") {
  for (std::size_t n : {3, 6}) {
    CHECK(evaluate_error_exhaustive(protocols::first_bit_then_trivial(n), n, Convention::sign_of_inner_product)
              .errors == 0);
    for (std::size_t k : {1, 2, 3}) {
      CHECK(evaluate_error_exhaustive(protocols::trivial_then_silent(n, k), n, Convention::sign_of_inner_product)
                .errors == 0);
    }
  }
  // Revealing everything is exact; revealing one bit is not.
  CHECK(evaluate_error_exhaustive(protocols::prefix_revealing(4, 1, 4), 4, Convention::sign_of_inner_product)
            .errors == 0);
  CHECK(evaluate_error_exhaustive(protocols::prefix_revealing(4, 1, 1), 4, Convention::sign_of_inner_product)
            .errors > 0);
}

}  // TEST_SUITE
