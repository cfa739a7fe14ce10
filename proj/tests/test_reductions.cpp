#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "ghdlab/evaluation.hpp"
#include "ghdlab/protocols.hpp"
#include "ghdlab/reductions.hpp"

using namespace ghdlab;

TEST_SUITE("reductions") {

TEST_CASE("embedding examples") {
  const auto v = embed_cube_to_sphere(BitString::from_string("0000"));
  for (std::size_t i = 0; i < 4; ++i) CHECK(v[i] == doctest::Approx(0.5));
  const auto a = embed_cube_to_sphere(BitString::from_string("0011"));
  const auto b = embed_cube_to_sphere(BitString::from_string("0101"));
  CHECK(std::abs(dot(a, b)) <= 1e-15);
}

TEST_CASE("property: embedded inner product is 1 - 2 Delta / n") {
  Rng rng = gen::rng_for(20);
  for (int i = 0; i < gen::kCases; ++i) {
    const std::size_t n = gen::size_in(rng, 1, 500);
    const BitString x = gen::bits(rng, n);
    const BitString y = gen::biased_bits(rng, n);
    const double expected = 1.0 - 2.0 * static_cast<double>(hamming_distance(x, y)) / static_cast<double>(n);
    CHECK(std::abs(dot(embed_cube_to_sphere(x), embed_cube_to_sphere(y)) - expected) <= 1e-12);
  }
}

TEST_CASE("collision probability") {
  CHECK(collision_probability(1.0) == 0.0);
  CHECK(collision_probability(-1.0) == 1.0);
  CHECK(collision_probability(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(collision_probability(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(collision_probability(1.0 + 1e-12) == 0.0);
  CHECK_THROWS_AS(collision_probability(1.1), std::invalid_argument);
}

TEST_CASE("sketch determinism, antisymmetry and materialized agreement") {
  Rng rng = gen::rng_for(21);
  for (int i = 0; i < 30; ++i) {
    const std::size_t d = gen::size_in(rng, 2, 20);
    const auto x = gen::unit(rng, d);
    const HyperplaneSketchSeed seed{rng(), rng(), gen::size_in(rng, 1, 300)};
    const BitString a = sketch_sphere_to_cube(x, seed);
    CHECK(a == sketch_sphere_to_cube(x, seed, Exec::serial));
    CHECK(a == HyperplaneSketch(seed, d).apply(x));
    CHECK(sketch_sphere_to_cube(-x, seed) == ~a);
  }
}

TEST_CASE("hyperplane difference rate matches acos / pi") {
  Rng rng = gen::rng_for(22);
  const std::size_t d = 5;
  const auto x = gen::unit(rng, d);
  for (double ip : {-0.9, 0.0, 0.6}) {
    const auto y = sample_at_inner_product(x, ip, rng);
    const HyperplaneSketchSeed seed{17, static_cast<std::uint64_t>(ip * 100 + 100), 40000};
    const double rate =
        static_cast<double>(hamming_distance(sketch_sphere_to_cube(x, seed), sketch_sphere_to_cube(y, seed))) /
        40000.0;
    const double p = std::acos(ip) / std::numbers::pi;
    CHECK(std::abs(rate - p) <= 3.0 * std::sqrt(p * (1 - p) / 40000.0));
  }
}

TEST_CASE("gap transfer at gamma = 0 is a fair coin") {
  const auto r = gap_transfer_check(0.0, 2000, 200, {5, 0});
  CHECK(std::abs(r.positive.empirical_rate - 0.5) <= 3.0 * r.positive.sigma);
  CHECK(std::abs(r.negative.empirical_rate - 0.5) <= 3.0 * r.negative.sigma);
}

TEST_CASE("gap transfer offsets follow the closed form") {
  const double gamma = 0.2;
  const std::size_t n_out = 10000;
  const auto r = gap_transfer_check(gamma, n_out, 300, {6, 0});
  const double shift = n_out * (0.5 - std::acos(gamma) / std::numbers::pi);
  CHECK(std::abs(r.positive.mean_offset + shift) <= 3.0 * r.positive.sd_offset / std::sqrt(300.0));
  CHECK(std::abs(r.negative.mean_offset - shift) <= 3.0 * r.negative.sd_offset / std::sqrt(300.0));
  CHECK(r.taylor_residual <= std::pow(gamma, 5));
  CHECK(r.linearized_bias == doctest::Approx(r.linearized_bias_taylor).epsilon(1e-3));
}

TEST_CASE("gap transfer is independent of the worker count") {
  const auto a = gap_transfer_check(0.1, 512, 64, {9, 1}, 8.0, 3, Exec::serial);
  const auto b = gap_transfer_check(0.1, 512, 64, {9, 1}, 8.0, 3, Exec::parallel);
  CHECK(a.positive.empirical_rate == b.positive.empirical_rate);
  CHECK(a.negative.empirical_rate == b.negative.empirical_rate);
  CHECK(a.failure_rate == b.failure_rate);
}

TEST_CASE("cube-to-sphere lift preserves answers, rounds and cost") {
  Rng rng = gen::rng_for(23);
  const std::size_t n = 12;
  const auto sphere = protocols::sign_pattern_sphere(n);
  const auto lifted = lift_cube_to_sphere(sphere, n);
  CHECK(lifted.rounds() == sphere.rounds());
  CHECK(lifted.max_cost() == sphere.max_cost());
  for (int i = 0; i < gen::kCases; ++i) {
    const BitString x = gen::bits(rng, n);
    const BitString y = gen::biased_bits(rng, n);
    CHECK(lifted.output(x, y) == cube_sign_label(hamming_distance(x, y), n));
  }
  CHECK_THROWS(lifted.output(BitString(5), BitString(5)));
}

TEST_CASE("sphere-to-cube lift is correct with probability acos-close to the sketch side") {
  const std::size_t n = 256;
  const std::size_t d = 4;
  const auto lifted = lift_sphere_to_cube(protocols::trivial_cube(n), n, d);
  CHECK(lifted.max_cost() == n);
  const auto report = evaluate_error_monte_carlo(lifted, gap_boundary_sphere_pairs(d, 0.5),
                                                 Convention::sign_of_inner_product, 2000, {3, 3});
  // At gamma = 0.5 the sketch distance sits near n/3 or 2n/3, far from n/2.
  CHECK(report.error_probability <= 0.01);
}

TEST_CASE("C0 calibration is deterministic and reports a curve") {
  const auto a = calibrate_c0(1024, 16, {2, 4, 8}, 200, {11, 0});
  const auto b = calibrate_c0(1024, 16, {2, 4, 8}, 200, {11, 0}, 0.05, 3, Exec::serial);
  REQUIRE(a.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.rows[i].failure_rate == b.rows[i].failure_rate);
    CHECK(a.rows[i].lifted_error == b.rows[i].lifted_error);
    CHECK(a.rows[i].gamma == doctest::Approx(a.rows[i].c0 * 16 / 1024.0));
  }
  CHECK_THROWS(calibrate_c0(64, 16, {8}, 10, {}));  // gamma = 2
}

}  // TEST_SUITE
