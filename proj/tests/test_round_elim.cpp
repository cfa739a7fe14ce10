#include <doctest.h>

#include <bit>
#include <cmath>
#include <string>

#include "generators.hpp"
#include "ghdlab/delta_net.hpp"
#include "ghdlab/evaluation.hpp"
#include "ghdlab/kernels.hpp"
#include "ghdlab/protocols.hpp"
#include "ghdlab/round_elim.hpp"

using namespace ghdlab;

namespace {

std::string bits_of(std::uint64_t v, std::size_t n) { return BitString::from_word(v, n).to_string(); }

// Naive snap: minimum distance, then smallest coordinate string.
std::uint64_t naive_snap(std::uint64_t x, const std::vector<std::uint64_t>& A, std::size_t n) {
  std::uint64_t best = A[0];
  for (std::uint64_t a : A) {
    const int da = std::popcount(x ^ a);
    const int db = std::popcount(x ^ best);
    if (da < db || (da == db && bits_of(a, n) < bits_of(best, n))) best = a;
  }
  return best;
}

struct Oracle {
  std::uint64_t good_count = 0;
  std::uint64_t class_size = 0;
  std::uint32_t message = 0;
  std::uint64_t q_errors = 0;
};

// Recomputes one elimination step from the definitions, with the snapped
// party as the first speaker.
Oracle oracle_step(const TableProtocol& p, std::size_t n, double delta) {
  const std::uint64_t size = 1ULL << n;
  const bool alice_first = p.schedule()[0].speaker == Party::alice;
  auto run = [&](std::uint64_t s, std::uint64_t z) { return alice_first ? p.run(s, z) : p.run(z, s); };
  auto truth = [&](std::uint64_t s, std::uint64_t z) { return 2 * std::popcount(s ^ z) > static_cast<int>(n) ? 1 : 0; };
  std::vector<double> cond(size);
  double eps = 0.0;
  for (std::uint64_t s = 0; s < size; ++s) {
    std::uint64_t e = 0;
    for (std::uint64_t z = 0; z < size; ++z) e += run(s, z) != truth(s, z);
    cond[s] = static_cast<double>(e) / size;
    eps += cond[s] / size;
  }
  Oracle o;
  std::vector<std::uint64_t> per_message(1ULL << p.schedule()[0].bits, 0);
  for (std::uint64_t s = 0; s < size; ++s) {
    if (cond[s] <= delta * eps * (1 + 1e-9)) {
      ++o.good_count;
      ++per_message[p.message(0, s, 0)];
    }
  }
  for (std::uint32_t m = 0; m < per_message.size(); ++m) {
    if (per_message[m] > per_message[o.message]) o.message = m;
  }
  std::vector<std::uint64_t> A;
  for (std::uint64_t s = 0; s < size; ++s) {
    if (cond[s] <= delta * eps * (1 + 1e-9) && p.message(0, s, 0) == o.message) A.push_back(s);
  }
  o.class_size = A.size();
  for (std::uint64_t s = 0; s < size; ++s) {
    const std::uint64_t a = naive_snap(s, A, n);
    for (std::uint64_t z = 0; z < size; ++z) o.q_errors += run(a, z) != truth(s, z);
  }
  return o;
}

}  // namespace

TEST_SUITE("round_elim") {

TEST_CASE("snap examples") {
  const std::size_t n = 4;
  auto w = [](const char* s) { return BitString::from_string(s).to_word(); };
  const std::vector<std::uint64_t> a{w("0000"), w("1111")};
  CHECK(snap(w("0001"), a) == w("0000"));
  const std::vector<std::uint64_t> b{w("0101"), w("0011")};
  CHECK(snap(w("0001"), b) == w("0011"));
  CHECK(snap(w("0101"), b) == w("0101"));
  CHECK_THROWS(snap(w("0101"), std::span<const std::uint64_t>{}));
  (void)n;
}

TEST_CASE("property: snap matches the naive oracle") {
  Rng rng = gen::rng_for(40);
  for (int i = 0; i < gen::kCases; ++i) {
    const std::size_t n = gen::size_in(rng, 1, 12);
    std::vector<std::uint64_t> A(gen::size_in(rng, 1, 20));
    for (auto& a : A) a = rng.below(1ULL << n);
    const std::uint64_t x = rng.below(1ULL << n);
    CHECK(snap(x, A) == naive_snap(x, A, n));
  }
}

TEST_CASE("d1 formulas") {
  CHECK(std::isinf(cube_d1(100, 1)));
  CHECK(cube_d1(100, 2) == doctest::Approx(9.0 * 10.0 / (2048.0 * 2048.0)));
  CHECK(sphere_d1(100, 2, 3) == doctest::Approx(2.0 * std::sqrt((3 + 6 * std::log(4.0) + 2) / 100.0)));
  const auto p = RoundElimParams::for_cube(64, 4, 2, 1);
  CHECK(p.delta == doctest::Approx(1.25));
  CHECK(p.snap_radius() == doctest::Approx(p.d1 * 8.0));
  CHECK_FALSE(p.hypothesis_holds(0.0));  // vacuous at this size
}

TEST_CASE("error recurrence") {
  CHECK(error_recurrence(0.1, 2, 0) == doctest::Approx(0.1));
  CHECK(error_recurrence_iterated(0.1, 2, 1) == doctest::Approx(0.18125).epsilon(1e-15));
  CHECK(error_recurrence(0.1, 2, 2) == doctest::Approx(0.303125).epsilon(1e-14));
  CHECK(error_recurrence_iterated(0.1, 2, 2) == doctest::Approx(0.303125).epsilon(1e-14));
  for (std::size_t k = 1; k <= 1000; k += 37) {
    CHECK(error_recurrence(2.0 / 50.0, k, k) <= std::exp(1.0) * (2.0 / 50.0 + 1.0 / 16.0) - 1.0 / 16.0 + 1e-12);
    CHECK(error_recurrence(2.0 / 50.0, k, k) <= 0.25);
  }
}

TEST_CASE("exact protocol: every input is good") {
  const std::size_t n = 6;
  const auto g = find_good_inputs(protocols::first_bit_then_trivial(n), n, 2.0);
  CHECK(g.total_errors == 0);
  CHECK(g.good_count == 1ULL << n);
}

TEST_CASE("constant-0 protocol: conditional error 22/64 for every input") {
  const std::size_t n = 6;
  // A 1-round constant protocol so a round exists to classify on.
  Rng rng(1);
  const auto p = protocols::random_table(n, {{Party::alice, 0}}, rng);
  std::vector<std::uint8_t> zeros(p.output_table().size(), 0);
  const TableProtocol c0("constant0", 1ULL << n, p.schedule(), {p.message_table(0)}, zeros);
  const auto g = find_good_inputs(c0, n, 2.0);
  CHECK(g.good_count == 64);
  for (auto e : g.errors) CHECK(e == 22);
  CHECK(g.total_errors == 22 * 64);
}

TEST_CASE("property: good mass respects Markov on random protocols") {
  Rng rng = gen::rng_for(41);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 8;
    const auto p = gen::table_protocol(rng, n, gen::size_in(rng, 1, 3), 3);
    const double delta = gen::real_in(rng, 1.05, 4.0);
    const auto g = find_good_inputs(p, n, delta);
    CHECK(static_cast<double>(g.good_count) / 256.0 >= 1.0 - 1.0 / delta);
    const auto mc = largest_message_class(p, g);
    CHECK((mc.members.size() << p.schedule()[0].bits) >= g.good_count);
  }
}

TEST_CASE("constant first message: Q is exact") {
  const std::size_t n = 6;
  // Round 1: Alice sends nothing; round 2: Bob sends y; Alice outputs the label.
  Protocol<BitString> p("silent-then-y",
                        {{{Party::alice, 0}, [](const BitString&, const Transcript&) { return Message(); }},
                         {{Party::bob, n}, [](const BitString& y, const Transcript&) { return Message(y); }}},
                        [n](const BitString& x, const Transcript& t) {
                          return cube_sign_label(hamming_distance(x, t[1].to_bitstring()), n);
                        });
  std::vector<BitString> domain;
  for (std::uint64_t x = 0; x < 64; ++x) domain.push_back(BitString::from_word(x, n));
  const auto table = tabulate(p, std::span<const BitString>(domain));
  const auto e = eliminate_round(table, n, RoundElimParams::for_cube(n, 2, 2, 0));
  CHECK(e.report.eps_out == 0.0);
  CHECK(e.report.class_size == 64);
  for (std::uint64_t x = 0; x < 64; ++x) CHECK(e.snap_table[x] == x);
}

TEST_CASE("first bit then trivial at n = 12 matches an independent evaluation") {
  const std::size_t n = 12;
  const auto p = protocols::first_bit_then_trivial(n);
  const auto params = RoundElimParams::for_cube(n, 2, 2, 1);
  const auto e = eliminate_round(p, n, params);
  const auto standalone = evaluate_error_exhaustive(e.q, n, Convention::sign_of_inner_product);
  REQUIRE(e.report.eps_out_exact);
  CHECK(*standalone.exact == *e.report.eps_out_exact);
  CHECK(e.report.union_violations == 0);
  CHECK(e.q.rounds() == 1);
  // Exact P: the error is exactly the pairs whose label flips under snapping.
  std::uint64_t flips = 0;
  for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
    for (std::uint64_t y = 0; y < (1ULL << n); ++y) {
      flips += cube_sign_label(std::popcount(x ^ y), n) != cube_sign_label(std::popcount(e.snap_table[x] ^ y), n);
    }
  }
  CHECK(standalone.errors == flips);
}

TEST_CASE("property: elimination agrees with the definitional oracle") {
  Rng rng = gen::rng_for(42);
  for (int i = 0; i < 15; ++i) {
    const std::size_t n = gen::size_in(rng, 2, 6);
    const std::size_t rounds = gen::size_in(rng, 1, 3);
    auto sched = gen::schedule(rng, rounds, 3);
    if (rng.coin()) {
      for (auto& s : sched) s.speaker = other(s.speaker);  // Bob speaks first
    }
    const auto p = protocols::random_table(n, sched, rng);
    const auto params = RoundElimParams::for_cube(n, rounds, rounds, sched[0].bits);
    const auto e = eliminate_round(p, n, params);
    const auto o = oracle_step(p, n, params.delta);
    CHECK(e.report.good_count == o.good_count);
    CHECK(e.report.class_size == o.class_size);
    CHECK(e.report.chosen_message == o.message);
    CHECK(e.report.eps_out_exact->value() == doctest::Approx(static_cast<double>(o.q_errors) / (1ULL << (2 * n))));
    CHECK(e.report.eps_out <= e.report.bad1 + e.report.bad2 + e.report.bad3 + 1e-15);
    CHECK(e.report.union_violations == 0);
    CHECK(e.report.snapped_party == sched[0].speaker);
    CHECK(e.q.output_party() == p.output_party());
    CHECK(e.q.rounds() == p.rounds() - 1);
  }
}

TEST_CASE("full elimination of an exact protocol grows error only through snapping") {
  const std::size_t n = 10;
  const auto run = full_elimination(protocols::trivial_then_silent(n, 2), n, 2);
  REQUIRE(run.reports.size() == 2);
  CHECK(run.protocols.back().rounds() == 0);
  CHECK(run.eps0 == 0.0);
  // Step 1 starts from an exact protocol, so BAD2 is empty there.
  CHECK(run.reports[0].bad2 == 0.0);
  for (const auto& r : run.reports) {
    CHECK(r.eps_out <= r.eps_in + r.bad1 + r.bad3 + 1e-15);
    CHECK(r.union_violations == 0);
  }
}

TEST_CASE("full elimination is deterministic and serial/parallel agree") {
  Rng rng = gen::rng_for(43);
  const auto p = gen::table_protocol(rng, 7, 3, 2);
  const auto a = full_elimination(p, 7, 3, Exec::serial);
  const auto b = full_elimination(p, 7, 3, Exec::parallel);
  CHECK(trajectory_csv(a) == trajectory_csv(b));
  CHECK(trajectory_csv(a).rfind("kappa,eps,bad1,bad2,bad3,bound_rhs,recurrence\n", 0) == 0);
}

TEST_CASE("size cap and argument checks") {
  CHECK_THROWS_AS(find_good_inputs(protocols::trivial_cube_table(13), 13, 2.0), EnumerationCapExceeded);
  CHECK_THROWS(find_good_inputs(protocols::first_bit_then_trivial(4), 4, 1.0));
  CHECK_THROWS(eliminate_round(protocols::constant_table(16, 0), 4, RoundElimParams::for_cube(4, 1, 1, 0)));
}

TEST_CASE("sphere elimination over a net") {
  const std::size_t n = 3;
  const auto net = DeltaNet::build(n, 0.3, {12, 0});
  const auto p = tabulate_on_net(protocols::sign_pattern_sphere(n), net);
  auto params = RoundElimParams::for_sphere(n, 2, 1, n);
  const auto e = eliminate_round_sphere(p, net, params, {50000, {13, 0}, Exec::parallel});
  CHECK(e.report.union_violations == 0);
  CHECK(e.report.markov_ok);
  CHECK(e.report.pigeonhole_ok);
  CHECK(e.q.rounds() == 0);
  CHECK_THROWS_AS(eliminate_round_sphere(p, net, params, {50, {13, 0}, Exec::parallel}), InsufficientTrials);
  const auto again = eliminate_round_sphere(p, net, params, {50000, {13, 0}, Exec::serial});
  CHECK(again.report.eps_out == e.report.eps_out);
  CHECK(again.report.bad1 == e.report.bad1);
}

TEST_CASE("delta nets cover the sphere empirically") {
  const auto net = DeltaNet::build(3, 0.3, {14, 0});
  CHECK(net.certified());
  CHECK(net.max_rounding_distance(20000, {15, 0}) <= 0.3 + 0.1);
  // Net points are pairwise farther than delta apart.
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (std::size_t j = i + 1; j < net.size(); ++j) CHECK(distance(net.point(i), net.point(j)) > 0.3);
  }
  CHECK_THROWS(discretize(protocols::sign_pattern_sphere(3), net, 0.5));
}

}  // TEST_SUITE
