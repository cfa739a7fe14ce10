#include <doctest.h>

#include <set>
#include <sstream>

#include "generators.hpp"
#include "ghdlab/streaming.hpp"

using namespace ghdlab;

TEST_SUITE("streaming") {

TEST_CASE("stream construction") {
  const Stream s = build_stream(BitString::from_string("01"));
  REQUIRE(s.size() == 2);
  CHECK(s[0] == StreamToken{1, 0});
  CHECK(s[1] == StreamToken{2, 1});
}

TEST_CASE("exact F0 examples") {
  Rng rng = gen::rng_for(60);
  const BitString x = gen::bits(rng, 8);
  auto f0 = [](const BitString& a, const BitString& b) {
    const auto [s, t] = build_streams(a, b);
    return exact_f0(s, t);
  };
  CHECK(f0(x, x) == 8);
  CHECK(f0(x, ~x) == 16);
  CHECK(f0(BitString::from_string("0101"), BitString::from_string("0110")) == 6);
}

TEST_CASE("property: F0 of the concatenation is n + Delta") {
  Rng rng = gen::rng_for(61);
  for (int i = 0; i < gen::kCases; ++i) {
    const std::size_t n = gen::size_in(rng, 1, 2000);
    const BitString x = gen::bits(rng, n);
    const BitString y = gen::biased_bits(rng, n);
    const auto [s, t] = build_streams(x, y);
    std::set<std::pair<std::uint32_t, int>> oracle;
    for (const auto& tok : s) oracle.insert({tok.index, tok.bit});
    for (const auto& tok : t) oracle.insert({tok.index, tok.bit});
    CHECK(exact_f0(s, t) == oracle.size());
    CHECK(exact_f0(s, t) == n + hamming_distance(x, y));
  }
}

TEST_CASE("csv round trip and parse errors carry line numbers") {
  Rng rng = gen::rng_for(62);
  const Stream s = build_stream(gen::bits(rng, 50));
  std::stringstream io;
  write_stream_csv(io, s);
  CHECK(read_stream_csv(io) == s);

  std::istringstream skip("# header\n\n1,0\n2,1\n");
  CHECK(read_stream_csv(skip).size() == 2);

  for (const auto& [text, line] : std::vector<std::pair<std::string, std::size_t>>{
           {"1,0\n2,2\n", 2}, {"1,0\n\n#c\nx,1\n", 4}, {"0,1\n", 1}, {"1;0\n", 1}, {"1,0\n4294967296,1\n", 2}}) {
    std::istringstream in(text);
    try {
      read_stream_csv(in);
      FAIL("accepted malformed stream: " << text);
    } catch (const StreamParseError& e) {
      CHECK(e.line() == line);
      CHECK(std::string(e.what()).find("line " + std::to_string(line)) != std::string::npos);
    }
  }
}

TEST_CASE("state bits pack and read back") {
  Rng rng = gen::rng_for(63);
  for (int i = 0; i < gen::kCases; ++i) {
    StateBits b;
    std::vector<std::pair<std::uint64_t, std::size_t>> pushed;
    for (std::size_t j = gen::size_in(rng, 1, 20); j > 0; --j) {
      const std::size_t w = gen::size_in(rng, 1, 64);
      const std::uint64_t v = w == 64 ? rng() : rng() & ((1ULL << w) - 1);
      b.push(v, w);
      pushed.push_back({v, w});
    }
    std::size_t off = 0;
    for (const auto& [v, w] : pushed) {
      CHECK(b.read(off, w) == v);
      off += w;
    }
    CHECK(b.bits == off);
    CHECK_THROWS(b.read(off, 1));
  }
}

TEST_CASE("KMV is exact below k and close above") {
  Rng rng = gen::rng_for(64);
  const Stream small = build_stream(gen::bits(rng, 10));
  CHECK(kmv_estimate(small, 16, {1, 0}) == 10.0);
  const Stream big = build_stream(gen::bits(rng, 20000));
  const double est = kmv_estimate(big, 1024, {1, 1});
  // Relative standard error of bottom-k is about 1/sqrt(k - 2).
  CHECK(std::abs(est / 20000.0 - 1.0) <= 4.0 / std::sqrt(1022.0));
  CHECK_THROWS(KmvSketch(1, {}));
}

TEST_CASE("KMV state survives serialization") {
  Rng rng = gen::rng_for(65);
  const KmvSketch algo(32, {3, 0});
  const Stream s = build_stream(gen::bits(rng, 500));
  auto state = algo.initialize();
  for (const auto& t : s) state->process(t);
  const auto bits = state->serialize();
  CHECK(bits.bits <= *algo.memory_budget_bits());
  const auto back = algo.deserialize(bits);
  CHECK(back->serialize() == bits);
  CHECK(back->finalize() == state->finalize());
  CHECK(state->finalize() == kmv_estimate(s, 32, {3, 0}));
}

TEST_CASE("ghd from F0 thresholds") {
  CHECK(ghd_from_f0(100, 100) == 0);
  CHECK(ghd_from_f0(200, 100) == 1);
  CHECK(ghd_from_f0(150, 100) == 1);
  CHECK(ghd_from_f0(149.999, 100) == 0);
}

TEST_CASE("pass simulation message counts and alternation") {
  Rng rng = gen::rng_for(66);
  const std::size_t n = 256;
  const auto p = CubePromise::make(n, 16);
  const ExactF0Algorithm exact;
  for (std::size_t passes = 1; passes <= 5; ++passes) {
    for (int i = 0; i < 10; ++i) {
      const auto pair = sample_promise(p, rng);
      const auto run = simulate_passes(pair.x, pair.y, exact, passes);
      REQUIRE(run.messages.size() == 2 * passes - 1);
      for (std::size_t m = 0; m < run.messages.size(); ++m) {
        CHECK(run.messages[m].from == (m % 2 == 0 ? Party::alice : Party::bob));
      }
      CHECK(run.estimate == static_cast<double>(n + hamming_distance(pair.x, pair.y)));
      CHECK(run.answer == static_cast<int>(ghd_label(pair.x, pair.y, p)));
    }
  }
  CHECK_THROWS(simulate_passes(BitString(4), BitString(4), exact, 0));
}

TEST_CASE("KMV passes respect the memory budget") {
  Rng rng = gen::rng_for(67);
  const KmvSketch algo(8, {4, 0});
  for (std::size_t passes = 1; passes <= 4; ++passes) {
    const auto run = simulate_passes(gen::bits(rng, 300), gen::bits(rng, 300), algo, passes);
    CHECK(run.max_message_bits <= *algo.memory_budget_bits());
  }
}

// A state that ignores its budget, to exercise the guard.
class Bloated final : public StreamingAlgorithm {
 public:
  std::string name() const override { return "bloated"; }
  std::optional<std::size_t> memory_budget_bits() const override { return 8; }
  std::unique_ptr<StreamState> initialize() const override { return ExactF0Algorithm().initialize(); }
  std::unique_ptr<StreamState> deserialize(const StateBits& b) const override {
    return ExactF0Algorithm().deserialize(b);
  }
};

TEST_CASE("over-budget states are rejected") {
  CHECK_THROWS_AS(simulate_passes(BitString(4), BitString(4), Bloated(), 2), MalformedProtocol);
}

TEST_CASE("accuracy check") {
  const auto r = accuracy_requirement_check(1024, 64, {2, 64, 4096}, 200, {5, 0});
  REQUIRE(r.rows.size() == 3);
  CHECK(r.predicted_scale == doctest::Approx(256.0));
  CHECK(r.rows[0].error >= 0.3);
  // k_min above the token count is exact.
  CHECK(r.rows[2].error == 0.0);
  CHECK(r.rows[2].budget_bits == 32 + 64 * 4096);
  const auto s = accuracy_requirement_check(1024, 64, {2, 64, 4096}, 200, {5, 0}, Exec::serial);
  for (std::size_t i = 0; i < 3; ++i) CHECK(s.rows[i].error == r.rows[i].error);
  CHECK_THROWS(accuracy_requirement_check(1024, 10, {2}, 10, {}));
}

}  // TEST_SUITE
