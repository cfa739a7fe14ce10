#include <doctest.h>

#include "generators.hpp"
#include "ghdlab/protocols.hpp"
#include "ghdlab/serialize.hpp"

using namespace ghdlab;

TEST_SUITE("serialize") {

TEST_CASE("base64 round trip") {
  CHECK(base64_encode({'f', 'o', 'o', 'b', 'a'}) == "Zm9vYmE=");
  Rng rng = gen::rng_for(80);
  for (int i = 0; i < gen::kCases; ++i) {
    std::vector<std::uint8_t> bytes(gen::size_in(rng, 0, 50));
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
    CHECK(base64_decode(base64_encode(bytes)) == bytes);
  }
}

TEST_CASE("bit strings and seeds round trip through json") {
  Rng rng = gen::rng_for(81);
  for (int i = 0; i < 50; ++i) {
    const BitString x = gen::bits(rng, gen::size_in(rng, 1, 200));
    BitString back(1);
    from_json(json(x), back);
    CHECK(back == x);
  }
  const HyperplaneSketchSeed s{1, 2, 3};
  CHECK(json(s).get<HyperplaneSketchSeed>() == s);
  const auto v = gen::unit(rng, 5);
  CHECK(sphere_from_json(sphere_to_json(v)) == v);
}

TEST_CASE("property: table protocols round trip through json") {
  Rng rng = gen::rng_for(82);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = gen::size_in(rng, 1, 6);
    const auto p = gen::table_protocol(rng, n, gen::size_in(rng, 0, 3), 3);
    const auto back = table_protocol_from_json(json::parse(table_protocol_to_json(p).dump()));
    CHECK(back.schedule() == p.schedule());
    CHECK(back.output_party() == p.output_party());
    for (std::size_t r = 0; r < p.rounds(); ++r) CHECK(back.message_table(r) == p.message_table(r));
    CHECK(back.output_table() == p.output_table());
  }
}

TEST_CASE("malformed protocol files are rejected") {
  CHECK_THROWS_AS(table_protocol_from_json(json{{"name", "x"}}), ProtocolFormatError);
  auto j = table_protocol_to_json(protocols::constant_table(4, 0));
  j["output"] = base64_encode({0});
  CHECK_THROWS_AS(table_protocol_from_json(j), ProtocolFormatError);
  CHECK_THROWS_AS(protocol_from_json(json{{"builtin", "nope"}, {"n", 4}}), ProtocolFormatError);
  CHECK(protocol_from_json(json{{"builtin", "trivial"}, {"n", 4}}).coin->max_cost() == 4);
}

TEST_CASE("result records are self-describing") {
  const json r = result_record("k", json{{"seed", 3}}, json{{"v", 1}});
  CHECK(r["schema"] == kResultSchema);
  CHECK(r["config"]["seed"] == 3);
  CHECK(r["payload"]["v"] == 1);
  CHECK(r.contains("version"));
  CHECK(r.contains("timestamp"));
}

}  // TEST_SUITE
