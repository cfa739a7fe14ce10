#include "ghdlab/protocol.hpp"

#include <bit>
#include <memory>
#include <string>

namespace ghdlab {

const char* to_string(Party p) { return p == Party::alice ? "alice" : "bob"; }

Party party_from_string(std::string_view s) {
  if (s == "alice" || s == "Alice") return Party::alice;
  if (s == "bob" || s == "Bob") return Party::bob;
  throw std::invalid_argument("unknown party '" + std::string(s) + "'");
}

Message::Message(std::uint64_t value, std::size_t bits) : bits_(bits), words_(bits == 0 ? 0 : 1, 0) {
  if (bits > 64) throw std::invalid_argument("packed message holds at most 64 bits");
  if (bits > 0) words_[0] = bits == 64 ? value : (value & ((1ULL << bits) - 1));
}

Message::Message(const BitString& bits) : bits_(bits.size()), words_(bits.words().begin(), bits.words().end()) {}

std::uint64_t Message::to_word() const {
  if (bits_ > 64) throw std::invalid_argument("message longer than 64 bits");
  return bits_ == 0 ? 0 : words_[0];
}

BitString Message::to_bitstring() const {
  BitString out(bits_);
  for (std::size_t i = 0; i < bits_; ++i) out.set(i, (*this)[i]);
  return out;
}

Party default_output_party(std::span<const RoundSpec> rounds) {
  return rounds.empty() ? kZeroRoundOutputParty : other(rounds.back().speaker);
}

Transcript unpack_transcript(std::uint64_t packed, std::span<const RoundSpec> rounds,
                             std::size_t count) {
  Transcript t;
  t.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t b = rounds[r].bits;
    t.emplace_back(packed & (b == 64 ? ~0ULL : ((1ULL << b) - 1)), b);
    packed = b == 64 ? 0 : packed >> b;
  }
  return t;
}

TableProtocol::TableProtocol(std::string name, std::uint64_t domain_size,
                             std::vector<RoundSpec> rounds,
                             std::vector<std::vector<std::uint32_t>> message_tables,
                             std::vector<std::uint8_t> output_table)
    : TableProtocol(std::move(name), domain_size, rounds, std::move(message_tables),
                    std::move(output_table), default_output_party(rounds)) {}

TableProtocol::TableProtocol(std::string name, std::uint64_t domain_size,
                             std::vector<RoundSpec> rounds,
                             std::vector<std::vector<std::uint32_t>> message_tables,
                             std::vector<std::uint8_t> output_table, Party output_party)
    : name_(std::move(name)),
      domain_size_(domain_size),
      rounds_(std::move(rounds)),
      message_tables_(std::move(message_tables)),
      output_table_(std::move(output_table)),
      output_party_(output_party) {
  auto fail = [this](const std::string& what) {
    throw MalformedProtocol("table protocol '" + name_ + "': " + what);
  };
  if (domain_size_ == 0) fail("empty input domain");
  if (message_tables_.size() != rounds_.size()) fail("one message table per round required");
  offsets_.push_back(0);
  for (const auto& r : rounds_) {
    if (r.bits > kMaxMessageBits) fail("message budget exceeds 32 bits");
    offsets_.push_back(offsets_.back() + r.bits);
  }
  if (offsets_.back() > kMaxTranscriptBits) fail("transcript longer than 30 bits");
  const unsigned domain_bits = std::bit_width(domain_size_ - 1);
  if (domain_bits + offsets_.back() > 40) fail("tables too large");
  for (std::size_t r = 0; r < rounds_.size(); ++r) {
    const std::uint64_t expected = domain_size_ << offsets_[r];
    if (expected > kMaxTableEntries) fail("tables too large");
    if (message_tables_[r].size() != expected) {
      fail("round " + std::to_string(r + 1) + " table has " +
           std::to_string(message_tables_[r].size()) + " entries, expected " +
           std::to_string(expected));
    }
    const std::size_t b = rounds_[r].bits;
    for (std::uint32_t m : message_tables_[r]) {
      if (b < 32 && (static_cast<std::uint64_t>(m) >> b) != 0) {
        fail("round " + std::to_string(r + 1) + " message exceeds its " + std::to_string(b) +
             "-bit budget");
      }
    }
  }
  const std::uint64_t expected_out = domain_size_ << offsets_.back();
  if (expected_out > kMaxTableEntries) fail("tables too large");
  if (output_table_.size() != expected_out) fail("output table has wrong size");
  for (std::uint8_t v : output_table_) {
    if (v > 1) fail("output table entries must be 0 or 1");
  }
}

std::size_t TableProtocol::max_cost() const noexcept {
  std::size_t m = 0;
  for (const auto& r : rounds_) m = std::max(m, r.bits);
  return m;
}

Protocol<BitString> TableProtocol::as_cube_protocol(std::size_t n) const {
  if (n > 40 || (1ULL << n) != domain_size_) {
    throw std::invalid_argument("table protocol domain is not {0,1}^" + std::to_string(n));
  }
  auto pack = [](const Transcript& t) {
    std::uint64_t packed = 0;
    std::size_t off = 0;
    for (const auto& m : t) {
      packed |= m.to_word() << off;
      off += m.size();
    }
    return packed;
  };
  // Callbacks share one immutable copy of the tables.
  auto self = std::make_shared<const TableProtocol>(*this);
  std::vector<Protocol<BitString>::Round> rounds;
  for (std::size_t r = 0; r < rounds_.size(); ++r) {
    rounds.push_back({rounds_[r], [self, r, pack](const BitString& own, const Transcript& so_far) {
                        return Message(self->message(r, own.to_word(), pack(so_far)),
                                       self->schedule()[r].bits);
                      }});
  }
  return Protocol<BitString>(
      name_, std::move(rounds),
      [self, pack](const BitString& own, const Transcript& t) {
        return self->output_for(own.to_word(), pack(t));
      },
      output_party_);
}

}  // namespace ghdlab
