#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ghdlab/bitstring.hpp"
#include "ghdlab/random.hpp"

namespace ghdlab {

enum class Party { alice, bob };

constexpr Party other(Party p) noexcept { return p == Party::alice ? Party::bob : Party::alice; }
const char* to_string(Party p);
Party party_from_string(std::string_view s);

class MalformedProtocol : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single message: a bit string whose length may be zero.
class Message {
 public:
  Message() = default;
  /// Low `bits` bits of value (bits <= 64).
  Message(std::uint64_t value, std::size_t bits);
  explicit Message(const BitString& bits);

  std::size_t size() const noexcept { return bits_; }
  bool operator[](std::size_t i) const noexcept {
    return ((words_[i >> 6] >> (i & 63)) & 1ULL) != 0;
  }
  /// Packed value, requires size() <= 64.
  std::uint64_t to_word() const;
  BitString to_bitstring() const;

  friend bool operator==(const Message&, const Message&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

using Transcript = std::vector<Message>;

struct RoundSpec {
  Party speaker = Party::alice;
  std::size_t bits = 0;  // message budget

  friend bool operator==(const RoundSpec&, const RoundSpec&) = default;
};

/// Who outputs when nobody speaks: Bob, by convention.
inline constexpr Party kZeroRoundOutputParty = Party::bob;

/// Receiver of the last message, or Bob for a 0-round protocol.
Party default_output_party(std::span<const RoundSpec> rounds);

template <class Input>
struct RunResult {
  int output = 0;
  Transcript transcript;
  std::vector<std::size_t> message_sizes;
};

/// Deterministic k-round two-party protocol given by callbacks. A message
/// depends only on the speaker's own input and the transcript so far; the
/// output depends only on the output party's input and the full transcript.
template <class Input>
class Protocol {
 public:
  using MessageFn = std::function<Message(const Input& own, const Transcript& so_far)>;
  using OutputFn = std::function<int(const Input& own, const Transcript& transcript)>;

  struct Round {
    RoundSpec spec;
    MessageFn message;
  };

  /// Output party defaults to the receiver of the last message.
  Protocol(std::string name, std::vector<Round> rounds, OutputFn output,
           std::optional<Party> output_party = std::nullopt)
      : name_(std::move(name)), rounds_(std::move(rounds)), output_(std::move(output)) {
    const auto s = schedule();
    output_party_ = output_party.value_or(default_output_party(s));
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t rounds() const noexcept { return rounds_.size(); }
  const std::vector<Round>& round_list() const noexcept { return rounds_; }
  Party output_party() const noexcept { return output_party_; }

  std::vector<RoundSpec> schedule() const {
    std::vector<RoundSpec> s;
    for (const auto& r : rounds_) s.push_back(r.spec);
    return s;
  }

  /// Longest single message budget (0 for a 0-round protocol).
  std::size_t max_cost() const noexcept {
    std::size_t m = 0;
    for (const auto& r : rounds_) m = std::max(m, r.spec.bits);
    return m;
  }

  RunResult<Input> run(const Input& x, const Input& y) const {
    RunResult<Input> result;
    result.transcript.reserve(rounds_.size());
    for (std::size_t r = 0; r < rounds_.size(); ++r) {
      const auto& round = rounds_[r];
      const Input& own = round.spec.speaker == Party::alice ? x : y;
      Message m = round.message(own, result.transcript);
      if (m.size() > round.spec.bits) {
        throw MalformedProtocol("protocol '" + name_ + "' round " + std::to_string(r + 1) +
                                " sent " + std::to_string(m.size()) + " bits, budget " +
                                std::to_string(round.spec.bits));
      }
      result.message_sizes.push_back(m.size());
      result.transcript.push_back(std::move(m));
    }
    const Input& out_input = output_party_ == Party::alice ? x : y;
    result.output = output_(out_input, result.transcript);
    if (result.output != 0 && result.output != 1) {
      throw MalformedProtocol("protocol '" + name_ + "' produced a non-binary output");
    }
    return result;
  }

  int output(const Input& x, const Input& y) const { return run(x, y).output; }

  const OutputFn& output_fn() const noexcept { return output_; }

 private:
  std::string name_;
  std::vector<Round> rounds_;
  OutputFn output_;
  Party output_party_ = kZeroRoundOutputParty;
};

/// Public-coin protocol: a deterministic protocol for every coin outcome.
template <class Input>
struct PublicCoinProtocol {
  std::string name;
  std::vector<RoundSpec> schedule;
  std::function<Protocol<Input>(const RandomSource& coin)> instantiate;

  std::size_t rounds() const noexcept { return schedule.size(); }
  std::size_t max_cost() const noexcept {
    std::size_t m = 0;
    for (const auto& r : schedule) m = std::max(m, r.bits);
    return m;
  }

  /// A deterministic protocol viewed as public-coin (ignores the coin).
  static PublicCoinProtocol deterministic(Protocol<Input> p) {
    auto schedule = p.schedule();
    auto name = p.name();
    return {std::move(name), std::move(schedule),
            [p = std::move(p)](const RandomSource&) { return p; }};
  }
};

/// Finite-domain protocol stored as lookup tables. Inputs are indices in
/// [0, domain_size); for the cube, index bit i is coordinate i+1. The
/// transcript before round r is packed as m_0 | m_1 << b_0 | ..., so table r
/// is indexed by input * 2^{offset_r} + prefix.
class TableProtocol {
 public:
  static constexpr std::size_t kMaxMessageBits = 32;
  static constexpr std::size_t kMaxTranscriptBits = 30;
  static constexpr std::uint64_t kMaxTableEntries = 1ULL << 28;

  TableProtocol(std::string name, std::uint64_t domain_size, std::vector<RoundSpec> rounds,
                std::vector<std::vector<std::uint32_t>> message_tables,
                std::vector<std::uint8_t> output_table, Party output_party);

  /// Output party defaults to the receiver of the last message (Bob if none).
  TableProtocol(std::string name, std::uint64_t domain_size, std::vector<RoundSpec> rounds,
                std::vector<std::vector<std::uint32_t>> message_tables,
                std::vector<std::uint8_t> output_table);

  const std::string& name() const noexcept { return name_; }
  std::uint64_t domain_size() const noexcept { return domain_size_; }
  std::size_t rounds() const noexcept { return rounds_.size(); }
  const std::vector<RoundSpec>& schedule() const noexcept { return rounds_; }
  Party output_party() const noexcept { return output_party_; }
  std::size_t max_cost() const noexcept;

  /// Bits sent before round r (r == rounds() gives the full transcript length).
  std::size_t offset(std::size_t r) const noexcept { return offsets_[r]; }

  std::uint32_t message(std::size_t r, std::uint64_t own, std::uint64_t prefix) const noexcept {
    return message_tables_[r][(own << offsets_[r]) | prefix];
  }
  int output_for(std::uint64_t own, std::uint64_t transcript) const noexcept {
    return output_table_[(own << offsets_.back()) | transcript];
  }

  /// Packed full transcript for inputs (x, y).
  std::uint64_t transcript(std::uint64_t x, std::uint64_t y) const noexcept {
    std::uint64_t t = 0;
    for (std::size_t r = 0; r < rounds_.size(); ++r) {
      const std::uint64_t own = rounds_[r].speaker == Party::alice ? x : y;
      t |= static_cast<std::uint64_t>(message(r, own, t)) << offsets_[r];
    }
    return t;
  }

  int run(std::uint64_t x, std::uint64_t y) const noexcept {
    const std::uint64_t t = transcript(x, y);
    return output_for(output_party_ == Party::alice ? x : y, t);
  }

  const std::vector<std::uint32_t>& message_table(std::size_t r) const { return message_tables_.at(r); }
  const std::vector<std::uint8_t>& output_table() const noexcept { return output_table_; }

  /// Callback view over cube inputs of dimension n (requires 2^n == domain_size).
  Protocol<BitString> as_cube_protocol(std::size_t n) const;

 private:
  std::string name_;
  std::uint64_t domain_size_;
  std::vector<RoundSpec> rounds_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<std::uint32_t>> message_tables_;
  std::vector<std::uint8_t> output_table_;
  Party output_party_;
};

/// Splits a packed transcript into messages of the scheduled sizes.
Transcript unpack_transcript(std::uint64_t packed, std::span<const RoundSpec> rounds,
                             std::size_t count);

/// Tabulates a callback protocol over an explicit finite domain. Message r
/// of input i is computed for every transcript prefix.
template <class Input>
TableProtocol tabulate(const Protocol<Input>& p, std::span<const Input> domain) {
  const auto schedule = p.schedule();
  std::size_t offset = 0;
  std::vector<std::vector<std::uint32_t>> tables;
  for (std::size_t r = 0; r < schedule.size(); ++r) {
    if (schedule[r].bits > TableProtocol::kMaxMessageBits ||
        offset + schedule[r].bits > TableProtocol::kMaxTranscriptBits) {
      throw MalformedProtocol("protocol '" + p.name() + "' too large to tabulate");
    }
    const std::uint64_t prefixes = 1ULL << offset;
    std::vector<std::uint32_t> table(domain.size() * prefixes);
    for (std::uint64_t prefix = 0; prefix < prefixes; ++prefix) {
      const Transcript so_far = unpack_transcript(prefix, schedule, r);
      for (std::size_t i = 0; i < domain.size(); ++i) {
        const Message m = p.round_list()[r].message(domain[i], so_far);
        if (m.size() > schedule[r].bits) {
          throw MalformedProtocol("protocol '" + p.name() + "' exceeds its budget");
        }
        table[(i << offset) | prefix] = static_cast<std::uint32_t>(m.size() == 0 ? 0 : m.to_word());
      }
    }
    tables.push_back(std::move(table));
    offset += schedule[r].bits;
  }
  const std::uint64_t transcripts = 1ULL << offset;
  std::vector<std::uint8_t> out(domain.size() * transcripts);
  for (std::uint64_t t = 0; t < transcripts; ++t) {
    const Transcript full = unpack_transcript(t, schedule, schedule.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
      out[(i << offset) | t] = static_cast<std::uint8_t>(p.output_fn()(domain[i], full));
    }
  }
  return TableProtocol(p.name(), domain.size(), schedule, std::move(tables), std::move(out),
                       p.output_party());
}

}  // namespace ghdlab
