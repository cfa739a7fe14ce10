#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ghdlab/bitstring.hpp"
#include "ghdlab/parallel.hpp"
#include "ghdlab/protocol.hpp"
#include "ghdlab/random.hpp"

namespace ghdlab {

/// (index, bit) with a 1-based index.
struct StreamToken {
  std::uint32_t index = 1;
  std::uint8_t bit = 0;

  /// Injective packing used for hashing and set semantics.
  std::uint64_t key() const noexcept { return (static_cast<std::uint64_t>(index) << 1) | bit; }
  friend bool operator==(const StreamToken&, const StreamToken&) = default;
};

using Stream = std::vector<StreamToken>;

/// sigma = <(i, x_i)>, tau = <(i, y_i)> in index order.
std::pair<Stream, Stream> build_streams(const BitString& x, const BitString& y);
Stream build_stream(const BitString& x);

/// Exact number of distinct tokens.
std::size_t exact_f0(std::span<const StreamToken> stream);
std::size_t exact_f0(std::span<const StreamToken> a, std::span<const StreamToken> b);

class StreamParseError : public std::runtime_error {
 public:
  StreamParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Newline-delimited "index,bit". Blank lines and lines starting with '#'
/// are skipped. Indices must lie in [1, 2^32).
Stream read_stream_csv(std::istream& in);
void write_stream_csv(std::ostream& out, std::span<const StreamToken> stream);

/// Serialized streaming state: exactly `bits` bits, packed little-endian.
struct StateBits {
  std::vector<std::uint64_t> words;
  std::size_t bits = 0;

  void push(std::uint64_t value, std::size_t width);
  std::uint64_t read(std::size_t offset, std::size_t width) const;
  friend bool operator==(const StateBits&, const StateBits&) = default;
};

class StreamState {
 public:
  virtual ~StreamState() = default;
  virtual void process(const StreamToken& token) = 0;
  virtual StateBits serialize() const = 0;
  virtual double finalize() const = 0;
};

/// A streaming algorithm: fresh states, and states rebuilt from their
/// serialization. The serialized size is the message cost.
class StreamingAlgorithm {
 public:
  virtual ~StreamingAlgorithm() = default;
  virtual std::string name() const = 0;
  /// nullopt means unbounded.
  virtual std::optional<std::size_t> memory_budget_bits() const = 0;
  virtual std::unique_ptr<StreamState> initialize() const = 0;
  virtual std::unique_ptr<StreamState> deserialize(const StateBits& bits) const = 0;
};

/// Keeps every distinct token: 32-bit count, then 64 bits per token.
class ExactF0Algorithm final : public StreamingAlgorithm {
 public:
  std::string name() const override { return "exact-f0"; }
  std::optional<std::size_t> memory_budget_bits() const override { return std::nullopt; }
  std::unique_ptr<StreamState> initialize() const override;
  std::unique_ptr<StreamState> deserialize(const StateBits& bits) const override;
};

/// Bottom-k (KMV) sketch over 64-bit hashes keyed by a RandomSource.
/// State: 32-bit count, then the retained minima as 64-bit words, ascending.
class KmvSketch final : public StreamingAlgorithm {
 public:
  KmvSketch(std::size_t k_min, const RandomSource& hash_seed);

  std::string name() const override;
  std::optional<std::size_t> memory_budget_bits() const override { return 32 + 64 * k_min_; }
  std::unique_ptr<StreamState> initialize() const override;
  std::unique_ptr<StreamState> deserialize(const StateBits& bits) const override;

  std::size_t k_min() const noexcept { return k_min_; }
  std::uint64_t hash(const StreamToken& t) const noexcept;
  /// (k - 1) / h_(k) with h mapped into (0, 1]; the exact count below k.
  static double estimate(std::span<const std::uint64_t> minima, std::size_t k_min);

 private:
  std::size_t k_min_;
  std::uint64_t salt_;
};

/// One-shot KMV estimate of a stream's F0.
double kmv_estimate(std::span<const StreamToken> stream, std::size_t k_min,
                    const RandomSource& hash_seed);

/// 0 if estimate < n + n/2, else 1.
int ghd_from_f0(double estimate, std::size_t n);

struct PassMessage {
  Party from = Party::alice;
  std::size_t bits = 0;
};

struct PassRun {
  std::size_t n = 0;
  std::size_t passes = 0;
  std::vector<PassMessage> messages;  // 2p - 1 of them
  std::size_t max_message_bits = 0;
  double estimate = 0.0;
  int answer = 0;
};

/// p passes of the streaming algorithm over sigma (Alice) then tau (Bob).
/// The state crosses between parties after every half-pass except the
/// last, so there are 2p - 1 messages; Bob finalizes. Each crossing goes
/// through serialize/deserialize. Throws MalformedProtocol when a message
/// exceeds the algorithm's budget.
PassRun simulate_passes(const BitString& x, const BitString& y, const StreamingAlgorithm& algo,
                        std::size_t passes);

struct AccuracyRow {
  std::size_t k_min = 0;
  std::size_t budget_bits = 0;
  double error = 0.0;
  double half_width = 0.0;
};

struct AccuracyReport {
  std::size_t n = 0;
  double g = 0.0;
  std::uint64_t trials = 0;
  std::vector<AccuracyRow> rows;
  std::size_t chosen_k_min = 0;  // smallest k_min with error + half-width <= 1/3; 0 if none
  bool monotone = false;         // nonincreasing in k_min within confidence bands
  double predicted_scale = 0.0;  // (n/g)^2 = 1/gamma^2
};

/// GHD error of one-pass KMV protocols on pairs at Delta = n/2 +- g, per
/// sketch size. Trial i hashes with source.substream(2i) and draws its pair
/// from source.substream(2i+1), for every row.
AccuracyReport accuracy_requirement_check(std::size_t n, double g,
                                          const std::vector<std::size_t>& k_grid,
                                          std::uint64_t trials, const RandomSource& source,
                                          Exec exec = Exec::parallel);

}  // namespace ghdlab
