#include "ghdlab/streaming.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <unordered_set>

#include "ghdlab/evaluation.hpp"
#include "ghdlab/instances.hpp"

namespace ghdlab {

Stream build_stream(const BitString& x) {
  if (x.size() >= (1ULL << 32)) throw std::invalid_argument("stream indices must fit in 32 bits");
  Stream s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    s[i] = {static_cast<std::uint32_t>(i + 1), static_cast<std::uint8_t>(x[i])};
  }
  return s;
}

std::pair<Stream, Stream> build_streams(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw std::invalid_argument("streams need equal-length strings");
  return {build_stream(x), build_stream(y)};
}

std::size_t exact_f0(std::span<const StreamToken> stream) { return exact_f0(stream, {}); }

std::size_t exact_f0(std::span<const StreamToken> a, std::span<const StreamToken> b) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(a.size() + b.size());
  for (const auto& t : a) seen.insert(t.key());
  for (const auto& t : b) seen.insert(t.key());
  return seen.size();
}

StreamParseError::StreamParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Stream read_stream_csv(std::istream& in) {
  Stream out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw StreamParseError(number, "expected 'index,bit'");
    std::uint64_t index = 0;
    const char* first = line.data();
    const char* mid = line.data() + comma;
    auto [p, ec] = std::from_chars(first, mid, index);
    if (ec != std::errc{} || p != mid) throw StreamParseError(number, "bad index");
    if (index == 0 || index >= (1ULL << 32)) throw StreamParseError(number, "index out of range");
    const std::string bit = line.substr(comma + 1);
    if (bit != "0" && bit != "1") throw StreamParseError(number, "bit must be 0 or 1");
    out.push_back({static_cast<std::uint32_t>(index), static_cast<std::uint8_t>(bit == "1")});
  }
  return out;
}

void write_stream_csv(std::ostream& out, std::span<const StreamToken> stream) {
  for (const auto& t : stream) out << t.index << ',' << static_cast<int>(t.bit) << '\n';
}

void StateBits::push(std::uint64_t value, std::size_t width) {
  for (std::size_t b = 0; b < width; ++b) {
    if (bits % 64 == 0) words.push_back(0);
    if ((value >> b) & 1ULL) words.back() |= 1ULL << (bits % 64);
    ++bits;
  }
}

std::uint64_t StateBits::read(std::size_t offset, std::size_t width) const {
  if (offset + width > bits) throw std::out_of_range("state read past its end");
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < width; ++b) {
    const std::size_t at = offset + b;
    if ((words[at / 64] >> (at % 64)) & 1ULL) v |= 1ULL << b;
  }
  return v;
}

namespace {

class ExactF0State final : public StreamState {
 public:
  void process(const StreamToken& t) override { keys_.insert(t.key()); }
  StateBits serialize() const override {
    StateBits s;
    s.push(keys_.size(), 32);
    for (auto k : keys_) s.push(k, 64);
    return s;
  }
  double finalize() const override { return static_cast<double>(keys_.size()); }
  std::set<std::uint64_t> keys_;
};

class KmvState final : public StreamState {
 public:
  explicit KmvState(const KmvSketch& algo) : algo_(algo) {}
  void process(const StreamToken& t) override {
    const std::uint64_t h = algo_.hash(t);
    if (minima_.size() == algo_.k_min() && h >= minima_.back()) return;
    const auto it = std::lower_bound(minima_.begin(), minima_.end(), h);
    if (it != minima_.end() && *it == h) return;
    minima_.insert(it, h);
    if (minima_.size() > algo_.k_min()) minima_.pop_back();
  }
  StateBits serialize() const override {
    StateBits s;
    s.push(minima_.size(), 32);
    for (auto m : minima_) s.push(m, 64);
    return s;
  }
  double finalize() const override { return KmvSketch::estimate(minima_, algo_.k_min()); }

  const KmvSketch& algo_;
  std::vector<std::uint64_t> minima_;
};

}  // namespace

std::unique_ptr<StreamState> ExactF0Algorithm::initialize() const {
  return std::make_unique<ExactF0State>();
}

std::unique_ptr<StreamState> ExactF0Algorithm::deserialize(const StateBits& bits) const {
  auto s = std::make_unique<ExactF0State>();
  const std::size_t count = bits.read(0, 32);
  if (bits.bits != 32 + 64 * count) throw std::invalid_argument("exact-f0 state has the wrong size");
  for (std::size_t i = 0; i < count; ++i) s->keys_.insert(bits.read(32 + 64 * i, 64));
  return s;
}

KmvSketch::KmvSketch(std::size_t k_min, const RandomSource& hash_seed)
    : k_min_(k_min), salt_(hash_seed.rng()()) {
  if (k_min < 2) throw std::invalid_argument("KMV needs k_min >= 2");
  if (k_min >= (1ULL << 32)) throw std::invalid_argument("k_min too large");
}

std::string KmvSketch::name() const { return "kmv(k=" + std::to_string(k_min_) + ")"; }

std::uint64_t KmvSketch::hash(const StreamToken& t) const noexcept {
  // Bijective in the key for a fixed salt, so distinct tokens never collide.
  return mix64(mix64(t.key() ^ salt_) + salt_);
}

double KmvSketch::estimate(std::span<const std::uint64_t> minima, std::size_t k_min) {
  if (minima.size() < k_min) return static_cast<double>(minima.size());
  // Hash h -> (h + 1) / 2^64 in (0, 1].
  const double hk = (static_cast<double>(minima[k_min - 1] >> 11) + 1.0) * 0x1.0p-53;
  return static_cast<double>(k_min - 1) / hk;
}

std::unique_ptr<StreamState> KmvSketch::initialize() const { return std::make_unique<KmvState>(*this); }

std::unique_ptr<StreamState> KmvSketch::deserialize(const StateBits& bits) const {
  auto s = std::make_unique<KmvState>(*this);
  const std::size_t count = bits.read(0, 32);
  if (count > k_min_ || bits.bits != 32 + 64 * count) {
    throw std::invalid_argument("kmv state has the wrong size");
  }
  for (std::size_t i = 0; i < count; ++i) s->minima_.push_back(bits.read(32 + 64 * i, 64));
  if (!std::is_sorted(s->minima_.begin(), s->minima_.end()) ||
      std::adjacent_find(s->minima_.begin(), s->minima_.end()) != s->minima_.end()) {
    throw std::invalid_argument("kmv minima must be strictly ascending");
  }
  return s;
}

double kmv_estimate(std::span<const StreamToken> stream, std::size_t k_min,
                    const RandomSource& hash_seed) {
  const KmvSketch algo(k_min, hash_seed);
  auto s = algo.initialize();
  for (const auto& t : stream) s->process(t);
  return s->finalize();
}

int ghd_from_f0(double estimate, std::size_t n) {
  return estimate < 1.5 * static_cast<double>(n) ? 0 : 1;
}

PassRun simulate_passes(const BitString& x, const BitString& y, const StreamingAlgorithm& algo,
                        std::size_t passes) {
  if (passes == 0) throw std::invalid_argument("need at least one pass");
  const auto [sigma, tau] = build_streams(x, y);
  PassRun run;
  run.n = x.size();
  run.passes = passes;
  const auto budget = algo.memory_budget_bits();
  auto state = algo.initialize();
  auto hand_over = [&](Party from) {
    StateBits bits = state->serialize();
    if (budget && bits.bits > *budget) {
      throw MalformedProtocol(algo.name() + " serialized " + std::to_string(bits.bits) +
                              " bits, budget " + std::to_string(*budget));
    }
    run.messages.push_back({from, bits.bits});
    run.max_message_bits = std::max(run.max_message_bits, bits.bits);
    state = algo.deserialize(bits);
  };
  for (std::size_t pass = 0; pass < passes; ++pass) {
    for (const auto& t : sigma) state->process(t);
    hand_over(Party::alice);
    for (const auto& t : tau) state->process(t);
    if (pass + 1 < passes) hand_over(Party::bob);
  }
  run.estimate = state->finalize();
  run.answer = ghd_from_f0(run.estimate, run.n);
  return run;
}

AccuracyReport accuracy_requirement_check(std::size_t n, double g,
                                          const std::vector<std::size_t>& k_grid,
                                          std::uint64_t trials, const RandomSource& source,
                                          Exec exec) {
  if (!(g >= std::sqrt(static_cast<double>(n))) || g > static_cast<double>(n) / 2.0) {
    throw std::invalid_argument("need sqrt(n) <= g <= n/2");
  }
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  AccuracyReport rep;
  rep.n = n;
  rep.g = g;
  rep.trials = trials;
  const double ratio = static_cast<double>(n) / g;
  rep.predicted_scale = ratio * ratio;
  const auto sampler = gap_boundary_cube_pairs(n, g / static_cast<double>(n));
  for (std::size_t k : k_grid) {
    const auto wrong = count_if_index(
        trials,
        [&](std::uint64_t i) {
          Rng input_rng = source.substream(2 * i + 1).rng();
          const auto pair = sampler(input_rng);
          const KmvSketch algo(k, source.substream(2 * i));
          return simulate_passes(pair.x, pair.y, algo, 1).answer != pair.truth;
        },
        exec);
    rep.rows.push_back({k, 32 + 64 * k, static_cast<double>(wrong) / static_cast<double>(trials),
                        binomial_half_width(wrong, trials)});
  }
  std::vector<AccuracyRow> sorted = rep.rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const AccuracyRow& a, const AccuracyRow& b) { return a.k_min < b.k_min; });
  rep.monotone = true;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].error > sorted[i - 1].error + sorted[i].half_width + sorted[i - 1].half_width) {
      rep.monotone = false;
    }
  }
  for (const auto& r : sorted) {
    if (r.error + r.half_width <= 1.0 / 3.0) {
      rep.chosen_k_min = r.k_min;
      break;
    }
  }
  return rep;
}

}  // namespace ghdlab
