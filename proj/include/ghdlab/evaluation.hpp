#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "ghdlab/instances.hpp"
#include "ghdlab/parallel.hpp"
#include "ghdlab/protocol.hpp"

namespace ghdlab {

/// Which inputs count and what the right answer is.
///  - sign_of_inner_product: every input pair counts; truth is sgn(x.y)
///    (on the cube, 0 iff Delta <= n/2).
///  - promise_only: only promise pairs count; truth is the gap label.
enum class Convention { promise_only, sign_of_inner_product };
enum class Method { exhaustive, monte_carlo };

const char* to_string(Convention c);
const char* to_string(Method m);
Convention convention_from_string(std::string_view s);

inline constexpr double kConfidence99 = 2.576;

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  /// Reduced fraction num/den.
  static Rational reduced(std::uint64_t num, std::uint64_t den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct ErrorReport {
  std::string protocol;
  double error_probability = 0.0;
  Convention convention = Convention::sign_of_inner_product;
  Method method = Method::exhaustive;
  std::optional<Rational> exact;  // exhaustive evaluations only
  std::uint64_t counted = 0;      // input pairs (or trials) that entered the average
  std::uint64_t errors = 0;
  double half_width = 0.0;        // 99% normal-approximation radius, 0 when exact
  std::size_t max_cost = 0;
  std::size_t rounds = 0;
  std::string note;
};

class EnumerationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest cube dimension evaluated exhaustively (4^n input pairs).
inline constexpr std::size_t kDefaultExhaustiveMaxN = 12;

/// 99% half-width for a Bernoulli estimate; rule-of-three floor 3/trials
/// when the estimate is 0 or 1.
double binomial_half_width(std::uint64_t hits, std::uint64_t trials);

/// Exact distributional error over all 4^n cube pairs (uniform measure).
/// Under promise_only the average is over promise pairs only.
ErrorReport evaluate_error_exhaustive(const TableProtocol& p, std::size_t n, Convention convention,
                                      std::optional<CubePromise> promise = std::nullopt,
                                      Exec exec = Exec::parallel,
                                      std::size_t max_n = kDefaultExhaustiveMaxN);

ErrorReport evaluate_error_exhaustive(const Protocol<BitString>& p, std::size_t n,
                                      Convention convention,
                                      std::optional<CubePromise> promise = std::nullopt,
                                      Exec exec = Exec::parallel,
                                      std::size_t max_n = kDefaultExhaustiveMaxN);

/// A sampled input pair with its truth label; truth < 0 means the pair does
/// not count (outside the promise under promise_only).
template <class Input>
struct LabeledPair {
  Input x;
  Input y;
  int truth;
};

template <class Input>
using PairSampler = std::function<LabeledPair<Input>(Rng&)>;

/// Uniform cube pairs, truth per convention.
PairSampler<BitString> uniform_cube_pairs(std::size_t n, Convention convention,
                                          std::optional<CubePromise> promise = std::nullopt);
/// Haar pairs, truth per convention.
PairSampler<SphereVector> haar_pairs(std::size_t n, Convention convention,
                                     std::optional<SpherePromise> promise = std::nullopt);
/// Cube pairs at Delta = (1/2 - gamma) n or (1/2 + gamma) n (rounded), each
/// side with probability 1/2; truth is the sign label.
PairSampler<BitString> gap_boundary_cube_pairs(std::size_t n, double gamma);
/// Sphere pairs with x.y = +gamma or -gamma, each with probability 1/2.
PairSampler<SphereVector> gap_boundary_sphere_pairs(std::size_t n, double gamma);

/// Monte Carlo distributional error of a public-coin protocol. Trial i draws
/// its coin from source.substream(2i) and its inputs from
/// source.substream(2i+1), so the result does not depend on worker count.
template <class Input>
ErrorReport evaluate_error_monte_carlo(const PublicCoinProtocol<Input>& p,
                                       const PairSampler<Input>& sampler, Convention convention,
                                       std::uint64_t trials, const RandomSource& source,
                                       Exec exec = Exec::parallel) {
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;
  const auto counts = tally_index<2>(
      trials,
      [&](std::uint64_t i) -> std::array<std::uint64_t, 2> {
        try {
          Rng input_rng = source.substream(2 * i + 1).rng();
          const LabeledPair<Input> pair = sampler(input_rng);
          if (pair.truth < 0) return {0, 0};
          const Protocol<Input> instance = p.instantiate(source.substream(2 * i));
          const int out = instance.output(pair.x, pair.y);
          return {1, out != pair.truth ? 1ULL : 0ULL};
        } catch (const std::exception& e) {
          std::lock_guard lock(failure_mutex);
          if (!failed.exchange(true)) failure = e.what();
          return {0, 0};
        }
      },
      exec);
  if (failed) throw MalformedProtocol(failure);
  ErrorReport report;
  report.protocol = p.name;
  report.convention = convention;
  report.method = Method::monte_carlo;
  report.counted = counts[0];
  report.errors = counts[1];
  report.error_probability =
      counts[0] == 0 ? 0.0 : static_cast<double>(counts[1]) / static_cast<double>(counts[0]);
  report.half_width = binomial_half_width(counts[1], counts[0]);
  report.max_cost = p.max_cost();
  report.rounds = p.rounds();
  if (p.rounds() == 0) report.note = "0-round protocol: Bob outputs";
  return report;
}

}  // namespace ghdlab
