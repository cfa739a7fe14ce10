#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghdlab/delta_net.hpp"
#include "ghdlab/evaluation.hpp"
#include "ghdlab/parallel.hpp"
#include "ghdlab/protocol.hpp"
#include "ghdlab/random.hpp"

namespace ghdlab {

enum class Geometry { cube, sphere };
const char* to_string(Geometry g);

/// 9 sqrt(n) / ((1024 k)^2 log2 k). Infinite for k = 1 (log 1 = 0).
double cube_d1(std::size_t n, std::size_t k);
/// 2 sqrt((c1 + 6 ln(2k) + 2) / n).
double sphere_d1(std::size_t n, std::size_t k, std::size_t c1);

struct RoundElimParams {
  Geometry geometry = Geometry::cube;
  std::size_t n = 0;
  std::size_t k = 1;      // total round budget
  std::size_t kappa = 1;  // rounds of the protocol being reduced
  std::size_t c1 = 0;     // first message length
  double d1 = 0.0;
  double delta = 2.0;     // goodness factor

  /// d1 from the geometry's formula and delta = 1 + 1/k.
  static RoundElimParams for_cube(std::size_t n, std::size_t k, std::size_t kappa, std::size_t c1);
  static RoundElimParams for_sphere(std::size_t n, std::size_t k, std::size_t kappa,
                                    std::size_t c1);

  /// BAD1 threshold: Hamming units (d1 sqrt(n)) on the cube, Euclidean on
  /// the sphere.
  double snap_radius() const;

  /// Whether the numeric side conditions the lemma's proof needs are met
  /// for input error eps. Cube: k >= 128, eps <= 1/25, kappa <= k <=
  /// n^{1/4}/(1024 log2 n), c1 <= n/((512k)^4 log2^2 k). Sphere: k >= 2,
  /// eps <= 1/25, d1 <= 1, and the Claim-style bound
  /// exp(-n / (2^19 k^2 (c1 + 6 ln 2k + 2))) <= 1/(128k).
  bool hypothesis_holds(double eps) const;
};

class InsufficientTrials : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EliminationReport {
  Geometry geometry = Geometry::cube;
  Method method = Method::exhaustive;
  std::string protocol;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t kappa = 0;
  std::size_t c1 = 0;
  double d1 = 0.0;
  double snap_radius = 0.0;
  double delta = 0.0;
  Party snapped_party = Party::alice;
  std::uint32_t chosen_message = 0;

  double measure_good = 0.0;
  double measure_A = 0.0;
  double markov_floor = 0.0;      // 1 - 1/delta
  double pigeonhole_floor = 0.0;  // measure_good * 2^{-c1}
  std::uint64_t good_count = 0;   // exhaustive: |good|; sphere: good net cells
  std::uint64_t class_size = 0;   // |A| (points or net cells)

  double eps_in = 0.0;
  double eps_out = 0.0;
  double bad1 = 0.0;
  double bad2 = 0.0;
  double bad3 = 0.0;
  double bound_rhs = 0.0;  // (1 + 1/k) eps_in + 1/(16k)
  std::optional<Rational> eps_in_exact;
  std::optional<Rational> eps_out_exact;
  // Monte Carlo radii (sphere mode), 0 when exact.
  double eps_in_half_width = 0.0;
  double eps_out_half_width = 0.0;
  double bad_half_width = 0.0;  // largest of the three

  std::size_t rounds_in = 0;
  std::size_t rounds_out = 0;
  bool markov_ok = false;
  bool pigeonhole_ok = false;
  std::uint64_t union_violations = 0;  // pairs where Q errs with no bad event
  bool hypothesis_holds = false;
  bool bound_holds = false;  // eps_out <= bound_rhs (informative when hypothesis fails)
  std::string note;
};

// ---- cube, exhaustive ----

struct GoodInputs {
  Party party = Party::alice;          // whose inputs are classified
  std::vector<std::uint8_t> good;      // indexed by that party's input
  std::vector<std::uint64_t> errors;   // wrong answers over all partner inputs
  std::uint64_t total_errors = 0;      // over all 4^n pairs
  std::uint64_t good_count = 0;
};

/// Exhaustive classification of the first speaker's inputs: x is good when
/// Pr_y(P errs | x) <= delta * eps, with errors judged against the sign
/// label cube_sign_label(Delta, n) under the uniform distribution.
GoodInputs find_good_inputs(const TableProtocol& p, std::size_t n, double delta,
                            Exec exec = Exec::parallel);

struct MessageClass {
  std::uint32_t message = 0;
  std::vector<std::uint64_t> members;      // sorted
  std::vector<std::uint64_t> class_sizes;  // indexed by message (2^{c1} entries)
};

/// Partitions the good inputs by first message and returns the largest
/// class (ties to the smallest message). Throws on an empty good set.
MessageClass largest_message_class(const TableProtocol& p, const GoodInputs& good);

/// Nearest member of A in Hamming distance, ties to the lexicographically
/// smallest. A must be nonempty.
std::uint64_t snap(std::uint64_t x, std::span<const std::uint64_t> A);

/// Nearest row of A (Euclidean), ties to the lower row index.
std::size_t snap(const SphereVector& x, const DeltaNet& net, std::span<const std::uint32_t> A);

struct Elimination {
  TableProtocol q;
  EliminationReport report;
  std::vector<std::uint64_t> snap_table;  // cube: x -> snap(x, A); sphere: net index -> net index
};

/// One exact elimination step on the uniform cube. The first speaker's
/// input is snapped to A; the other party's input is untouched. Q keeps
/// P's output party. Throws on a 0-round P.
Elimination eliminate_round(const TableProtocol& p, std::size_t n, const RoundElimParams& params,
                            Exec exec = Exec::parallel);

/// (1 + 1/k)^kappa (eps0 + 1/16) - 1/16.
double error_recurrence(double eps0, std::size_t k, std::size_t kappa);
/// eps -> (1 + 1/k) eps + 1/(16k), applied kappa times.
double error_recurrence_iterated(double eps0, std::size_t k, std::size_t kappa);

struct EliminationRun {
  std::vector<EliminationReport> reports;
  std::vector<TableProtocol> protocols;  // protocols[0] = P, ..., back() is 0-round
  double eps0 = 0.0;
};

/// Eliminates every round of P in turn (the snapped party alternates with
/// the speaker). k defaults to P.rounds(); delta defaults to 1 + 1/k.
EliminationRun full_elimination(const TableProtocol& p, std::size_t n,
                                std::optional<std::size_t> k = std::nullopt,
                                Exec exec = Exec::parallel,
                                std::optional<double> delta = std::nullopt);

/// CSV trajectory: kappa,eps,bad1,bad2,bad3,bound_rhs,recurrence. Row 0 is
/// the input protocol.
std::string trajectory_csv(const EliminationRun& run);

// ---- sphere, Monte Carlo over a delta-net ----

struct SphereEliminationConfig {
  std::uint64_t trials = 200000;
  RandomSource source{};
  Exec exec = Exec::parallel;
};

/// Elimination for a table protocol on the points of `net` (domain index =
/// net point). Inputs are Haar; P acts on rounded inputs and is judged
/// against sgn(x~ . y~). Goodness is per net cell. Refuses with
/// InsufficientTrials when the 99% radius of the eps estimate exceeds
/// delta * eps / 10.
Elimination eliminate_round_sphere(const TableProtocol& p, const DeltaNet& net,
                                   const RoundElimParams& params,
                                   const SphereEliminationConfig& config);

}  // namespace ghdlab
