#include "ghdlab/round_elim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "ghdlab/instances.hpp"
#include "ghdlab/kernels.hpp"

namespace ghdlab {

const char* to_string(Geometry g) { return g == Geometry::cube ? "cube" : "sphere"; }

double cube_d1(std::size_t n, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (k == 1) return std::numeric_limits<double>::infinity();
  const double kk = 1024.0 * static_cast<double>(k);
  return 9.0 * std::sqrt(static_cast<double>(n)) / (kk * kk * std::log2(static_cast<double>(k)));
}

double sphere_d1(std::size_t n, std::size_t k, std::size_t c1) {
  if (k == 0 || n == 0) throw std::invalid_argument("n and k must be positive");
  return 2.0 * std::sqrt((static_cast<double>(c1) + 6.0 * std::log(2.0 * static_cast<double>(k)) + 2.0) /
                         static_cast<double>(n));
}

RoundElimParams RoundElimParams::for_cube(std::size_t n, std::size_t k, std::size_t kappa,
                                          std::size_t c1) {
  RoundElimParams p;
  p.geometry = Geometry::cube;
  p.n = n;
  p.k = k;
  p.kappa = kappa;
  p.c1 = c1;
  p.d1 = cube_d1(n, k);
  p.delta = 1.0 + 1.0 / static_cast<double>(k);
  return p;
}

RoundElimParams RoundElimParams::for_sphere(std::size_t n, std::size_t k, std::size_t kappa,
                                            std::size_t c1) {
  RoundElimParams p = for_cube(n, k, kappa, c1);
  p.geometry = Geometry::sphere;
  p.d1 = sphere_d1(n, k, c1);
  return p;
}

double RoundElimParams::snap_radius() const {
  return geometry == Geometry::cube ? d1 * std::sqrt(static_cast<double>(n)) : d1;
}

bool RoundElimParams::hypothesis_holds(double eps) const {
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  if (eps > 1.0 / 25.0) return false;
  if (geometry == Geometry::cube) {
    if (k < 128 || kappa > k || n < 2) return false;
    if (kd > std::pow(nd, 0.25) / (1024.0 * std::log2(nd))) return false;
    const double lk = std::log2(kd);
    return static_cast<double>(c1) <= nd / (std::pow(512.0 * kd, 4.0) * lk * lk);
  }
  if (k < 2 || d1 > 1.0) return false;
  const double claim = std::exp(
      -nd / (std::pow(2.0, 19.0) * kd * kd *
             (static_cast<double>(c1) + 6.0 * std::log(2.0 * kd) + 2.0)));
  return claim <= 1.0 / (128.0 * kd);
}

namespace {

// The first speaker's input and its partner, mapped back to (alice, bob).
struct Roles {
  Party snapped;
  std::uint64_t alice(std::uint64_t s, std::uint64_t other) const {
    return snapped == Party::alice ? s : other;
  }
  std::uint64_t bob(std::uint64_t s, std::uint64_t other) const {
    return snapped == Party::alice ? other : s;
  }
};

void require_rounds(const TableProtocol& p) {
  if (p.rounds() == 0) throw std::invalid_argument("cannot eliminate a round of a 0-round protocol");
}

// Q = P with the first message fixed to m1 and the snapped party's input
// replaced through `snap_of`.
template <class SnapOf>
TableProtocol build_q(const TableProtocol& p, std::uint32_t m1, Party snapped, SnapOf&& snap_of) {
  const auto& sched = p.schedule();
  const std::size_t b0 = sched[0].bits;
  const std::uint64_t size = p.domain_size();
  std::vector<RoundSpec> q_sched(sched.begin() + 1, sched.end());
  std::vector<std::vector<std::uint32_t>> tables;
  for (std::size_t r = 1; r < sched.size(); ++r) {
    const std::size_t off = p.offset(r) - b0;
    std::vector<std::uint32_t> t(size << off);
    for (std::uint64_t own = 0; own < size; ++own) {
      const std::uint64_t input = sched[r].speaker == snapped ? snap_of(own) : own;
      for (std::uint64_t prefix = 0; prefix < (1ULL << off); ++prefix) {
        t[(own << off) | prefix] = p.message(r, input, m1 | (prefix << b0));
      }
    }
    tables.push_back(std::move(t));
  }
  const std::size_t off = p.offset(sched.size()) - b0;
  std::vector<std::uint8_t> out(size << off);
  for (std::uint64_t own = 0; own < size; ++own) {
    const std::uint64_t input = p.output_party() == snapped ? snap_of(own) : own;
    for (std::uint64_t t = 0; t < (1ULL << off); ++t) {
      out[(own << off) | t] = static_cast<std::uint8_t>(p.output_for(input, m1 | (t << b0)));
    }
  }
  return TableProtocol("elim(" + p.name() + ")", size, std::move(q_sched), std::move(tables),
                       std::move(out), p.output_party());
}

}  // namespace

GoodInputs find_good_inputs(const TableProtocol& p, std::size_t n, double delta, Exec exec) {
  require_rounds(p);
  if (n == 0 || n > kDefaultExhaustiveMaxN || p.domain_size() != (1ULL << n)) {
    throw EnumerationCapExceeded("exhaustive round elimination needs 2^n == domain, n <= " +
                                 std::to_string(kDefaultExhaustiveMaxN));
  }
  if (!(delta > 1.0)) throw std::invalid_argument("goodness factor must exceed 1");
  GoodInputs g;
  g.party = p.schedule()[0].speaker;
  const Roles roles{g.party};
  const std::uint64_t size = 1ULL << n;
  g.errors = map_index<std::uint64_t>(
      size,
      [&](std::uint64_t s) {
        std::uint64_t e = 0;
        for (std::uint64_t z = 0; z < size; ++z) {
          const std::uint64_t x = roles.alice(s, z);
          const std::uint64_t y = roles.bob(s, z);
          if (p.run(x, y) != cube_sign_label(std::popcount(x ^ y), n)) ++e;
        }
        return e;
      },
      exec);
  for (auto e : g.errors) g.total_errors += e;
  // e_x / 2^n <= delta * E / 4^n, with a relative slack for delta = 1 + 1/k
  // not being exact in binary.
  const long double rhs = static_cast<long double>(delta) * static_cast<long double>(g.total_errors) *
                          (1.0L + 1e-12L);
  g.good.resize(size);
  for (std::uint64_t s = 0; s < size; ++s) {
    const bool ok = static_cast<long double>(g.errors[s]) * static_cast<long double>(size) <= rhs;
    g.good[s] = ok ? 1 : 0;
    if (ok) ++g.good_count;
  }
  return g;
}

MessageClass largest_message_class(const TableProtocol& p, const GoodInputs& good) {
  require_rounds(p);
  if (good.good_count == 0) throw std::invalid_argument("empty good set");
  const std::size_t c1 = p.schedule()[0].bits;
  MessageClass mc;
  mc.class_sizes.assign(1ULL << c1, 0);
  for (std::uint64_t s = 0; s < good.good.size(); ++s) {
    if (good.good[s] != 0) ++mc.class_sizes[p.message(0, s, 0)];
  }
  // max_element returns the first maximum, i.e. the smallest message.
  mc.message = static_cast<std::uint32_t>(
      std::max_element(mc.class_sizes.begin(), mc.class_sizes.end()) - mc.class_sizes.begin());
  for (std::uint64_t s = 0; s < good.good.size(); ++s) {
    if (good.good[s] != 0 && p.message(0, s, 0) == mc.message) mc.members.push_back(s);
  }
  return mc;
}

std::uint64_t snap(std::uint64_t x, std::span<const std::uint64_t> A) {
  if (A.empty()) throw std::invalid_argument("cannot snap to an empty set");
  return kernels::snap_point(x, A);
}

std::size_t snap(const SphereVector& x, const DeltaNet& net, std::span<const std::uint32_t> A) {
  if (A.empty()) throw std::invalid_argument("cannot snap to an empty set");
  std::size_t best = A[0];
  double best_d = std::numeric_limits<double>::infinity();
  for (std::uint32_t i : A) {
    const auto c = net.coords(i);
    double d = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      const double t = c[j] - x[j];
      d += t * t;
    }
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

Elimination eliminate_round(const TableProtocol& p, std::size_t n, const RoundElimParams& params,
                            Exec exec) {
  const GoodInputs good = find_good_inputs(p, n, params.delta, exec);
  const MessageClass mc = largest_message_class(p, good);
  const Party snapped = good.party;
  const Roles roles{snapped};
  const std::uint64_t size = 1ULL << n;
  std::vector<std::uint64_t> snap_table = kernels::snap_table(n, mc.members, exec);
  TableProtocol q = build_q(p, mc.message, snapped, [&](std::uint64_t s) { return snap_table[s]; });

  const double radius = params.snap_radius();
  // counts: Q errs, BAD1, BAD2, BAD3, Q errs with no bad event
  const auto counts = tally_index<5>(
      size,
      [&](std::uint64_t s) -> std::array<std::uint64_t, 5> {
        std::array<std::uint64_t, 5> c{};
        const std::uint64_t snapped_s = snap_table[s];
        const bool far = static_cast<double>(std::popcount(s ^ snapped_s)) > radius;
        for (std::uint64_t z = 0; z < size; ++z) {
          const int truth = cube_sign_label(std::popcount(s ^ z), n);
          const int snapped_truth = cube_sign_label(std::popcount(snapped_s ^ z), n);
          const int q_out = q.run(roles.alice(s, z), roles.bob(s, z));
          const int p_out = p.run(roles.alice(snapped_s, z), roles.bob(snapped_s, z));
          const bool bad2 = p_out != snapped_truth;
          const bool bad3 = !far && snapped_truth != truth;
          const bool q_err = q_out != truth;
          c[0] += q_err;
          c[1] += far;
          c[2] += bad2;
          c[3] += bad3;
          c[4] += q_err && !far && !bad2 && !bad3;
        }
        return c;
      },
      exec);

  const std::uint64_t pairs = size * size;
  const double total = static_cast<double>(pairs);
  EliminationReport r;
  r.geometry = Geometry::cube;
  r.method = Method::exhaustive;
  r.protocol = p.name();
  r.n = n;
  r.k = params.k;
  r.kappa = params.kappa;
  r.c1 = p.schedule()[0].bits;
  r.d1 = params.d1;
  r.snap_radius = radius;
  r.delta = params.delta;
  r.snapped_party = snapped;
  r.chosen_message = mc.message;
  r.good_count = good.good_count;
  r.class_size = mc.members.size();
  r.measure_good = static_cast<double>(good.good_count) / static_cast<double>(size);
  r.measure_A = static_cast<double>(mc.members.size()) / static_cast<double>(size);
  r.markov_floor = 1.0 - 1.0 / params.delta;
  r.pigeonhole_floor = std::ldexp(r.measure_good, -static_cast<int>(r.c1));
  r.markov_ok = r.measure_good >= r.markov_floor;
  r.pigeonhole_ok = (static_cast<std::uint64_t>(mc.members.size()) << r.c1) >= good.good_count;
  r.eps_in_exact = Rational::reduced(good.total_errors, pairs);
  r.eps_out_exact = Rational::reduced(counts[0], pairs);
  r.eps_in = static_cast<double>(good.total_errors) / total;
  r.eps_out = static_cast<double>(counts[0]) / total;
  r.bad1 = static_cast<double>(counts[1]) / total;
  r.bad2 = static_cast<double>(counts[2]) / total;
  r.bad3 = static_cast<double>(counts[3]) / total;
  r.union_violations = counts[4];
  r.bound_rhs = (1.0 + 1.0 / static_cast<double>(params.k)) * r.eps_in +
                1.0 / (16.0 * static_cast<double>(params.k));
  r.rounds_in = p.rounds();
  r.rounds_out = q.rounds();
  r.hypothesis_holds = params.hypothesis_holds(r.eps_in);
  r.bound_holds = r.eps_out <= r.bound_rhs;
  if (!r.hypothesis_holds) r.note = "hypothesis vacuous at this scale";
  return {std::move(q), std::move(r), std::move(snap_table)};
}

double error_recurrence(double eps0, std::size_t k, std::size_t kappa) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  return std::pow(1.0 + 1.0 / static_cast<double>(k), static_cast<double>(kappa)) *
             (eps0 + 1.0 / 16.0) -
         1.0 / 16.0;
}

double error_recurrence_iterated(double eps0, std::size_t k, std::size_t kappa) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  const double kd = static_cast<double>(k);
  double eps = eps0;
  for (std::size_t i = 0; i < kappa; ++i) eps = (1.0 + 1.0 / kd) * eps + 1.0 / (16.0 * kd);
  return eps;
}

EliminationRun full_elimination(const TableProtocol& p, std::size_t n, std::optional<std::size_t> k,
                                Exec exec, std::optional<double> delta) {
  require_rounds(p);
  const std::size_t budget = k.value_or(p.rounds());
  if (budget < p.rounds()) throw std::invalid_argument("k must be at least the protocol's rounds");
  EliminationRun run;
  run.protocols.push_back(p);
  while (run.protocols.back().rounds() > 0) {
    const TableProtocol& cur = run.protocols.back();
    auto params = RoundElimParams::for_cube(n, budget, cur.rounds(), cur.schedule()[0].bits);
    if (delta) params.delta = *delta;
    Elimination e = eliminate_round(cur, n, params, exec);
    if (run.reports.empty()) run.eps0 = e.report.eps_in;
    run.reports.push_back(std::move(e.report));
    run.protocols.push_back(std::move(e.q));
  }
  return run;
}

std::string trajectory_csv(const EliminationRun& run) {
  std::ostringstream os;
  os.precision(17);
  os << "kappa,eps,bad1,bad2,bad3,bound_rhs,recurrence\n";
  const std::size_t k = run.reports.empty() ? 1 : run.reports.front().k;
  os << 0 << ',' << run.eps0 << ",,,,," << run.eps0 << '\n';
  for (std::size_t i = 0; i < run.reports.size(); ++i) {
    const auto& r = run.reports[i];
    os << (i + 1) << ',' << r.eps_out << ',' << r.bad1 << ',' << r.bad2 << ',' << r.bad3 << ','
       << r.bound_rhs << ',' << error_recurrence(run.eps0, k, i + 1) << '\n';
  }
  return os.str();
}

Elimination eliminate_round_sphere(const TableProtocol& p, const DeltaNet& net,
                                   const RoundElimParams& params,
                                   const SphereEliminationConfig& config) {
  require_rounds(p);
  if (p.domain_size() != net.size()) {
    throw std::invalid_argument("protocol domain does not match the net size");
  }
  if (!(params.delta > 1.0)) throw std::invalid_argument("goodness factor must exceed 1");
  if (config.trials == 0) throw std::invalid_argument("trials must be positive");
  const std::size_t n = net.dimension();
  const std::size_t cells = net.size();
  const Party snapped = p.schedule()[0].speaker;
  const Roles roles{snapped};

  // Pass 1: per-cell mass and conditional error of the snapped party's cell.
  struct Draw {
    std::uint32_t cell = 0;
    bool err = false;
  };
  const RandomSource pass1 = config.source.substream(0);
  const auto draws = map_index<Draw>(
      config.trials,
      [&](std::uint64_t i) {
        Rng rng = pass1.substream(i).rng();
        const SphereVector s = sample_haar(n, rng);
        const SphereVector z = sample_haar(n, rng);
        const auto si = net.round_index(s);
        const auto zi = net.round_index(z);
        const int out = p.run(roles.alice(si, zi), roles.bob(si, zi));
        return Draw{static_cast<std::uint32_t>(si), out != sgn(dot(s, z))};
      },
      config.exec);
  std::vector<std::uint64_t> hits(cells, 0);
  std::vector<std::uint64_t> errs(cells, 0);
  std::uint64_t total_err = 0;
  for (const auto& d : draws) {
    ++hits[d.cell];
    errs[d.cell] += d.err;
    total_err += d.err;
  }
  const double trials = static_cast<double>(config.trials);
  const double eps = static_cast<double>(total_err) / trials;
  const double eps_hw = binomial_half_width(total_err, config.trials);
  if (total_err > 0 && eps_hw > params.delta * eps / 10.0) {
    throw InsufficientTrials("eps estimate radius " + std::to_string(eps_hw) + " exceeds delta*eps/10 = " +
                             std::to_string(params.delta * eps / 10.0) + "; raise trials");
  }
  // Cells never hit carry no estimated mass and count as good.
  std::vector<std::uint8_t> good(cells, 0);
  std::uint64_t good_hits = 0;
  std::uint64_t good_cells = 0;
  for (std::size_t c = 0; c < cells; ++c) {
    const bool ok = static_cast<double>(errs[c]) <=
                    params.delta * eps * static_cast<double>(hits[c]) * (1.0 + 1e-12);
    good[c] = ok ? 1 : 0;
    if (ok) {
      good_hits += hits[c];
      ++good_cells;
    }
  }
  const std::size_t c1 = p.schedule()[0].bits;
  std::vector<std::uint64_t> class_mass(1ULL << c1, 0);
  std::vector<std::uint64_t> class_cells(1ULL << c1, 0);
  for (std::size_t c = 0; c < cells; ++c) {
    if (good[c] == 0) continue;
    class_mass[p.message(0, c, 0)] += hits[c];
    ++class_cells[p.message(0, c, 0)];
  }
  // Largest estimated mass; ties to the smallest message with any cell.
  std::uint32_t m1 = 0;
  bool found = false;
  for (std::uint32_t m = 0; m < class_mass.size(); ++m) {
    if (class_cells[m] == 0) continue;
    if (!found || class_mass[m] > class_mass[m1]) {
      m1 = m;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("empty good set");
  std::vector<std::uint32_t> A;
  for (std::size_t c = 0; c < cells; ++c) {
    if (good[c] != 0 && p.message(0, c, 0) == m1) A.push_back(static_cast<std::uint32_t>(c));
  }
  std::vector<std::uint64_t> snap_table(cells);
  for (std::size_t c = 0; c < cells; ++c) snap_table[c] = snap(net.point(c), net, A);
  TableProtocol q = build_q(p, m1, snapped, [&](std::uint64_t s) { return snap_table[s]; });

  // Pass 2: fresh pairs, snapped party's raw input snapped straight to A.
  const RandomSource pass2 = config.source.substream(1);
  const double radius = params.snap_radius();
  const auto counts = tally_index<5>(
      config.trials,
      [&](std::uint64_t i) -> std::array<std::uint64_t, 5> {
        Rng rng = pass2.substream(i).rng();
        const SphereVector s = sample_haar(n, rng);
        const SphereVector z = sample_haar(n, rng);
        const std::size_t a = snap(s, net, A);
        const SphereVector xa = net.point(a);
        const auto zi = net.round_index(z);
        const int truth = sgn(dot(s, z));
        const int snapped_truth = sgn(dot(xa, z));
        const bool far = distance(s, xa) > radius;
        const int p_out = p.run(roles.alice(a, zi), roles.bob(a, zi));
        // Q with the raw input already snapped: P from round 2 given m1 == P's first message on a.
        const bool bad2 = p_out != snapped_truth;
        const bool bad3 = !far && snapped_truth != truth;
        const bool q_err = p_out != truth;
        return {q_err, far, bad2, bad3, q_err && !far && !bad2 && !bad3};
      },
      config.exec);

  EliminationReport r;
  r.geometry = Geometry::sphere;
  r.method = Method::monte_carlo;
  r.protocol = p.name();
  r.n = n;
  r.k = params.k;
  r.kappa = params.kappa;
  r.c1 = c1;
  r.d1 = params.d1;
  r.snap_radius = radius;
  r.delta = params.delta;
  r.snapped_party = snapped;
  r.chosen_message = m1;
  r.good_count = good_cells;
  r.class_size = A.size();
  r.measure_good = static_cast<double>(good_hits) / trials;
  r.measure_A = static_cast<double>(class_mass[m1]) / trials;
  r.markov_floor = 1.0 - 1.0 / params.delta;
  r.pigeonhole_floor = std::ldexp(r.measure_good, -static_cast<int>(c1));
  r.markov_ok = r.measure_good >= r.markov_floor;
  r.pigeonhole_ok = (class_mass[m1] << c1) >= good_hits;
  r.eps_in = eps;
  r.eps_in_half_width = eps_hw;
  r.eps_out = static_cast<double>(counts[0]) / trials;
  r.eps_out_half_width = binomial_half_width(counts[0], config.trials);
  r.bad1 = static_cast<double>(counts[1]) / trials;
  r.bad2 = static_cast<double>(counts[2]) / trials;
  r.bad3 = static_cast<double>(counts[3]) / trials;
  r.bad_half_width = std::max({binomial_half_width(counts[1], config.trials),
                               binomial_half_width(counts[2], config.trials),
                               binomial_half_width(counts[3], config.trials)});
  r.union_violations = counts[4];
  r.bound_rhs = (1.0 + 1.0 / static_cast<double>(params.k)) * eps +
                1.0 / (16.0 * static_cast<double>(params.k));
  r.rounds_in = p.rounds();
  r.rounds_out = q.rounds();
  r.hypothesis_holds = params.hypothesis_holds(eps);
  r.bound_holds = r.eps_out <= r.bound_rhs + r.eps_out_half_width;
  if (!r.hypothesis_holds) r.note = "hypothesis vacuous at this scale";
  return {std::move(q), std::move(r), std::move(snap_table)};
}

}  // namespace ghdlab
