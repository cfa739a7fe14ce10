#include "ghdlab/concentration.hpp"

#include <algorithm>
#include <bit>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ghdlab/evaluation.hpp"
#include "ghdlab/instances.hpp"
#include "ghdlab/kernels.hpp"

namespace ghdlab {

namespace mp = boost::multiprecision;
using Big = mp::cpp_int;
using Float50 = mp::cpp_bin_float_50;

std::optional<double> BoundCheck::param(const std::string& key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return std::nullopt;
}

bool recompute_verdict(const BoundCheck& c) {
  return c.violations == 0 && c.estimate <= c.analytic_bound + c.half_width;
}

namespace {

BoundCheck monte_carlo_check(std::string name, std::vector<std::pair<std::string, double>> params,
                             double bound, std::uint64_t hits, std::uint64_t trials,
                             std::uint64_t violations = 0) {
  BoundCheck c;
  c.name = std::move(name);
  c.params = std::move(params);
  c.analytic_bound = bound;
  c.trials = trials;
  c.estimate = trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials);
  c.half_width = binomial_half_width(hits, trials);
  c.violations = violations;
  c.verdict = recompute_verdict(c);
  return c;
}

// Exact check: value and bound compared at 50 digits.
BoundCheck exact_check(std::string name, std::vector<std::pair<std::string, double>> params,
                       const Float50& bound, const Float50& value) {
  BoundCheck c;
  c.name = std::move(name);
  c.params = std::move(params);
  c.analytic_bound = static_cast<double>(bound);
  c.estimate = static_cast<double>(value);
  c.exact = true;
  c.verdict = value <= bound;
  return c;
}

void require_trials(std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("Monte Carlo checks need trials > 0");
}

std::vector<Big> binomial_row(std::size_t m) {
  std::vector<Big> row(m + 1);
  row[0] = 1;
  for (std::size_t j = 0; j < m; ++j) row[j + 1] = row[j] * (m - j) / (j + 1);
  return row;
}

}  // namespace

// ---- caps ----

double cap_bound(double gamma, std::size_t n) {
  return std::exp(-gamma * gamma * static_cast<double>(n) / 2.0);
}

double cap_measure(double gamma, std::size_t n) {
  if (n < 2) throw std::invalid_argument("cap measure needs n >= 2");
  if (gamma >= 1.0) return 0.0;
  if (gamma <= -1.0) return 1.0;
  const double nd = static_cast<double>(n);
  const double tail = 0.5 * boost::math::ibeta((nd - 1.0) / 2.0, 0.5, 1.0 - gamma * gamma);
  return gamma >= 0.0 ? tail : 1.0 - tail;
}

BoundCheck estimate_cap(const SphereVector& x, double gamma, std::uint64_t trials,
                        const RandomSource& source, Exec exec) {
  if (!(gamma > 0.0)) throw std::invalid_argument("cap check needs gamma > 0");
  require_trials(trials);
  const std::size_t n = x.size();
  const auto hits = count_if_index(
      trials,
      [&](std::uint64_t i) {
        Rng rng = source.substream(i).rng();
        return dot(x, sample_haar(n, rng)) >= gamma;
      },
      exec);
  return monte_carlo_check("cap", {{"n", static_cast<double>(n)}, {"gamma", gamma}},
                           cap_bound(gamma, n), hits, trials);
}

// ---- sphere concentration ----

SphereSet SphereSet::everything(std::size_t n) {
  SphereSet s;
  s.kind = Kind::everything;
  s.dimension = n;
  return s;
}

SphereSet SphereSet::cap(const SphereVector& center, double level) {
  if (level < -1.0 || level > 1.0) throw std::invalid_argument("cap level outside [-1, 1]");
  SphereSet s;
  s.kind = Kind::cap;
  s.center = center;
  s.level = level;
  s.dimension = center.size();
  return s;
}

SphereSet SphereSet::hemisphere(std::size_t n) { return cap(SphereVector::basis(n, 0), 0.0); }

SphereSet SphereSet::finite(std::vector<SphereVector> points) {
  if (points.empty()) throw std::invalid_argument("finite set needs at least one point");
  SphereSet s;
  s.kind = Kind::finite;
  s.dimension = points.front().size();
  for (const auto& p : points) {
    if (p.size() != s.dimension) throw std::invalid_argument("finite set mixes dimensions");
  }
  s.points = std::move(points);
  return s;
}

bool SphereSet::contains(const SphereVector& x) const {
  switch (kind) {
    case Kind::everything: return true;
    case Kind::cap: return dot(x, center) >= level;
    case Kind::finite:
      return std::any_of(points.begin(), points.end(), [&](const SphereVector& p) { return p == x; });
  }
  return false;
}

double SphereSet::distance_to(const SphereVector& x) const {
  switch (kind) {
    case Kind::everything: return 0.0;
    case Kind::cap: {
      // Geodesic gap beyond the cap's angular radius, as a chord length.
      const double theta = std::acos(std::clamp(dot(x, center), -1.0, 1.0));
      const double phi = std::acos(level);
      return theta <= phi ? 0.0 : 2.0 * std::sin((theta - phi) / 2.0);
    }
    case Kind::finite: {
      double best = 2.0;
      for (const auto& p : points) best = std::min(best, distance(x, p));
      return best;
    }
  }
  return 0.0;
}

std::optional<double> SphereSet::measure() const {
  switch (kind) {
    case Kind::everything: return 1.0;
    case Kind::cap: return cap_measure(level, dimension);
    case Kind::finite: return 0.0;
  }
  return std::nullopt;
}

double sphere_concentration_bound(double t, std::size_t n) {
  return 4.0 * std::exp(-t * t * static_cast<double>(n) / 4.0);
}

BoundCheck sphere_concentration_check(const SphereSet& A, double t, std::uint64_t trials,
                                      const RandomSource& source, Exec exec) {
  if (t < 0.0) throw std::invalid_argument("t must be nonnegative");
  require_trials(trials);
  const std::size_t n = A.dimension;
  const auto hits = count_if_index(
      trials,
      [&](std::uint64_t i) {
        Rng rng = source.substream(i).rng();
        const SphereVector x = sample_haar(n, rng);
        const SphereVector x2 = sample_haar(n, rng);
        return A.contains(x) && A.distance_to(x2) > t;
      },
      exec);
  const char* kind = A.kind == SphereSet::Kind::cap ? "cap" : A.kind == SphereSet::Kind::finite ? "finite" : "everything";
  auto c = monte_carlo_check("sphere-concentration",
                             {{"n", static_cast<double>(n)}, {"t", t}, {"level", A.level}},
                             sphere_concentration_bound(t, n), hits, trials);
  c.name += std::string("/") + kind;
  return c;
}

// ---- Hamming caps ----

double hamming_cap_bound(double c) { return std::exp(-2.0 * c * c); }

long long hamming_cap_radius(std::size_t n, double c) {
  const double r = static_cast<double>(n) / 2.0 - c * std::sqrt(static_cast<double>(n));
  return static_cast<long long>(std::floor(r + 1e-9));
}

namespace {

BoundCheck hamming_cap_from_row(std::size_t n, double c, const std::vector<Big>& prefix) {
  if (!(c > 0.0)) throw std::invalid_argument("Hamming cap needs c > 0");
  const long long r = hamming_cap_radius(n, c);
  const Big count = r < 0 ? Big(0) : prefix[static_cast<std::size_t>(std::min<long long>(r, static_cast<long long>(n)))];
  const Float50 value = Float50(count) / mp::pow(Float50(2), static_cast<int>(n));
  const Float50 bound = mp::exp(Float50(-2) * Float50(c) * Float50(c));
  return exact_check("hamming-cap", {{"n", static_cast<double>(n)}, {"c", c}}, bound, value);
}

std::vector<Big> binomial_prefix(std::size_t n) {
  auto row = binomial_row(n);
  for (std::size_t j = 1; j < row.size(); ++j) row[j] += row[j - 1];
  return row;
}

}  // namespace

BoundCheck hamming_cap_check(std::size_t n, double c) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  return hamming_cap_from_row(n, c, binomial_prefix(n));
}

std::vector<BoundCheck> hamming_cap_sweep(std::size_t max_n, const std::vector<double>& cs) {
  std::vector<BoundCheck> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto prefix = binomial_prefix(n);
    for (double c : cs) out.push_back(hamming_cap_from_row(n, c, prefix));
  }
  return out;
}

// ---- Hamming concentration ----

HammingSet HammingSet::from_table(std::size_t n, std::vector<std::uint8_t> member) {
  if (n == 0 || n > kHammingExhaustiveMaxN) {
    throw std::invalid_argument("explicit Hamming sets need 1 <= n <= 20");
  }
  if (member.size() != (1ULL << n)) throw std::invalid_argument("membership table must have 2^n entries");
  HammingSet s;
  s.kind = Kind::explicit_table;
  s.n = n;
  s.member = std::move(member);
  return s;
}

HammingSet HammingSet::everything(std::size_t n) {
  return from_table(n, std::vector<std::uint8_t>(1ULL << n, 1));
}

HammingSet HammingSet::weight_ball(std::size_t n, std::size_t radius) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  HammingSet s;
  s.kind = Kind::weight_ball;
  s.n = n;
  s.radius = std::min(radius, n);
  return s;
}

HammingSet HammingSet::majority_zero(std::size_t n) {
  std::vector<std::uint8_t> m(1ULL << n);
  for (std::uint64_t x = 0; x < m.size(); ++x) m[x] = 2 * static_cast<std::size_t>(std::popcount(x)) < n;
  return from_table(n, std::move(m));
}

HammingSet HammingSet::random(std::size_t n, double density, Rng& rng) {
  std::vector<std::uint8_t> m(1ULL << n);
  for (auto& v : m) v = rng.uniform() < density ? 1 : 0;
  return from_table(n, std::move(m));
}

double hamming_concentration_bound(double c) { return std::exp(-c * c); }

BoundCheck hamming_concentration_check(const HammingSet& A, double c, std::uint64_t trials,
                                       const RandomSource& source, Exec exec) {
  if (c < 0.0) throw std::invalid_argument("c must be nonnegative");
  const std::size_t n = A.n;
  const double reach = c * std::sqrt(static_cast<double>(n));
  std::vector<std::pair<std::string, double>> params{{"n", static_cast<double>(n)}, {"c", c}};
  const Float50 bound = mp::exp(-Float50(c) * Float50(c));
  if (A.kind == HammingSet::Kind::explicit_table) {
    const auto dist = kernels::distance_to_set(n, A.member, exec);
    std::uint64_t in = 0;
    std::uint64_t far = 0;
    for (std::uint64_t x = 0; x < dist.size(); ++x) {
      in += A.member[x] != 0;
      // Unreachable (empty A) counts as far.
      far += dist[x] == kernels::kUnreachable || static_cast<double>(dist[x]) > reach + 1e-9;
    }
    const Float50 value = Float50(in) * Float50(far) / mp::pow(Float50(2), static_cast<int>(2 * n));
    auto r = exact_check("hamming-concentration/explicit", std::move(params), bound, value);
    r.params.emplace_back("density", static_cast<double>(in) / static_cast<double>(dist.size()));
    return r;
  }
  params.emplace_back("radius", static_cast<double>(A.radius));
  // Weight ball: d(x, A) = max(0, |x| - radius).
  const long long far_from = static_cast<long long>(A.radius) +
                             static_cast<long long>(std::floor(reach + 1e-9)) + 1;
  if (trials == 0) {
    const auto prefix = binomial_prefix(n);
    const Big in = prefix[A.radius];
    const Big far = far_from > static_cast<long long>(n)
                        ? Big(0)
                        : prefix[n] - prefix[static_cast<std::size_t>(far_from - 1)];
    const Float50 value = Float50(in) * Float50(far) / mp::pow(Float50(2), static_cast<int>(2 * n));
    return exact_check("hamming-concentration/ball", std::move(params), bound, value);
  }
  const auto hits = count_if_index(
      trials,
      [&](std::uint64_t i) {
        Rng rng = source.substream(i).rng();
        auto weight = [&] {
          std::size_t w = 0;
          std::size_t left = n;
          while (left >= 64) {
            w += static_cast<std::size_t>(std::popcount(rng()));
            left -= 64;
          }
          if (left > 0) w += static_cast<std::size_t>(std::popcount(rng() >> (64 - left)));
          return w;
        };
        const std::size_t wx = weight();
        const std::size_t wx2 = weight();
        return wx <= A.radius && static_cast<long long>(wx2) >= far_from;
      },
      exec);
  auto r = monte_carlo_check("hamming-concentration/ball", std::move(params),
                             static_cast<double>(bound), hits, trials);
  return r;
}

// ---- inner products ----

double log_ball_volume_ratio(std::size_t n) {
  if (n < 2) throw std::invalid_argument("ball volume ratio needs n >= 2");
  const double nd = static_cast<double>(n);
  // omega_m = pi^{m/2} / Gamma(m/2 + 1)
  return -0.5 * std::log(std::numbers::pi) + std::lgamma(nd / 2.0 + 1.0) -
         std::lgamma((nd - 1.0) / 2.0 + 1.0);
}

double inner_product_density(std::size_t n, double t) {
  if (n < 2) throw std::invalid_argument("inner-product density needs n >= 2");
  if (std::abs(t) > 1.0) return 0.0;
  const double nd = static_cast<double>(n);
  const double log_c = std::log((nd - 1.0) / nd) + log_ball_volume_ratio(n);
  const double s = 1.0 - t * t;
  if (s <= 0.0) {
    if (n == 3) return std::exp(log_c);
    return n > 3 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::exp(log_c + (nd - 3.0) / 2.0 * std::log(s));
}

double near_zero_mass_quadrature(double alpha, std::size_t n) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
  const double top = std::min(alpha, 1.0);
  if (top == 0.0) return 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate([n](double t) { return inner_product_density(n, t); }, 0.0, top);
}

double near_zero_mass_beta(double alpha, std::size_t n) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  const double top = std::min(alpha, 1.0);
  if (top == 0.0) return 0.0;
  return 0.5 * boost::math::ibeta(0.5, (static_cast<double>(n) - 1.0) / 2.0, top * top);
}

NearZeroMass near_zero_mass_check(double alpha, std::size_t n, std::uint64_t trials,
                                  const RandomSource& source, Exec exec) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
  require_trials(trials);
  const double bound = alpha * std::sqrt(static_cast<double>(n));
  std::vector<std::pair<std::string, double>> params{{"n", static_cast<double>(n)}, {"alpha", alpha}};
  const auto hits = count_if_index(
      trials,
      [&](std::uint64_t i) {
        Rng rng = source.substream(i).rng();
        const double ip = dot(sample_haar(n, rng), sample_haar(n, rng));
        return ip >= 0.0 && ip <= alpha;
      },
      exec);
  NearZeroMass out;
  out.monte_carlo = monte_carlo_check("near-zero-mass", params, bound, hits, trials);
  out.quadrature.name = "near-zero-mass/quadrature";
  out.quadrature.params = params;
  out.quadrature.analytic_bound = bound;
  out.quadrature.estimate = near_zero_mass_quadrature(alpha, n);
  out.quadrature.exact = true;
  out.quadrature.verdict = recompute_verdict(out.quadrature);
  return out;
}

BoundCheck perturbed_sign_flip_check(double d, double alpha, std::size_t n, double d1,
                                     std::uint64_t trials, const RandomSource& source, Exec exec) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (!(alpha > 0.0) || alpha > 1.0 / (4.0 * std::sqrt(static_cast<double>(n))) * (1.0 + 1e-12)) {
    throw std::invalid_argument("alpha must lie in (0, 1/(4 sqrt(n))]");
  }
  if (d < 0.0 || d > d1 || d1 > 1.0) throw std::invalid_argument("need 0 <= d <= d1 <= 1");
  require_trials(trials);
  const double x1 = 1.0 - d * d / 2.0;
  const double x2 = -std::sqrt(std::max(0.0, d * d - d * d * d * d / 4.0));
  const auto counts = tally_index<2>(
      trials,
      [&](std::uint64_t i) -> std::array<std::uint64_t, 2> {
        Rng rng = source.substream(i).rng();
        const SphereVector y = sample_haar(n, rng);
        const bool event = y[0] >= alpha && x1 * y[0] + x2 * y[1] < 0.0;
        const bool implied = d > 0.0 && y[1] > alpha / (2.0 * d);
        return {event, event && !implied};
      },
      exec);
  const double bound = std::exp(-alpha * alpha * static_cast<double>(n) / (8.0 * d1 * d1));
  return monte_carlo_check(
      "perturbed-sign-flip",
      {{"n", static_cast<double>(n)}, {"d", d}, {"d1", d1}, {"alpha", alpha}}, bound, counts[0],
      trials, counts[1]);
}

// ---- hypergeometric ----

namespace {

void check_weights(std::size_t n, std::size_t wy, std::size_t wx, double a) {
  if (n == 0 || wy > n || wx > n) throw std::invalid_argument("weights must lie in [0, n]");
  if (a < 0.0) throw std::invalid_argument("a must be nonnegative");
}

double hypergeometric_bound(std::size_t wx, double a) {
  if (a == 0.0) return 1.0;
  if (wx == 0) return 0.0;
  return std::exp(-2.0 * a * a / static_cast<double>(wx));
}

// Largest j with j <= wx wy / n - a, or -1.
long long tail_cut(std::size_t n, std::size_t wy, std::size_t wx, double a) {
  const double mean = static_cast<double>(wx) * static_cast<double>(wy) / static_cast<double>(n);
  return static_cast<long long>(std::floor(mean - a + 1e-9));
}

}  // namespace

BoundCheck hypergeometric_tail_check(std::size_t n, std::size_t wy, std::size_t wx, double a) {
  check_weights(n, wy, wx, a);
  const long long cut = tail_cut(n, wy, wx, a);
  const auto in = binomial_row(wy);
  const auto out = binomial_row(n - wy);
  const std::size_t lo = wx > n - wy ? wx - (n - wy) : 0;
  Big favorable = 0;
  for (long long j = static_cast<long long>(lo); j <= cut && j <= static_cast<long long>(std::min(wx, wy)); ++j) {
    const auto u = static_cast<std::size_t>(j);
    favorable += in[u] * out[wx - u];
  }
  const Big total = binomial_row(n)[wx];
  const Float50 value = Float50(favorable) / Float50(total);
  Float50 bound = 1;
  if (a > 0.0) bound = wx == 0 ? Float50(0) : mp::exp(Float50(-2) * Float50(a) * Float50(a) / Float50(wx));
  return exact_check("hypergeometric-tail",
                     {{"n", static_cast<double>(n)},
                      {"weight_y", static_cast<double>(wy)},
                      {"weight_x", static_cast<double>(wx)},
                      {"a", a}},
                     bound, value);
}

BoundCheck hypergeometric_tail_monte_carlo(std::size_t n, std::size_t wy, std::size_t wx, double a,
                                           std::uint64_t trials, const RandomSource& source,
                                           Exec exec) {
  check_weights(n, wy, wx, a);
  require_trials(trials);
  const long long cut = tail_cut(n, wy, wx, a);
  const auto hits = count_if_index(
      trials,
      [&](std::uint64_t i) {
        Rng rng = source.substream(i).rng();
        // Y = {0, ..., wy-1}; X = first wx slots of a partial shuffle.
        std::vector<std::uint32_t> perm(n);
        for (std::size_t j = 0; j < n; ++j) perm[j] = static_cast<std::uint32_t>(j);
        long long meet = 0;
        for (std::size_t j = 0; j < wx; ++j) {
          const std::size_t pick = j + static_cast<std::size_t>(rng.below(n - j));
          std::swap(perm[j], perm[pick]);
          meet += perm[j] < wy;
        }
        return meet <= cut;
      },
      exec);
  return monte_carlo_check("hypergeometric-tail",
                           {{"n", static_cast<double>(n)},
                            {"weight_y", static_cast<double>(wy)},
                            {"weight_x", static_cast<double>(wx)},
                            {"a", a}},
                           hypergeometric_bound(wx, a), hits, trials);
}

// ---- sweep ----

std::vector<BoundCheck> default_sweep(const SweepOptions& o) {
  std::vector<BoundCheck> out;
  std::uint64_t stream = 0;
  auto next = [&] { return o.source.substream(stream++); };
  const std::uint64_t T = o.trials;

  for (auto [n, gamma] : std::vector<std::pair<std::size_t, double>>{
           {10, 0.1}, {10, 0.5}, {50, 0.3}, {100, 0.2}, {100, 0.5}}) {
    out.push_back(estimate_cap(SphereVector::basis(n, 0), gamma, T, next(), o.exec));
  }

  for (std::size_t n : {20, 100}) {
    for (double t : {0.0, 0.1, 0.3, 0.5}) {
      out.push_back(sphere_concentration_check(SphereSet::hemisphere(n), t, T, next(), o.exec));
    }
  }
  // A of measure below and above 1/2.
  for (double level : {0.2, -0.2}) {
    for (double t : {0.2, 0.4}) {
      out.push_back(sphere_concentration_check(SphereSet::cap(SphereVector::basis(50, 0), level), t,
                                               T, next(), o.exec));
    }
  }
  {
    Rng rng = next().rng();
    std::vector<SphereVector> pts;
    for (int i = 0; i < 16; ++i) pts.push_back(sample_haar(10, rng));
    const auto A = SphereSet::finite(std::move(pts));
    for (double t : {0.8, 1.0}) out.push_back(sphere_concentration_check(A, t, T, next(), o.exec));
  }

  for (auto& c : hamming_cap_sweep(o.exact_max_n, {0.25, 0.5, 1.0, 1.5, 2.0, 3.0})) {
    out.push_back(std::move(c));
  }

  for (double c : {0.5, 1.0}) {
    out.push_back(hamming_concentration_check(HammingSet::majority_zero(16), c, 0, {}, o.exec));
  }
  {
    Rng rng = next().rng();
    const auto A = HammingSet::random(16, 1.0 / 16.0, rng);
    for (double c : {1.0, 2.0}) out.push_back(hamming_concentration_check(A, c, 0, {}, o.exec));
  }
  for (std::size_t n : {100, 1000}) {
    for (double c : {0.5, 1.0, 2.0}) {
      out.push_back(hamming_concentration_check(HammingSet::weight_ball(n, n / 2), c));
    }
  }
  out.push_back(hamming_concentration_check(HammingSet::weight_ball(64, 30), 0.5, T, next(), o.exec));

  for (auto [alpha, n] : std::vector<std::pair<double, std::size_t>>{
           {0.05, 100}, {0.01, 400}, {0.1, 10}, {1.0, 4}, {0.0, 50}}) {
    auto r = near_zero_mass_check(alpha, n, T, next(), o.exec);
    out.push_back(std::move(r.monte_carlo));
    out.push_back(std::move(r.quadrature));
  }

  struct Flip {
    std::size_t n;
    double d1, d, alpha;
  };
  for (const Flip& f : {Flip{64, 0.25, 0.25, 1.0 / 32}, Flip{64, 0.25, 0.1, 1.0 / 32},
                        Flip{16, 0.5, 0.5, 1.0 / 16}, Flip{256, 0.3, 0.3, 1.0 / 64},
                        Flip{64, 0.25, 0.0, 1.0 / 32}}) {
    out.push_back(perturbed_sign_flip_check(f.d, f.alpha, f.n, f.d1, T, next(), o.exec));
  }

  for (std::size_t n : {20, 50, 100, 200, 500, 1000}) {
    if (n > o.exact_max_n) continue;
    const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    for (std::size_t wy : {n / 2 - std::max<std::size_t>(1, root / 8), n / 2, (45 * n) / 100}) {
      for (std::size_t wx : {std::size_t{1}, root, n / 10, n / 2}) {
        for (double a : {0.0, 0.5, 1.0, 2.0, 3.0, std::sqrt(static_cast<double>(wx))}) {
          out.push_back(hypergeometric_tail_check(n, wy, wx, a));
        }
      }
    }
  }
  out.push_back(hypergeometric_tail_monte_carlo(100, 45, 10, 3.0, T, next(), o.exec));
  out.push_back(hypergeometric_tail_monte_carlo(400, 190, 20, 2.0, T, next(), o.exec));
  return out;
}

}  // namespace ghdlab
