#include "ghdlab/evaluation.hpp"

#include <bit>
#include <numeric>

namespace ghdlab {

const char* to_string(Convention c) {
  return c == Convention::promise_only ? "promise-only" : "sign-of-inner-product";
}

const char* to_string(Method m) { return m == Method::exhaustive ? "exhaustive" : "monte-carlo"; }

Convention convention_from_string(std::string_view s) {
  if (s == "promise-only" || s == "promise") return Convention::promise_only;
  if (s == "sign-of-inner-product" || s == "sign") return Convention::sign_of_inner_product;
  throw std::invalid_argument("unknown error convention '" + std::string(s) + "'");
}

Rational Rational::reduced(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return {0, 1};
  const std::uint64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

double binomial_half_width(std::uint64_t hits, std::uint64_t trials) {
  if (trials == 0) return 1.0;
  const double t = static_cast<double>(trials);
  if (hits == 0 || hits == trials) return 3.0 / t;
  const double p = static_cast<double>(hits) / t;
  return kConfidence99 * std::sqrt(p * (1.0 - p) / t);
}

namespace {

void check_cap(std::size_t n, std::size_t max_n) {
  if (n > max_n) {
    throw EnumerationCapExceeded("exhaustive evaluation of n=" + std::to_string(n) +
                                 " exceeds the cap n<=" + std::to_string(max_n) +
                                 "; use Monte Carlo evaluation");
  }
}

void require_promise(Convention convention, const std::optional<CubePromise>& promise,
                     std::size_t n) {
  if (convention == Convention::promise_only && !promise) {
    throw std::invalid_argument("promise-only convention needs a promise");
  }
  if (promise && promise->n != n) throw std::invalid_argument("promise dimension mismatch");
}

// Truth label of a pair at distance d, or -1 if it does not count.
int truth_at(std::size_t d, std::size_t n, Convention convention,
             const std::optional<CubePromise>& promise) {
  if (convention == Convention::sign_of_inner_product) return cube_sign_label(d, n);
  const Label l = ghd_label(d, *promise);
  return l == Label::outside_promise ? -1 : static_cast<int>(l);
}

ErrorReport finish(std::string name, std::array<std::uint64_t, 2> counts, Convention convention,
                   std::size_t max_cost, std::size_t rounds) {
  ErrorReport r;
  r.protocol = std::move(name);
  r.convention = convention;
  r.method = Method::exhaustive;
  r.counted = counts[0];
  r.errors = counts[1];
  r.exact = Rational::reduced(counts[1], counts[0]);
  r.error_probability = r.exact->value();
  r.max_cost = max_cost;
  r.rounds = rounds;
  if (rounds == 0) r.note = "0-round protocol: Bob outputs";
  return r;
}

}  // namespace

ErrorReport evaluate_error_exhaustive(const TableProtocol& p, std::size_t n, Convention convention,
                                      std::optional<CubePromise> promise, Exec exec,
                                      std::size_t max_n) {
  check_cap(n, max_n);
  require_promise(convention, promise, n);
  if (p.domain_size() != (1ULL << n)) {
    throw std::invalid_argument("table protocol domain is not {0,1}^" + std::to_string(n));
  }
  const std::uint64_t mask = (1ULL << n) - 1;
  const auto counts = tally_index<2>(
      1ULL << (2 * n),
      [&](std::uint64_t i) -> std::array<std::uint64_t, 2> {
        const std::uint64_t x = i >> n;
        const std::uint64_t y = i & mask;
        const int truth = truth_at(static_cast<std::size_t>(std::popcount(x ^ y)), n, convention,
                                   promise);
        if (truth < 0) return {0, 0};
        return {1, p.run(x, y) != truth ? 1ULL : 0ULL};
      },
      exec);
  return finish(p.name(), counts, convention, p.max_cost(), p.rounds());
}

ErrorReport evaluate_error_exhaustive(const Protocol<BitString>& p, std::size_t n,
                                      Convention convention, std::optional<CubePromise> promise,
                                      Exec exec, std::size_t max_n) {
  check_cap(n, max_n);
  require_promise(convention, promise, n);
  const std::uint64_t mask = (1ULL << n) - 1;
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;
  const auto counts = tally_index<2>(
      1ULL << (2 * n),
      [&](std::uint64_t i) -> std::array<std::uint64_t, 2> {
        const std::uint64_t xw = i >> n;
        const std::uint64_t yw = i & mask;
        const int truth = truth_at(static_cast<std::size_t>(std::popcount(xw ^ yw)), n,
                                   convention, promise);
        if (truth < 0) return {0, 0};
        try {
          const int out = p.output(BitString::from_word(xw, n), BitString::from_word(yw, n));
          return {1, out != truth ? 1ULL : 0ULL};
        } catch (const std::exception& e) {
          std::lock_guard lock(failure_mutex);
          if (!failed.exchange(true)) failure = e.what();
          return {0, 0};
        }
      },
      exec);
  if (failed) throw MalformedProtocol(failure);
  return finish(p.name(), counts, convention, p.max_cost(), p.rounds());
}

PairSampler<BitString> uniform_cube_pairs(std::size_t n, Convention convention,
                                          std::optional<CubePromise> promise) {
  require_promise(convention, promise, n);
  return [n, convention, promise](Rng& rng) {
    BitString x = sample_cube(n, rng);
    BitString y = sample_cube(n, rng);
    const int truth = truth_at(hamming_distance(x, y), n, convention, promise);
    return LabeledPair<BitString>{std::move(x), std::move(y), truth};
  };
}

PairSampler<SphereVector> haar_pairs(std::size_t n, Convention convention,
                                     std::optional<SpherePromise> promise) {
  if (convention == Convention::promise_only && !promise) {
    throw std::invalid_argument("promise-only convention needs a promise");
  }
  return [n, convention, promise](Rng& rng) {
    SphereVector x = sample_haar(n, rng);
    SphereVector y = sample_haar(n, rng);
    int truth = sgn(dot(x, y));
    if (convention == Convention::promise_only) {
      const Label l = ghs_label(x, y, *promise);
      truth = l == Label::outside_promise ? -1 : static_cast<int>(l);
    }
    return LabeledPair<SphereVector>{std::move(x), std::move(y), truth};
  };
}

PairSampler<BitString> gap_boundary_cube_pairs(std::size_t n, double gamma) {
  if (!(gamma > 0.0) || gamma > 0.5) throw std::invalid_argument("gamma must lie in (0, 1/2]");
  const auto near = static_cast<std::size_t>(std::llround((0.5 - gamma) * static_cast<double>(n)));
  const auto far = static_cast<std::size_t>(std::llround((0.5 + gamma) * static_cast<double>(n)));
  return [n, near, far](Rng& rng) {
    BitString x = sample_cube(n, rng);
    const std::size_t d = rng.coin() ? far : near;
    BitString y = flip_random_coordinates(x, d, rng);
    return LabeledPair<BitString>{std::move(x), std::move(y), cube_sign_label(d, n)};
  };
}

PairSampler<SphereVector> gap_boundary_sphere_pairs(std::size_t n, double gamma) {
  if (!(gamma > 0.0) || gamma > 1.0) throw std::invalid_argument("gamma must lie in (0, 1]");
  return [n, gamma](Rng& rng) {
    SphereVector x = sample_haar(n, rng);
    const double ip = rng.coin() ? -gamma : gamma;
    SphereVector y = sample_at_inner_product(x, ip, rng);
    return LabeledPair<SphereVector>{std::move(x), std::move(y), sgn(ip)};
  };
}

}  // namespace ghdlab
