#include "ghdlab/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ghdlab/evaluation.hpp"
#include "ghdlab/instances.hpp"
#include "ghdlab/protocols.hpp"

namespace ghdlab {

SphereVector embed_cube_to_sphere(const BitString& x) {
  const double s = 1.0 / std::sqrt(static_cast<double>(x.size()));
  std::vector<double> c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i] ? -s : s;
  return SphereVector::normalized(std::move(c));
}

double collision_probability(double inner_product) {
  if (std::isnan(inner_product) || std::abs(inner_product) > 1.0 + 1e-9) {
    throw std::invalid_argument("inner product " + std::to_string(inner_product) +
                                " outside [-1, 1]");
  }
  const double ip = std::clamp(inner_product, -1.0, 1.0);
  if (ip == 1.0) return 0.0;
  if (ip == -1.0) return 1.0;
  return std::acos(ip) / std::numbers::pi;
}

HyperplaneSketch::HyperplaneSketch(const HyperplaneSketchSeed& seed, std::size_t dimension,
                                   Exec exec)
    : seed_(seed), dimension_(dimension), normals_(seed.n_out * dimension) {
  if (dimension == 0) throw std::invalid_argument("sketch dimension must be positive");
  const RandomSource source = seed.source();
  map_index<char>(
      seed.n_out,
      [&](std::uint64_t i) {
        Rng rng = source.substream(i).rng();
        double* w = normals_.data() + i * dimension_;
        for (std::size_t j = 0; j < dimension_; ++j) w[j] = rng.normal();
        return char{0};
      },
      exec);
}

BitString HyperplaneSketch::apply(const SphereVector& x, Exec exec) const {
  if (x.size() != dimension_) {
    throw std::invalid_argument("sketch dimension " + std::to_string(dimension_) +
                                " does not match input dimension " + std::to_string(x.size()));
  }
  const auto bits = map_index<char>(
      seed_.n_out, [&](std::uint64_t i) { return static_cast<char>(sgn(dot(normal(i), x.coords()))); },
      exec);
  BitString out(seed_.n_out);
  for (std::size_t i = 0; i < bits.size(); ++i) out.set(i, bits[i] != 0);
  return out;
}

BitString sketch_sphere_to_cube(const SphereVector& x, const HyperplaneSketchSeed& seed,
                                Exec exec) {
  const RandomSource source = seed.source();
  const std::size_t dim = x.size();
  const auto bits = map_index<char>(
      seed.n_out,
      [&](std::uint64_t i) {
        Rng rng = source.substream(i).rng();
        double s = 0.0;
        for (std::size_t j = 0; j < dim; ++j) s += rng.normal() * x[j];
        return static_cast<char>(sgn(s));
      },
      exec);
  BitString out(seed.n_out);
  for (std::size_t i = 0; i < bits.size(); ++i) out.set(i, bits[i] != 0);
  return out;
}

namespace {

struct SketchTrial {
  std::size_t differing = 0;
  bool correct_side = false;
};

GapTransferSide summarize_side(double ip, std::size_t n_out, const std::vector<SketchTrial>& all,
                               std::size_t parity) {
  GapTransferSide side;
  side.inner_product = ip;
  side.closed_form = collision_probability(ip);
  double sum = 0.0;
  double sum2 = 0.0;
  std::uint64_t correct = 0;
  for (std::size_t i = parity; i < all.size(); i += 2) {
    const double off = static_cast<double>(all[i].differing) - static_cast<double>(n_out) / 2.0;
    sum += off;
    sum2 += off * off;
    if (all[i].correct_side) ++correct;
    ++side.trials;
  }
  if (side.trials == 0) return side;
  const double t = static_cast<double>(side.trials);
  side.mean_offset = sum / t;
  side.sd_offset = side.trials > 1 ? std::sqrt(std::max(0.0, (sum2 - sum * sum / t) / (t - 1))) : 0.0;
  side.empirical_rate = 0.5 + side.mean_offset / static_cast<double>(n_out);
  side.abs_err = std::abs(side.empirical_rate - side.closed_form);
  const double p = side.closed_form;
  side.sigma = std::sqrt(p * (1.0 - p) / (t * static_cast<double>(n_out)));
  side.correct_side = static_cast<double>(correct) / t;
  side.correct_side_half_width = binomial_half_width(correct, side.trials);
  return side;
}

}  // namespace

GapTransferReport gap_transfer_check(double gamma, std::size_t n_out, std::uint64_t trials,
                                     const RandomSource& source, double c0, std::size_t dimension,
                                     Exec exec) {
  if (!(gamma >= 0.0) || gamma >= 1.0) throw std::invalid_argument("gamma must lie in [0, 1)");
  if (n_out == 0 || trials == 0) throw std::invalid_argument("n_out and trials must be positive");
  if (!(c0 > 0.0)) throw std::invalid_argument("C0 must be positive");
  if (dimension < 2) throw std::invalid_argument("sketch dimension must be at least 2");
  GapTransferReport r;
  r.gamma = gamma;
  r.n_out = n_out;
  r.dimension = dimension;
  r.c0 = c0;
  r.cube_gap = static_cast<double>(n_out) * gamma / c0;
  const double half = static_cast<double>(n_out) / 2.0;
  const double g = r.cube_gap;

  // Even trials at +gamma, odd trials at -gamma.
  const auto results = map_index<SketchTrial>(
      2 * trials,
      [&](std::uint64_t i) {
        Rng rng = source.substream(i).rng();
        const double ip = i % 2 == 0 ? gamma : -gamma;
        const SphereVector x = sample_haar(dimension, rng);
        const SphereVector y = sample_at_inner_product(x, ip, rng);
        std::vector<double> w(dimension);
        std::size_t differing = 0;
        for (std::size_t j = 0; j < n_out; ++j) {
          for (double& c : w) c = rng.normal();
          if (sgn(dot(w, x.coords())) != sgn(dot(w, y.coords()))) ++differing;
        }
        const double d = static_cast<double>(differing);
        const bool ok = i % 2 == 0 ? d <= half - g : d >= half + g;
        return SketchTrial{differing, ok};
      },
      exec);

  r.positive = summarize_side(gamma, n_out, results, 0);
  r.negative = summarize_side(-gamma, n_out, results, 1);
  std::uint64_t correct = 0;
  for (const auto& t : results) correct += t.correct_side ? 1 : 0;
  const std::uint64_t failures = results.size() - correct;
  r.failure_rate = static_cast<double>(failures) / static_cast<double>(results.size());
  r.failure_half_width = binomial_half_width(failures, results.size());
  r.taylor_residual =
      std::abs(std::acos(gamma) - (std::numbers::pi / 2 - gamma - gamma * gamma * gamma / 6));
  r.linearized_bias = 0.5 - std::acos(gamma) / std::numbers::pi;
  r.linearized_bias_taylor = gamma / std::numbers::pi + gamma * gamma * gamma / (6 * std::numbers::pi);
  return r;
}

C0Calibration calibrate_c0(std::size_t n, double g, const std::vector<double>& c0_grid,
                           std::uint64_t trials, const RandomSource& source, double target,
                           std::size_t dimension, Exec exec) {
  if (n == 0 || !(g > 0.0)) throw std::invalid_argument("need n >= 1 and g > 0");
  if (dimension < 2) throw std::invalid_argument("sketch dimension must be at least 2");
  C0Calibration cal;
  cal.n = n;
  cal.g = g;
  cal.target = target;
  const auto lifted = lift_sphere_to_cube(protocols::trivial_cube(n), n, dimension);
  const double half = static_cast<double>(n) / 2.0;
  for (std::size_t row = 0; row < c0_grid.size(); ++row) {
    const double c0 = c0_grid[row];
    const double gamma = c0 * g / static_cast<double>(n);
    if (!(gamma > 0.0) || gamma >= 1.0) {
      throw std::invalid_argument("C0=" + std::to_string(c0) + " gives gamma outside (0,1)");
    }
    const RandomSource row_source = source.substream(row);
    const auto counts = tally_index<2>(
        trials,
        [&](std::uint64_t i) -> std::array<std::uint64_t, 2> {
          const RandomSource coin = row_source.substream(2 * i);
          Rng rng = row_source.substream(2 * i + 1).rng();
          const double ip = rng.coin() ? -gamma : gamma;
          const SphereVector x = sample_haar(dimension, rng);
          const SphereVector y = sample_at_inner_product(x, ip, rng);
          const HyperplaneSketch sketch({coin.seed, coin.stream, n}, dimension, Exec::serial);
          const double d = static_cast<double>(
              hamming_distance(sketch.apply(x, Exec::serial), sketch.apply(y, Exec::serial)));
          const bool ok = ip > 0 ? d <= half - g : d >= half + g;
          const int out = lifted.instantiate(coin).output(x, y);
          return {ok ? 0ULL : 1ULL, out != sgn(ip) ? 1ULL : 0ULL};
        },
        exec);
    C0CalibrationRow r;
    r.c0 = c0;
    r.gamma = gamma;
    r.failure_rate = static_cast<double>(counts[0]) / static_cast<double>(trials);
    r.failure_half_width = binomial_half_width(counts[0], trials);
    r.lifted_error = static_cast<double>(counts[1]) / static_cast<double>(trials);
    r.lifted_half_width = binomial_half_width(counts[1], trials);
    cal.rows.push_back(r);
  }
  cal.monotone = true;
  for (std::size_t i = 1; i < cal.rows.size(); ++i) {
    const auto& a = cal.rows[i - 1];
    const auto& b = cal.rows[i];
    if (b.c0 >= a.c0 &&
        b.failure_rate > a.failure_rate + a.failure_half_width + b.failure_half_width) {
      cal.monotone = false;
    }
  }
  for (const auto& r : cal.rows) {
    if (r.lifted_error + r.lifted_half_width <= target) {
      cal.chosen_c0 = r.c0;
      break;
    }
  }
  return cal;
}

Protocol<BitString> lift_cube_to_sphere(const Protocol<SphereVector>& sphere_protocol,
                                        std::size_t n) {
  auto embed = [n](const BitString& x) {
    if (x.size() != n) {
      throw std::invalid_argument("lifted protocol expects n=" + std::to_string(n) +
                                  ", got " + std::to_string(x.size()));
    }
    return embed_cube_to_sphere(x);
  };
  std::vector<Protocol<BitString>::Round> rounds;
  for (const auto& r : sphere_protocol.round_list()) {
    rounds.push_back({r.spec, [fn = r.message, embed](const BitString& own, const Transcript& t) {
                        return fn(embed(own), t);
                      }});
  }
  return Protocol<BitString>(
      "embed(" + sphere_protocol.name() + ")", std::move(rounds),
      [fn = sphere_protocol.output_fn(), embed](const BitString& own, const Transcript& t) {
        return fn(embed(own), t);
      },
      sphere_protocol.output_party());
}

PublicCoinProtocol<SphereVector> lift_sphere_to_cube(const Protocol<BitString>& cube_protocol,
                                                     std::size_t n, std::size_t dimension) {
  std::string name = "sketch(" + cube_protocol.name() + ")";
  return {name, cube_protocol.schedule(),
          [cube_protocol, n, dimension, name](const RandomSource& coin) {
            auto sketch = std::make_shared<const HyperplaneSketch>(
                HyperplaneSketchSeed{coin.seed, coin.stream, n}, dimension, Exec::serial);
            auto to_cube = [sketch](const SphereVector& v) { return sketch->apply(v, Exec::serial); };
            std::vector<Protocol<SphereVector>::Round> rounds;
            for (const auto& r : cube_protocol.round_list()) {
              rounds.push_back({r.spec, [fn = r.message, to_cube](const SphereVector& own,
                                                                   const Transcript& t) {
                                  return fn(to_cube(own), t);
                                }});
            }
            return Protocol<SphereVector>(
                name, std::move(rounds),
                [fn = cube_protocol.output_fn(), to_cube](const SphereVector& own,
                                                          const Transcript& t) {
                  return fn(to_cube(own), t);
                },
                cube_protocol.output_party());
          }};
}

}  // namespace ghdlab
