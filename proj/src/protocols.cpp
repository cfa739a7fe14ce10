#include "ghdlab/protocols.hpp"

#include <cmath>
#include <bit>
#include <boost/math/special_functions/beta.hpp>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "ghdlab/instances.hpp"

namespace ghdlab::protocols {

namespace {

void require_table_dimension(std::size_t n) {
  if (n == 0 || n > 14) throw std::invalid_argument("table protocols support 1 <= n <= 14");
}

std::vector<std::size_t> offsets_of(const std::vector<RoundSpec>& schedule) {
  std::vector<std::size_t> off{0};
  for (const auto& r : schedule) off.push_back(off.back() + r.bits);
  return off;
}

std::string gamma_tag(double gamma) {
  std::ostringstream os;
  os << gamma;
  return os.str();
}

}  // namespace

Protocol<BitString> trivial_cube(std::size_t n) {
  std::vector<Protocol<BitString>::Round> rounds;
  rounds.push_back({{Party::alice, n}, [](const BitString& x, const Transcript&) {
                      return Message(x);
                    }});
  return Protocol<BitString>("trivial", std::move(rounds),
                             [n](const BitString& y, const Transcript& t) {
                               return cube_sign_label(hamming_distance(t[0].to_bitstring(), y), n);
                             });
}

TableProtocol trivial_cube_table(std::size_t n) {
  require_table_dimension(n);
  const std::uint64_t size = 1ULL << n;
  std::vector<std::uint32_t> send(size);
  for (std::uint64_t x = 0; x < size; ++x) send[x] = static_cast<std::uint32_t>(x);
  std::vector<std::uint8_t> out(size * size);
  for (std::uint64_t y = 0; y < size; ++y) {
    for (std::uint64_t t = 0; t < size; ++t) {
      out[(y << n) | t] = static_cast<std::uint8_t>(cube_sign_label(std::popcount(y ^ t), n));
    }
  }
  return TableProtocol("trivial", size, {{Party::alice, n}}, {std::move(send)}, std::move(out));
}

TableProtocol constant_table(std::uint64_t domain_size, int value) {
  return TableProtocol("constant" + std::to_string(value), domain_size, {}, {},
                       std::vector<std::uint8_t>(domain_size, static_cast<std::uint8_t>(value)));
}

Protocol<SphereVector> sign_pattern_sphere(std::size_t n) {
  std::vector<Protocol<SphereVector>::Round> rounds;
  rounds.push_back({{Party::alice, n}, [](const SphereVector& x, const Transcript&) {
                      BitString s(x.size());
                      for (std::size_t i = 0; i < x.size(); ++i) s.set(i, sgn(x[i]) == 1);
                      return Message(s);
                    }});
  return Protocol<SphereVector>("sign-pattern", std::move(rounds),
                                [](const SphereVector& y, const Transcript& t) {
                                  // Separate sums keep exact ties (embedded cube
                                  // points at Delta = n/2) exactly zero.
                                  double agree = 0.0;
                                  double differ = 0.0;
                                  for (std::size_t i = 0; i < y.size(); ++i) {
                                    const double v = std::abs(y[i]);
                                    if ((sgn(y[i]) == 1) == t[0][i]) {
                                      agree += v;
                                    } else {
                                      differ += v;
                                    }
                                  }
                                  return sgn(agree - differ);
                                });
}

double majority_error(std::size_t m, double p) {
  if (m == 0 || m % 2 == 0) throw std::invalid_argument("majority needs an odd sample count");
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  // Pr(Bin(m, p) >= a) = I_p(a, m - a + 1).
  const double a = static_cast<double>((m + 1) / 2);
  return boost::math::ibeta(a, static_cast<double>(m) - a + 1.0, p);
}

PublicCoinProtocol<BitString> sampling_cube(std::size_t n, double gamma, std::size_t m) {
  if (m == 0 || m % 2 == 0) throw std::invalid_argument("sampling protocol needs odd m >= 1");
  std::string name = "sampling(gamma=" + gamma_tag(gamma) + ",m=" + std::to_string(m) + ")";
  return {name,
          {{Party::alice, m}},
          [n, m, name](const RandomSource& coin) {
            auto idx = std::make_shared<std::vector<std::size_t>>(m);
            Rng rng = coin.rng();
            for (auto& i : *idx) i = static_cast<std::size_t>(rng.below(n));
            std::vector<Protocol<BitString>::Round> rounds;
            rounds.push_back({{Party::alice, m}, [idx](const BitString& x, const Transcript&) {
                                BitString bits(idx->size());
                                for (std::size_t j = 0; j < idx->size(); ++j) bits.set(j, x[(*idx)[j]]);
                                return Message(bits);
                              }});
            return Protocol<BitString>(name, std::move(rounds),
                                       [idx](const BitString& y, const Transcript& t) {
                                         std::size_t differ = 0;
                                         for (std::size_t j = 0; j < idx->size(); ++j) {
                                           if (t[0][j] != y[(*idx)[j]]) ++differ;
                                         }
                                         return 2 * differ > idx->size() ? 1 : 0;
                                       });
          }};
}

PublicCoinProtocol<SphereVector> sampling_sphere(std::size_t n, double gamma, std::size_t m) {
  if (m == 0 || m % 2 == 0) throw std::invalid_argument("sampling protocol needs odd m >= 1");
  std::string name =
      "sphere-sampling(gamma=" + gamma_tag(gamma) + ",m=" + std::to_string(m) + ")";
  return {name,
          {{Party::alice, m}},
          [n, m, name](const RandomSource& coin) {
            // Gaussian directions: only the sign of x.w matters, so no normalization.
            auto w = std::make_shared<std::vector<double>>(n * m);
            Rng rng = coin.rng();
            for (double& c : *w) c = rng.normal();
            auto side = [w, n](const SphereVector& v, std::size_t j) {
              return sgn(dot(std::span<const double>(w->data() + j * n, n), v.coords()));
            };
            std::vector<Protocol<SphereVector>::Round> rounds;
            rounds.push_back({{Party::alice, m}, [side, m](const SphereVector& x, const Transcript&) {
                                BitString bits(m);
                                for (std::size_t j = 0; j < m; ++j) bits.set(j, side(x, j) == 1);
                                return Message(bits);
                              }});
            return Protocol<SphereVector>(
                name, std::move(rounds), [side, m](const SphereVector& y, const Transcript& t) {
                  std::size_t differ = 0;
                  for (std::size_t j = 0; j < m; ++j) {
                    if (static_cast<int>(t[0][j]) != side(y, j)) ++differ;
                  }
                  return 2 * differ > m ? 1 : 0;
                });
          }};
}

TableProtocol random_table(std::size_t n, const std::vector<RoundSpec>& schedule, Rng& rng) {
  require_table_dimension(n);
  const std::uint64_t size = 1ULL << n;
  const auto off = offsets_of(schedule);
  std::vector<std::vector<std::uint32_t>> tables;
  for (std::size_t r = 0; r < schedule.size(); ++r) {
    std::vector<std::uint32_t> t(size << off[r]);
    const std::size_t b = schedule[r].bits;
    for (auto& v : t) v = b == 0 ? 0 : static_cast<std::uint32_t>(rng() >> (64 - b));
    tables.push_back(std::move(t));
  }
  std::vector<std::uint8_t> out(size << off.back());
  for (auto& v : out) v = rng.coin() ? 1 : 0;
  return TableProtocol("random", size, schedule, std::move(tables), std::move(out));
}

TableProtocol first_bit_then_trivial(std::size_t n) {
  require_table_dimension(n);
  const std::uint64_t size = 1ULL << n;
  std::vector<std::uint32_t> first(size);
  for (std::uint64_t x = 0; x < size; ++x) first[x] = static_cast<std::uint32_t>(x & 1);
  std::vector<std::uint32_t> second(size << 1);
  for (std::uint64_t y = 0; y < size; ++y) {
    for (std::uint64_t p = 0; p < 2; ++p) second[(y << 1) | p] = static_cast<std::uint32_t>(y);
  }
  std::vector<std::uint8_t> out(size << (n + 1));
  for (std::uint64_t x = 0; x < size; ++x) {
    for (std::uint64_t t = 0; t < (size << 1); ++t) {
      out[(x << (n + 1)) | t] =
          static_cast<std::uint8_t>(cube_sign_label(std::popcount(x ^ (t >> 1)), n));
    }
  }
  return TableProtocol("first-bit-then-trivial", size, {{Party::alice, 1}, {Party::bob, n}},
                       {std::move(first), std::move(second)}, std::move(out));
}

TableProtocol trivial_then_silent(std::size_t n, std::size_t k) {
  require_table_dimension(n);
  if (k == 0) throw std::invalid_argument("trivial_then_silent needs k >= 1");
  std::vector<RoundSpec> schedule;
  for (std::size_t r = 0; r < k; ++r) {
    const Party speaker = r % 2 == 0 ? Party::alice : Party::bob;
    schedule.push_back({speaker, r == 0 ? n : (r == 1 ? 1 : 0)});
  }
  const std::uint64_t size = 1ULL << n;
  const auto off = offsets_of(schedule);
  std::vector<std::vector<std::uint32_t>> tables;
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<std::uint32_t> t(size << off[r], 0);
    for (std::uint64_t own = 0; own < size; ++own) {
      for (std::uint64_t prefix = 0; prefix < (1ULL << off[r]); ++prefix) {
        std::uint32_t m = 0;
        if (r == 0) m = static_cast<std::uint32_t>(own);
        // Round 2: Bob answers from y and the received x.
        if (r == 1) m = static_cast<std::uint32_t>(cube_sign_label(std::popcount(own ^ prefix), n));
        t[(own << off[r]) | prefix] = m;
      }
    }
    tables.push_back(std::move(t));
  }
  std::vector<std::uint8_t> out(size << off.back());
  for (std::uint64_t own = 0; own < size; ++own) {
    for (std::uint64_t tr = 0; tr < (1ULL << off.back()); ++tr) {
      const std::uint64_t x = tr & (size - 1);
      const int v = k == 1 ? cube_sign_label(std::popcount(own ^ x), n)
                           : static_cast<int>((tr >> n) & 1);
      out[(own << off.back()) | tr] = static_cast<std::uint8_t>(v);
    }
  }
  return TableProtocol("trivial-then-silent", size, schedule, std::move(tables), std::move(out));
}

TableProtocol prefix_revealing(std::size_t n, std::size_t k, std::size_t bits) {
  require_table_dimension(n);
  if (k == 0 || bits == 0 || bits > n) throw std::invalid_argument("need k >= 1, 1 <= bits <= n");
  // Turn j of a party reveals coordinates [j*bits, (j+1)*bits) mod n.
  auto coord = [n, bits](std::size_t turn, std::size_t b) { return (turn * bits + b) % n; };
  std::vector<Protocol<BitString>::Round> rounds;
  for (std::size_t r = 0; r < k; ++r) {
    const Party speaker = r % 2 == 0 ? Party::alice : Party::bob;
    const std::size_t turn = r / 2;
    rounds.push_back({{speaker, bits}, [coord, turn, bits](const BitString& own, const Transcript&) {
                        std::uint64_t v = 0;
                        for (std::size_t b = 0; b < bits; ++b) {
                          if (own[coord(turn, b)]) v |= 1ULL << b;
                        }
                        return Message(v, bits);
                      }});
  }
  const Party out_party = k % 2 == 1 ? Party::bob : Party::alice;
  auto output = [coord, bits, out_party](const BitString& own, const Transcript& t) {
    std::size_t revealed = 0;
    std::size_t differ = 0;
    for (std::size_t r = 0; r < t.size(); ++r) {
      const Party speaker = r % 2 == 0 ? Party::alice : Party::bob;
      if (speaker == out_party) continue;
      for (std::size_t b = 0; b < bits; ++b) {
        ++revealed;
        if (t[r][b] != own[coord(r / 2, b)]) ++differ;
      }
    }
    return 2 * differ > revealed ? 1 : 0;
  };
  Protocol<BitString> p("prefix-revealing", std::move(rounds), output);
  std::vector<BitString> domain;
  domain.reserve(1ULL << n);
  for (std::uint64_t v = 0; v < (1ULL << n); ++v) domain.push_back(BitString::from_word(v, n));
  return tabulate(p, std::span<const BitString>(domain));
}

}  // namespace ghdlab::protocols
