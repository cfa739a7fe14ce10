#include "ghdlab/bitstring.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ghdlab {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

void require_same_size(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("bit strings have different dimensions: " +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitString::BitString(std::size_t n) : n_(n), words_(word_count(n), 0) {
  if (n == 0) throw std::invalid_argument("bit string dimension must be at least 1");
}

BitString BitString::from_string(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
  }
  return out;
}

BitString BitString::from_word(std::uint64_t value, std::size_t n) {
  if (n > 64) throw std::invalid_argument("from_word supports at most 64 bits");
  BitString out(n);
  out.words_[0] = n == 64 ? value : (value & ((1ULL << n) - 1));
  return out;
}

BitString BitString::from_hex(std::size_t n, std::string_view hex) {
  BitString out(n);
  if (hex.size() != (n + 3) / 4) {
    throw std::invalid_argument("hex string has " + std::to_string(hex.size()) +
                                " digits, expected " + std::to_string((n + 3) / 4));
  }
  for (std::size_t j = 0; j < hex.size(); ++j) {
    const int v = hex_value(hex[j]);
    if (v < 0) throw std::invalid_argument("invalid hex digit");
    for (std::size_t b = 0; b < 4; ++b) {
      if (((v >> b) & 1) == 0) continue;
      const std::size_t i = 4 * j + b;
      if (i >= n) throw std::invalid_argument("hex string sets bits beyond n");
      out.set(i, true);
    }
  }
  return out;
}

void BitString::set(std::size_t i, bool value) noexcept {
  const std::uint64_t mask = 1ULL << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

std::size_t BitString::weight() const noexcept {
  std::size_t w = 0;
  for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

std::uint64_t BitString::to_word() const {
  if (n_ > 64) throw std::invalid_argument("to_word supports at most 64 bits");
  return words_[0];
}

std::string BitString::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s((n_ + 3) / 4, '0');
  for (std::size_t j = 0; j < s.size(); ++j) {
    unsigned v = 0;
    for (std::size_t b = 0; b < 4 && 4 * j + b < n_; ++b) {
      if ((*this)[4 * j + b]) v |= 1U << b;
    }
    s[j] = kDigits[v];
  }
  return s;
}

bool lex_less(const BitString& a, const BitString& b) {
  require_same_size(a, b);
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    if (a.words_[w] != b.words_[w]) return lex_less_packed(a.words_[w], b.words_[w]);
  }
  return false;
}

BitString operator^(const BitString& a, const BitString& b) {
  require_same_size(a, b);
  BitString out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, a[i] != b[i]);
  return out;
}

BitString operator&(const BitString& a, const BitString& b) {
  require_same_size(a, b);
  BitString out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, a[i] && b[i]);
  return out;
}

BitString operator~(const BitString& a) {
  BitString out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, !a[i]);
  return out;
}

std::size_t hamming_distance(const BitString& x, const BitString& y) {
  require_same_size(x, y);
  const auto xw = x.words();
  const auto yw = y.words();
  std::size_t d = 0;
  for (std::size_t w = 0; w < xw.size(); ++w) {
    d += static_cast<std::size_t>(std::popcount(xw[w] ^ yw[w]));
  }
  return d;
}

}  // namespace ghdlab
