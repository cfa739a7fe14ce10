#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ghdlab {

/// Packed n-bit string, 64 bits per word, little-endian within a word.
/// Position 0 is the first coordinate x_1. Unused high bits of the last
/// word are always zero, so word-wise comparisons and popcounts are exact.
class BitString {
 public:
  /// All-zero string of length n (n >= 1).
  explicit BitString(std::size_t n);

  /// Parses '0'/'1' characters, first character is coordinate 1.
  static BitString from_string(std::string_view bits);

  /// Low n bits of `value`, bit i becomes coordinate i+1. Requires n <= 64.
  static BitString from_word(std::uint64_t value, std::size_t n);

  /// Inverse of to_hex(). Rejects wrong length, bad digits, or set padding bits.
  static BitString from_hex(std::size_t n, std::string_view hex);

  std::size_t size() const noexcept { return n_; }
  bool operator[](std::size_t i) const noexcept {
    return ((words_[i >> 6] >> (i & 63)) & 1ULL) != 0;
  }
  void set(std::size_t i, bool value) noexcept;
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= 1ULL << (i & 63); }

  /// Number of ones, |x|.
  std::size_t weight() const noexcept;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// Packed value for n <= 64 (coordinate i at bit i).
  std::uint64_t to_word() const;

  std::string to_string() const;

  /// Lowercase hex, ceil(n/4) digits; digit j holds coordinates 4j..4j+3
  /// with coordinate 4j in the least significant position of the digit.
  std::string to_hex() const;

  friend bool operator==(const BitString&, const BitString&) = default;

  /// Lexicographic order on the coordinate sequence x_1 x_2 ... x_n.
  friend bool lex_less(const BitString& a, const BitString& b);

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

BitString operator^(const BitString& a, const BitString& b);
BitString operator&(const BitString& a, const BitString& b);
BitString operator~(const BitString& a);

/// Hamming distance |{i : x_i != y_i}|. Throws std::invalid_argument on
/// dimension mismatch.
std::size_t hamming_distance(const BitString& x, const BitString& y);

/// Lexicographic comparison for bit strings packed into integers with
/// coordinate 1 at bit 0.
constexpr bool lex_less_packed(std::uint64_t a, std::uint64_t b) noexcept {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & (~diff + 1))) == 0;
}

}  // namespace ghdlab
