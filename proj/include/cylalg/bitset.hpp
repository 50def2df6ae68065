#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cylalg {

/// Fixed-length dynamic bitset. Bits beyond size() are always zero, so
/// word-wise comparison and hashing are exact.
///
/// The total order (operator<=>) compares the bitsets as unsigned binary
/// numbers with bit 0 least significant; bitsets of different lengths order
/// by length first.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t nbits);

  static Bitset full(std::size_t nbits);
  static Bitset single(std::size_t nbits, std::size_t bit);

  std::size_t size() const noexcept { return nbits_; }

  bool test(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool v) noexcept { v ? set(i) : reset(i); }

  std::size_t count() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  bool all() const noexcept { return count() == nbits_; }

  /// Every set bit of *this is set in `other`.
  bool is_subset_of(const Bitset& other) const;
  bool intersects(const Bitset& other) const;

  /// Index of the lowest set bit, or size() when empty.
  std::size_t find_first() const noexcept;
  /// Index of the lowest set bit strictly above `i`, or size().
  std::size_t find_next(std::size_t i) const noexcept;
  /// Index of the highest set bit, or size() when empty.
  std::size_t find_last() const noexcept;

  template <class F>
  void for_each_set(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        const int b = __builtin_ctzll(word);
        f(w * 64 + static_cast<std::size_t>(b));
        word &= word - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const;

  Bitset& operator&=(const Bitset& o);
  Bitset& operator|=(const Bitset& o);
  Bitset& operator^=(const Bitset& o);
  /// Set difference: clears every bit set in `o`.
  Bitset& operator-=(const Bitset& o);
  Bitset operator~() const;

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  friend bool operator==(const Bitset& a, const Bitset& b) = default;
  friend std::strong_ordering operator<=>(const Bitset& a, const Bitset& b);

  /// Concatenation: bits of `lo` occupy [0, lo.size()), bits of `hi` follow.
  static Bitset concat(const Bitset& lo, const Bitset& hi);
  /// Bits [offset, offset + len).
  Bitset slice(std::size_t offset, std::size_t len) const;

  /// Hex digits, most significant nibble first, exactly ceil(size/4) digits.
  std::string to_hex() const;
  static Bitset from_hex(std::string_view hex, std::size_t nbits);

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::size_t hash() const noexcept;

 private:
  void check_same_size(const Bitset& o) const;
  void trim() noexcept;

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const noexcept { return b.hash(); }
};

}  // namespace cylalg
