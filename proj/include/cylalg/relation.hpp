#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cylalg/bitset.hpp"

namespace cylalg {

/// A binary relation on {0, ..., u-1}: an element of the proper relation
/// algebra over that base. Pair (a, b) is bit a + u*b.
class Relation {
 public:
  /// Largest admitted u*u.
  static constexpr std::uint64_t kMaxSize = std::uint64_t{1} << 24;

  explicit Relation(std::uint32_t base);
  Relation(std::uint32_t base, Bitset bits);

  static Relation empty(std::uint32_t base) { return Relation(base); }
  static Relation full(std::uint32_t base);
  static Relation identity(std::uint32_t base);
  static Relation from_pairs(std::uint32_t base,
                             const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs);

  std::uint32_t base() const noexcept { return base_; }
  const Bitset& bits() const noexcept { return bits_; }
  std::size_t index(std::uint32_t a, std::uint32_t b) const noexcept {
    return a + static_cast<std::size_t>(base_) * b;
  }

  bool contains(std::uint32_t a, std::uint32_t b) const noexcept { return bits_.test(index(a, b)); }
  void insert(std::uint32_t a, std::uint32_t b);
  std::size_t count() const noexcept { return bits_.count(); }
  bool is_empty() const noexcept { return bits_.none(); }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs() const;

  Relation operator&(const Relation& o) const;
  Relation operator|(const Relation& o) const;
  Relation operator-(const Relation& o) const;
  Relation operator~() const;
  bool operator<=(const Relation& o) const;
  bool operator==(const Relation& o) const = default;

  /// Relative product r;s.
  Relation compose(const Relation& s) const;
  Relation converse() const;
  /// r -> s, i.e. -r + s.
  Relation implies(const Relation& s) const;

  std::string to_string() const;

 private:
  void check_base(const Relation& o) const;

  std::uint32_t base_;
  Bitset bits_;
};

}  // namespace cylalg
