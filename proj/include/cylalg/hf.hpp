#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cylalg/model.hpp"
#include "cylalg/relation.hpp"
#include "cylalg/term.hpp"

namespace cylalg {

/// Hereditarily finite set. Members are kept sorted in Ackermann order, the
/// order of the codes c(x) = sum of 2^c(y) over y in x.
class HFSet {
 public:
  HFSet();  // the empty set

  static HFSet of(std::vector<HFSet> members);
  static HFSet from_code(std::uint64_t code);
  static HFSet ordinal(std::uint32_t n);
  static HFSet singleton(const HFSet& x);
  static HFSet unordered_pair(const HFSet& a, const HFSet& b);
  /// {{a}, {a, b}}
  static HFSet kuratowski(const HFSet& a, const HFSet& b);

  const std::vector<HFSet>& members() const noexcept { return *members_; }
  std::size_t size() const noexcept { return members_->size(); }
  bool empty() const noexcept { return members_->empty(); }
  bool contains(const HFSet& x) const;
  /// 0 for the empty set, else 1 + the largest member rank.
  std::uint32_t rank() const noexcept { return rank_; }
  /// Ackermann code when it fits in 64 bits.
  std::optional<std::uint64_t> code() const;
  /// Nested braces, e.g. {{},{{}}}.
  std::string to_string() const;

  std::strong_ordering operator<=>(const HFSet& o) const;
  bool operator==(const HFSet& o) const { return (*this <=> o) == 0; }

 private:
  std::shared_ptr<const std::vector<HFSet>> members_;
  std::uint32_t rank_ = 0;
};

/// V_r: the sets of rank below r, encoded by their Ackermann codes
/// 0 .. |V_r|-1. Sizes are 1, 2, 4, 16, 65536 for r = 1 .. 5.
class HFUniverse {
 public:
  static constexpr std::uint32_t kMaxRank = 5;

  explicit HFUniverse(std::uint32_t rank);

  std::uint32_t rank() const noexcept { return rank_; }
  std::uint32_t size() const noexcept { return size_; }
  /// y in x
  bool member(std::uint32_t y, std::uint32_t x) const noexcept { return y < 32 && ((x >> y) & 1U); }
  std::uint32_t rank_of(std::uint32_t code) const;
  HFSet set(std::uint32_t code) const { return HFSet::from_code(code); }
  std::optional<std::uint32_t> code_of(const HFSet& x) const;

  /// Carrier V_r with E(y,x) for y in x. Labels are nested-brace strings
  /// when `labels` is set.
  ModelFinite model(bool labels = false) const;
  /// model() plus ternary Add, Mul and Exp holding the triples of ordinals
  /// in V_r with x + y = z, x . y = z and x^y = z respectively.
  ModelFinite arithmetic_model() const;

 private:
  std::uint32_t rank_;
  std::uint32_t size_;
};

HFUniverse hf_universe(std::uint32_t rank);

/// Coordinates (a, b) of x when x is a pair in the sense of the pairing
/// formulas: exactly one y has {y} in x, at most one z in U x has {z} not in
/// x, and every member of x is nonempty. The first coordinate is that y; the
/// second is y itself when x = {{y}}, else that z (none if there is no z).
std::optional<std::pair<HFSet, HFSet>> decode_pair(const HFSet& x);

/// P0 = { (x, a) } and P1 = { (x, b) } over the codes of V_r, for every pair
/// code x with decode_pair(x) = (a, b). Needs |V_r|^2 <= 2^24 (r <= 4).
struct QuasiProjections {
  Relation p0;
  Relation p1;
};
QuasiProjections quasiprojection_relations(const HFUniverse& u);

/// (p~;p -> 1') . (q~;q -> 1') . (p~;q) with p = v0 and q = v1.
Term pi_ra_term();

bool is_ordinal(const HFSet& x);
/// Ordinal whose members and itself are each zero or a successor.
bool is_finite_ordinal(const HFSet& x);
/// Number of members of an ordinal; none for non-ordinals.
std::optional<std::uint32_t> ordinal_value(const HFSet& x);

/// A bijection between a and b exists.
bool bijection_exists(const HFSet& a, const HFSet& b);

/// Ordinal arithmetic on finite ordinals by counting constructed sets:
/// disjoint union, cartesian product and function space. Results whose
/// value exceeds `max_value` are not built and give none, as do
/// non-ordinal arguments.
std::optional<HFSet> ordinal_sum(const HFSet& x, const HFSet& y, std::uint32_t max_value);
std::optional<HFSet> ordinal_product(const HFSet& x, const HFSet& y, std::uint32_t max_value);
std::optional<HFSet> ordinal_power(const HFSet& x, const HFSet& y, std::uint32_t max_value);

}  // namespace cylalg
