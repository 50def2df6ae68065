#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cylalg/bitset.hpp"

namespace cylalg {

/// ^nU for a finite base U = {0, ..., u-1}. Tuples are numbered mixed-radix
/// with coordinate 0 least significant: index(s) = sum_i s_i * u^i.
class TupleSpace {
 public:
  /// Largest admitted u^n.
  static constexpr std::uint64_t kMaxSize = std::uint64_t{1} << 24;

  static std::shared_ptr<const TupleSpace> make(std::uint32_t base, std::uint32_t dimension);

  std::uint32_t base() const noexcept { return base_; }
  std::uint32_t dimension() const noexcept { return dim_; }
  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t stride(std::uint32_t i) const noexcept { return strides_[i]; }

  std::uint64_t encode(std::span<const std::uint32_t> tuple) const;
  std::vector<std::uint32_t> decode(std::uint64_t index) const;
  std::uint32_t coord(std::uint64_t index, std::uint32_t i) const noexcept {
    return static_cast<std::uint32_t>((index / strides_[i]) % base_);
  }

  bool same_as(const TupleSpace& o) const noexcept { return base_ == o.base_ && dim_ == o.dim_; }
  std::string header() const;

 private:
  TupleSpace(std::uint32_t base, std::uint32_t dim);

  std::uint32_t base_;
  std::uint32_t dim_;
  std::uint64_t size_;
  std::vector<std::uint64_t> strides_;
};

using SpacePtr = std::shared_ptr<const TupleSpace>;

/// A subset of ^nU, i.e. an element of the full set algebra over the space.
class Element {
 public:
  Element(SpacePtr space, Bitset bits);

  static Element empty(SpacePtr space);
  static Element full(SpacePtr space);
  /// Characteristic set of a predicate on tuples.
  template <class Pred>
  static Element from_predicate(SpacePtr space, Pred&& pred) {
    Bitset bits(space->size());
    std::vector<std::uint32_t> t(space->dimension(), 0);
    for (std::uint64_t i = 0; i < space->size(); ++i) {
      if (pred(std::span<const std::uint32_t>(t))) bits.set(i);
      for (std::uint32_t k = 0; k < t.size(); ++k) {
        if (++t[k] < space->base()) break;
        t[k] = 0;
      }
    }
    return Element(std::move(space), std::move(bits));
  }

  const TupleSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  const Bitset& bits() const noexcept { return bits_; }

  bool contains(std::span<const std::uint32_t> tuple) const;
  bool is_empty() const noexcept { return bits_.none(); }
  bool is_full() const noexcept { return bits_.all(); }
  std::size_t count() const noexcept { return bits_.count(); }

  Element operator&(const Element& o) const;
  Element operator|(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator~() const;
  bool operator<=(const Element& o) const;
  bool operator==(const Element& o) const;

  /// "space:u,n <hex>"
  std::string to_string() const;
  static Element parse(std::string_view text);

 private:
  void check_space(const Element& o) const;

  SpacePtr space_;
  Bitset bits_;
};

/// c_i x = { s : s[i -> t] in x for some t in U }.
Element cyl(std::uint32_t i, const Element& x);
/// d_ij = { s : s_i = s_j }.
Element diag(const SpacePtr& space, std::uint32_t i, std::uint32_t j);
/// s_{i,j} x = { s : s[i -> s_j] in x }, i != j.
Element subst(std::uint32_t i, std::uint32_t j, const Element& x);
/// c_0 c_1 ... c_{n-1} x: the full space when x is nonempty, else empty.
Element discriminator(const Element& x);

}  // namespace cylalg
