#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cylalg/bitset.hpp"
#include "cylalg/signature.hpp"
#include "cylalg/space.hpp"

namespace cylalg {

/// Values of one operator on atoms. Arity 0: values[0]. Arity 1: values[a].
/// Arity 2: values[a * atom_count + b].
struct OpTable {
  OpDescriptor op;
  std::vector<Bitset> values;
};

/// A finite Boolean algebra with normal additive operators, stored as its
/// atom structure: elements are bitsets over the atoms (bit k set means atom k
/// lies below the element) and every operator is tabulated on atoms only.
/// Additivity recovers f(x) as the join of f over the atoms below x.
///
/// Optionally each atom carries a representation in some ambient (a subset
/// of a tuple space, or an element of a larger FiniteAlgebra). Atoms are then
/// kept in ascending order of their representation, which makes the numeric
/// order of element masks agree with the numeric order of represented sets.
class FiniteAlgebra final : public Ambient {
 public:
  /// Enumeration of all elements is refused above this many atoms.
  static constexpr std::size_t kMaxEnumerableAtoms = 24;

  FiniteAlgebra(Signature sig, std::size_t atom_count, std::vector<OpTable> tables,
                std::vector<Bitset> atom_reprs = {}, SpacePtr space = nullptr);

  const Signature& signature() const override { return sig_; }
  std::size_t atom_count() const noexcept { return atoms_; }
  /// 2^atom_count, or nullopt when that does not fit in 64 bits.
  std::optional<std::uint64_t> size() const noexcept;
  /// The one-element algebra (0 = 1).
  bool is_degenerate() const noexcept { return atoms_ == 0; }

  Bitset zero() const { return Bitset(atoms_); }
  Bitset one() const { return Bitset::full(atoms_); }
  Bitset atom(std::size_t k) const { return Bitset::single(atoms_, k); }
  Bitset unit() const override { return one(); }

  const std::vector<OpTable>& tables() const noexcept { return tables_; }
  const OpTable& table(const OpDescriptor& op) const;
  Bitset apply(std::size_t op_index, std::span<const Bitset> args) const;
  Bitset apply(const OpDescriptor& op, std::span<const Bitset> args) const override;
  Bitset apply(const OpDescriptor& op, const Bitset& x) const {
    return apply(op, std::span<const Bitset>(&x, 1));
  }

  /// Calls f(mask) for every element in ascending mask order.
  template <class F>
  void for_each_element(F&& f) const {
    check_enumerable();
    const std::uint64_t n = std::uint64_t{1} << atoms_;
    Bitset x(atoms_);
    for (std::uint64_t v = 0; v < n; ++v) {
      for (std::size_t k = 0; k < atoms_; ++k) x.assign(k, (v >> k) & 1U);
      f(static_cast<const Bitset&>(x));
    }
  }
  std::vector<Bitset> elements() const;

  bool has_representation() const noexcept { return !reprs_.empty() || atoms_ == 0; }
  const std::vector<Bitset>& atom_representations() const noexcept { return reprs_; }
  std::size_t representation_size() const noexcept { return repr_size_; }
  /// Join of the representations of the atoms below x.
  Bitset represent(const Bitset& x) const;
  /// Mask of `repr` if it is a union of atom representations.
  std::optional<Bitset> locate(const Bitset& repr) const;

  /// Tuple space of the representations, when they are subsets of one.
  const SpacePtr& space() const noexcept { return space_; }
  Element concrete(const Bitset& x) const;
  Bitset from_concrete(const Element& e) const;

  void check_element(const Bitset& x) const;

 private:
  void check_enumerable() const;

  Signature sig_;
  std::size_t atoms_;
  std::vector<OpTable> tables_;
  std::vector<Bitset> reprs_;
  std::size_t repr_size_ = 0;
  SpacePtr space_;
};

/// Sg{gens} inside `ambient`: the least subset closed under the Boolean
/// operations and every signature operator. Computed by refining the
/// partition of the unit until every operator maps blocks to unions of
/// blocks; the final blocks are the atoms. Throws CapacityError (quoting the
/// partial size reached) when 2^atoms would exceed `cap`; kNoCap disables
/// the bound.
inline constexpr std::uint64_t kNoCap = ~std::uint64_t{0};
FiniteAlgebra generate_subalgebra(const Ambient& ambient, std::span<const Bitset> gens,
                                  std::uint64_t cap = kNoCap);
FiniteAlgebra generate_subalgebra(const SetAlgebra& ambient, std::span<const Element> gens,
                                  std::uint64_t cap = kNoCap);

std::vector<Bitset> atoms(const FiniteAlgebra& a);

/// An atom of A lying below a.(-b). Throws DomainError when a.(-b) = 0.
Bitset atom_below(const FiniteAlgebra& a, const Bitset& x, const Bitset& b);

/// Rl_b A: carrier { x.b }, unit b, each operator cut down to f(x).b.
/// b = 0 yields the degenerate algebra.
FiniteAlgebra relativize(const FiniteAlgebra& a, const Bitset& b);

struct Ideal {
  Bitset generator;
  /// Least b* >= generator with f(b*) <= b* for every operator.
  Bitset closure;

  bool contains(const Bitset& x) const { return x.is_subset_of(closure); }
  /// Number of members, 2^|atoms below closure|.
  std::uint64_t size() const { return std::uint64_t{1} << closure.count(); }
};

/// Ig{b} = { x : x <= b* } where b* closes b under + and every operator.
Ideal principal_ideal(const FiniteAlgebra& a, const Bitset& b);

/// A x B with coordinatewise operations. Atoms of A come first.
FiniteAlgebra product(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// c_0 ... c_{n-1} x for cylindric signatures, 1;x;1 for RA, x itself for BA.
Bitset discriminator(const FiniteAlgebra& a, const Bitset& x);

/// Versioned text format (`cylalg-algebra 1`): signature, atom count,
/// optional atom representations, then every op table row-major.
void write_algebra(std::ostream& os, const FiniteAlgebra& a);
FiniteAlgebra read_algebra(std::istream& is);

}  // namespace cylalg
