#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cylalg/bitset.hpp"
#include "cylalg/space.hpp"

namespace cylalg {

enum class SigKind { BA, DF, SC, CA, RA };

std::string_view to_string(SigKind k);
SigKind parse_sig_kind(std::string_view s);

/// Non-Boolean operators. Boolean +, ., -, 0, 1 belong to every signature.
enum class OpKind { Cyl, Diag, Subst, Comp, Conv, Ident };

struct OpDescriptor {
  OpKind kind;
  std::uint32_t i = 0;
  std::uint32_t j = 0;

  int arity() const noexcept;
  /// c0, d01, s0_1, comp, conv, id
  std::string name() const;
  bool operator==(const OpDescriptor&) const = default;
};

/// An operator signature. DF_n: c_i. SC_n: c_i, s_{i,j}. CA_n: c_i, d_ij.
/// RA: ;, converse, Id. BA: Boolean operations only.
class Signature {
 public:
  static Signature make(SigKind kind, std::uint32_t dimension = 0);

  SigKind kind() const noexcept { return kind_; }
  /// 0 for BA and RA.
  std::uint32_t dimension() const noexcept { return dim_; }
  /// Canonical operator order: c_i ascending, then d_ij (i<j), then s_{i,j}
  /// row-major; RA lists comp, conv, id.
  const std::vector<OpDescriptor>& operators() const noexcept { return ops_; }
  std::optional<std::size_t> index_of(const OpDescriptor& op) const;
  bool admits(const OpDescriptor& op) const { return index_of(op).has_value(); }
  bool has_cylindrifications() const noexcept {
    return kind_ == SigKind::DF || kind_ == SigKind::SC || kind_ == SigKind::CA;
  }

  /// "CA_3", "BA", "RA"
  std::string name() const;
  /// Inverse of name().
  static Signature parse(std::string_view text);
  bool operator==(const Signature& o) const noexcept { return kind_ == o.kind_ && dim_ == o.dim_; }

 private:
  SigKind kind_ = SigKind::BA;
  std::uint32_t dim_ = 0;
  std::vector<OpDescriptor> ops_;
};

/// Something whose elements are bitsets and whose signature operators can be
/// applied to them; the closure machinery in finite_algebra.hpp works over
/// any ambient. Operators are assumed normal and additive in each argument.
class Ambient {
 public:
  virtual ~Ambient() = default;
  virtual const Signature& signature() const = 0;
  virtual Bitset unit() const = 0;
  virtual Bitset apply(const OpDescriptor& op, std::span<const Bitset> args) const = 0;
};

/// The full set algebra of a signature over a finite base: subsets of ^nU
/// for DF/SC/CA (and BA, with n given), binary relations for RA.
class SetAlgebra final : public Ambient {
 public:
  SetAlgebra(Signature sig, std::uint32_t base);
  SetAlgebra(SigKind kind, std::uint32_t base, std::uint32_t dimension);

  const Signature& signature() const override { return sig_; }
  Bitset unit() const override { return Bitset::full(space_->size()); }
  Bitset apply(const OpDescriptor& op, std::span<const Bitset> args) const override;

  std::uint32_t base() const noexcept { return space_->base(); }
  /// For RA this is the (u, 2) space of pairs.
  const SpacePtr& space() const noexcept { return space_; }
  Element element(Bitset bits) const { return Element(space_, std::move(bits)); }

 private:
  Signature sig_;
  SpacePtr space_;
};

}  // namespace cylalg
