#include "cylalg/signature.hpp"

#include "cylalg/error.hpp"
#include "cylalg/relation.hpp"

namespace cylalg {

std::string_view to_string(SigKind k) {
  switch (k) {
    case SigKind::BA: return "BA";
    case SigKind::DF: return "DF";
    case SigKind::SC: return "SC";
    case SigKind::CA: return "CA";
    case SigKind::RA: return "RA";
  }
  return "?";
}

SigKind parse_sig_kind(std::string_view s) {
  if (s == "BA") return SigKind::BA;
  if (s == "DF") return SigKind::DF;
  if (s == "SC") return SigKind::SC;
  if (s == "CA") return SigKind::CA;
  if (s == "RA") return SigKind::RA;
  throw DomainError("unknown signature kind '" + std::string(s) + "'");
}

int OpDescriptor::arity() const noexcept {
  switch (kind) {
    case OpKind::Diag:
    case OpKind::Ident: return 0;
    case OpKind::Cyl:
    case OpKind::Subst:
    case OpKind::Conv: return 1;
    case OpKind::Comp: return 2;
  }
  return 0;
}

std::string OpDescriptor::name() const {
  switch (kind) {
    case OpKind::Cyl: return "c" + std::to_string(i);
    case OpKind::Diag: return "d" + std::to_string(i) + std::to_string(j);
    case OpKind::Subst: return "s" + std::to_string(i) + "_" + std::to_string(j);
    case OpKind::Comp: return "comp";
    case OpKind::Conv: return "conv";
    case OpKind::Ident: return "id";
  }
  return "?";
}

Signature Signature::make(SigKind kind, std::uint32_t dimension) {
  Signature s;
  s.kind_ = kind;
  if (kind == SigKind::BA || kind == SigKind::RA) {
    s.dim_ = 0;
  } else {
    if (dimension < 1) throw DomainError("signature dimension must be at least 1");
    s.dim_ = dimension;
  }
  switch (kind) {
    case SigKind::BA: break;
    case SigKind::RA:
      s.ops_ = {{OpKind::Comp}, {OpKind::Conv}, {OpKind::Ident}};
      break;
    case SigKind::DF:
    case SigKind::SC:
    case SigKind::CA:
      for (std::uint32_t i = 0; i < s.dim_; ++i) s.ops_.push_back({OpKind::Cyl, i});
      if (kind == SigKind::CA)
        for (std::uint32_t i = 0; i < s.dim_; ++i)
          for (std::uint32_t j = i + 1; j < s.dim_; ++j) s.ops_.push_back({OpKind::Diag, i, j});
      if (kind == SigKind::SC)
        for (std::uint32_t i = 0; i < s.dim_; ++i)
          for (std::uint32_t j = 0; j < s.dim_; ++j)
            if (i != j) s.ops_.push_back({OpKind::Subst, i, j});
      break;
  }
  return s;
}

std::optional<std::size_t> Signature::index_of(const OpDescriptor& op) const {
  OpDescriptor key = op;
  if (key.kind == OpKind::Diag && key.i > key.j) std::swap(key.i, key.j);
  if (key.kind == OpKind::Cyl) key.j = 0;
  if (key.kind == OpKind::Comp || key.kind == OpKind::Conv || key.kind == OpKind::Ident) key.i = key.j = 0;
  for (std::size_t k = 0; k < ops_.size(); ++k)
    if (ops_[k] == key) return k;
  return std::nullopt;
}

std::string Signature::name() const {
  std::string s(to_string(kind_));
  if (dim_ > 0) s += "_" + std::to_string(dim_);
  return s;
}

Signature Signature::parse(std::string_view text) {
  const auto us = text.find('_');
  const SigKind kind = parse_sig_kind(text.substr(0, us));
  if (us == std::string_view::npos) return make(kind);
  std::uint32_t dim = 0;
  const auto digits = text.substr(us + 1);
  if (digits.empty() || digits.size() > 6) throw DomainError("bad signature '" + std::string(text) + "'");
  for (char c : digits) {
    if (c < '0' || c > '9') throw DomainError("bad signature '" + std::string(text) + "'");
    dim = dim * 10 + static_cast<std::uint32_t>(c - '0');
  }
  return make(kind, dim);
}

SetAlgebra::SetAlgebra(Signature sig, std::uint32_t base) : sig_(std::move(sig)) {
  switch (sig_.kind()) {
    case SigKind::RA: space_ = TupleSpace::make(base, 2); break;
    case SigKind::BA:
      throw DomainError("a BA set algebra needs an explicit dimension; use the (kind, base, n) form");
    default: space_ = TupleSpace::make(base, sig_.dimension()); break;
  }
}

SetAlgebra::SetAlgebra(SigKind kind, std::uint32_t base, std::uint32_t dimension)
    : sig_(Signature::make(kind, dimension)) {
  space_ = TupleSpace::make(base, kind == SigKind::RA ? 2 : dimension);
}

Bitset SetAlgebra::apply(const OpDescriptor& op, std::span<const Bitset> args) const {
  if (!sig_.admits(op)) throw MismatchError("operator " + op.name() + " not in " + sig_.name());
  if (args.size() != static_cast<std::size_t>(op.arity()))
    throw DomainError("operator " + op.name() + " applied to wrong number of arguments");
  switch (op.kind) {
    case OpKind::Cyl: return cyl(op.i, element(args[0])).bits();
    case OpKind::Subst: return subst(op.i, op.j, element(args[0])).bits();
    case OpKind::Diag: return diag(space_, op.i, op.j).bits();
    case OpKind::Ident: return Relation::identity(base()).bits();
    case OpKind::Conv: return Relation(base(), args[0]).converse().bits();
    case OpKind::Comp: return Relation(base(), args[0]).compose(Relation(base(), args[1])).bits();
  }
  throw DomainError("unsupported operator");
}

}  // namespace cylalg
