#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cylalg/relation.hpp"
#include "cylalg/signature.hpp"
#include "cylalg/space.hpp"

namespace cylalg {

enum class TermOp { Var, Zero, One, Ident, Diag, Not, And, Or, Impl, Cyl, Subst, Conv, Comp };

/// Immutable operator term. Subterms are shared, so a Term is a DAG; every
/// traversal in this library memoizes on node identity.
class Term {
 public:
  struct Node {
    TermOp op;
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    std::array<std::shared_ptr<const Node>, 2> args;
  };

  static Term var(std::uint32_t index);
  static Term zero();
  static Term one();
  static Term ident();
  static Term diag(std::uint32_t i, std::uint32_t j);
  static Term cyl(std::uint32_t i, Term x);
  static Term subst(std::uint32_t i, std::uint32_t j, Term x);
  static Term conv(Term x);
  static Term comp(Term x, Term y);

  Term operator!() const;  // complement
  Term operator&(const Term& o) const;
  Term operator|(const Term& o) const;
  Term implies(const Term& o) const;

  TermOp op() const noexcept { return node_->op; }
  std::uint32_t i() const noexcept { return node_->i; }
  std::uint32_t j() const noexcept { return node_->j; }
  Term arg(std::size_t k) const { return Term(node_->args[k]); }
  std::size_t arity() const noexcept;
  const Node* node() const noexcept { return node_.get(); }

  /// Number of distinct nodes.
  std::size_t dag_size() const;
  /// One more than the largest variable index, 0 for ground terms.
  std::uint32_t variable_count() const;

  /// Structural equality.
  bool operator==(const Term& o) const;

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(TermOp op, std::uint32_t i, std::uint32_t j, std::shared_ptr<const Node> a = {},
                   std::shared_ptr<const Node> b = {});

  std::shared_ptr<const Node> node_;
};

/// Prefix text form, e.g. `(and (cyl 0 (var 0)) (not (diag 0 1)))`.
/// Constants print as `zero`, `one`, `id`.
std::string to_string(const Term& t);
Term parse_term(std::string_view text);

/// Replaces (var k) by replacements[k]; variables past the end stay put.
Term substitute(const Term& t, std::span<const Term> replacements);

/// Throws MismatchError when an operator is outside `sig` or an index exceeds
/// its dimension, DomainError when a variable index is >= nvars.
void check_term(const Term& t, const Signature& sig, std::size_t nvars);

/// Denotation of `t` in the set algebra with variables bound to `assignment`.
Element evaluate(const Term& t, std::span<const Element> assignment, const SetAlgebra& ambient);
/// Denotation of a relation-algebra term over the given base.
Relation evaluate(const Term& t, std::span<const Relation> assignment, std::uint32_t base);

}  // namespace cylalg
