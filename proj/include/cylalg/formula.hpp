#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cylalg {

enum class FormulaKind { True, False, Atom, Eq, Not, And, Or, Implies, Iff, Exists, Forall };

/// Variables are v0 ... v63.
inline constexpr std::uint32_t kMaxVariables = 64;

/// Immutable first-order formula over a relational vocabulary. Each node
/// caches its free-variable set, variable bound and quantifier depth.
class Formula {
 public:
  struct Node {
    FormulaKind kind;
    std::string symbol;               // Atom
    std::vector<std::uint32_t> vars;  // Atom arguments; Eq: {i, j}; quantifiers: {v}
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
    std::uint64_t free_mask = 0;
    std::uint32_t var_bound = 0;  // 1 + largest variable index occurring, 0 if none
    std::uint32_t depth = 0;      // quantifier depth
  };

  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string symbol, std::vector<std::uint32_t> args);
  static Formula eq(std::uint32_t i, std::uint32_t j);
  static Formula neq(std::uint32_t i, std::uint32_t j) { return !eq(i, j); }
  static Formula exists(std::uint32_t v, const Formula& body);
  static Formula forall(std::uint32_t v, const Formula& body);
  static Formula iff(const Formula& l, const Formula& r);

  Formula operator!() const;
  Formula operator&(const Formula& o) const;
  Formula operator|(const Formula& o) const;
  Formula implies(const Formula& o) const;

  FormulaKind kind() const noexcept { return node_->kind; }
  const std::string& symbol() const noexcept { return node_->symbol; }
  const std::vector<std::uint32_t>& vars() const noexcept { return node_->vars; }
  /// Bound variable of a quantifier node.
  std::uint32_t bound() const noexcept { return node_->vars[0]; }
  Formula lhs() const { return Formula(node_->a); }
  Formula rhs() const { return Formula(node_->b); }
  Formula body() const { return Formula(node_->a); }

  std::uint64_t free_mask() const noexcept { return node_->free_mask; }
  std::vector<std::uint32_t> free_vars() const;
  bool is_closed() const noexcept { return node_->free_mask == 0; }
  std::uint32_t var_bound() const noexcept { return node_->var_bound; }
  std::uint32_t quantifier_depth() const noexcept { return node_->depth; }
  const Node* node() const noexcept { return node_.get(); }
  const std::shared_ptr<const Node>& shared_node() const noexcept { return node_; }

  /// Structural equality.
  bool operator==(const Formula& o) const;

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

 private:
  static Formula make(FormulaKind k, std::shared_ptr<const Node> a, std::shared_ptr<const Node> b);

  std::shared_ptr<const Node> node_;
};

/// Relation symbols with arities.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::initializer_list<std::pair<const std::string, std::uint32_t>> init);

  /// Throws DomainError when `name` is already declared with another arity.
  void add(const std::string& name, std::uint32_t arity);
  bool contains(const std::string& name) const { return arity_.count(name) != 0; }
  std::uint32_t arity(const std::string& name) const;
  /// Symbols in name order; this order numbers term variables.
  std::vector<std::string> symbols() const;
  std::size_t index_of(const std::string& name) const;
  std::size_t size() const noexcept { return arity_.size(); }
  const std::map<std::string, std::uint32_t>& arities() const noexcept { return arity_; }

 private:
  std::map<std::string, std::uint32_t> arity_;
};

/// Each symbol at the largest arity it is used with.
Vocabulary vocabulary_of(const Formula& f);

/// Canonical text: binary connectives parenthesized, left-nested & and |
/// chains flattened, negated equalities printed as `vi != vj`.
std::string to_string(const Formula& f);

/// Grammar (lowest precedence first):
///   iff     := imp ("<->" imp)*
///   imp     := or ("->" imp)?
///   or      := and ("|" and)*
///   and     := unary ("&" unary)*
///   unary   := "!" unary | ("ex" | "all") var unary | primary
///   primary := "true" | "false" | name "(" [var ("," var)*] ")"
///            | var ("=" | "!=") var | "(" iff ")"
///   var     := "v" digits
/// Errors are ParseError with the character offset.
Formula parse_formula(std::string_view text);

/// Number of nodes in the tree (shared subtrees counted once per use).
std::size_t tree_size(const Formula& f);

}  // namespace cylalg
