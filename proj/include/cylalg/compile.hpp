#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cylalg/formula.hpp"
#include "cylalg/model.hpp"
#include "cylalg/signature.hpp"
#include "cylalg/term.hpp"

namespace cylalg {

enum class Target { CA, SC };

/// How an atom R(x1..xm) is read when R is declared with arity K > m.
/// Exists: some value for the missing places, R(x1..xm) := ex v R(x1..xm,v..).
/// Diagonal: the last argument is repeated, R(x,y) := R(x,y,y).
enum class AbbrevReading { Exists, Diagonal };

/// Every atom is R(v0,...,v_{k-1}) and every variable index is < n.
bool is_restricted(const Formula& f, std::uint32_t n);
/// The first subformula violating is_restricted (an atom, equality or
/// quantifier), if any.
std::optional<Formula> first_unrestricted(const Formula& f, std::uint32_t n);

/// Steps (a, b), innermost first, such that applying s_{a,b} in turn to a
/// set depending only on coordinates 0..k-1 yields the set
/// { s : (s_target[0], ..., s_target[k-1]) in R }. Each step maps the
/// current coordinate map f to [a -> b] o f. Breadth-first, steps tried in
/// lexicographic order, so the path is the shortest and lexicographically
/// first. Throws DomainError when the target is unreachable.
std::vector<std::pair<std::uint32_t, std::uint32_t>> replacement_path(std::span<const std::uint32_t> target,
                                                                      std::uint32_t n);

/// Rewrites every atom used below its declared arity by the given reading.
/// Fresh variables are the smallest indices not among the atom's arguments.
Formula expand_abbreviations(const Formula& f, const Vocabulary& vocab,
                             AbbrevReading reading = AbbrevReading::Exists);

/// Equivalent restricted formula over n variables: each non-natural atom
/// becomes a chain of ex v_a (v_a = v_b & ...) around its natural form.
Formula restrict_atoms(const Formula& f, std::uint32_t n, const Vocabulary& vocab,
                       AbbrevReading reading = AbbrevReading::Exists);

struct CompileOptions {
  Target target = Target::CA;
  std::uint32_t n = 3;
  /// Defaults to vocabulary_of(f).
  std::optional<Vocabulary> vocabulary;
  AbbrevReading reading = AbbrevReading::Exists;
  /// CA only: refuse non-restricted formulas instead of restricting them.
  bool require_restricted = false;
};

struct CompiledTerm {
  Term term;
  /// Term variable k stands for the natural atom of the k-th symbol.
  Vocabulary vocabulary;
  Signature signature;
};

/// &, |, !, ->, <-> map to the Boolean operations; ex v_i to c_i; all v_i to
/// -c_i-; v_i = v_j to d_ij (CA only). Errors: MismatchError for equality
/// under SC, DomainError for variables >= n or unrestricted input when
/// require_restricted is set.
CompiledTerm compile_to_term(const Formula& f, const CompileOptions& opts = {});

/// Satisfaction sets of R(v0,...,v_{K-1}) for each symbol of `vocab`, in
/// vocabulary order: the assignment under which a compiled term denotes
/// satisfaction_set(m, f, n).
std::vector<Element> natural_atom_sets(const ModelFinite& m, const Vocabulary& vocab, std::uint32_t n);

}  // namespace cylalg
