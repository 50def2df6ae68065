#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cylalg/finite_algebra.hpp"
#include "cylalg/space.hpp"

namespace cylalg {

struct FreeBA {
  FiniteAlgebra algebra;
  /// g_i = { f in 2^k : f(i) = 1 }, as atom masks.
  std::vector<Bitset> generators;
};

/// The free Boolean algebra on k <= 4 generators: atoms are the maps
/// f : k -> 2, numbered by the binary value of f.
FreeBA free_boolean_algebra(std::uint32_t k);

/// X = { s : s_0 < s_1 } in ^3U and Y_0 = 1, Y_{m+1} = c_0((c_1(Y_m - X)) . X).
struct GeneratorChain {
  std::uint32_t base = 0;
  Element x;
  std::vector<Element> y;  // Y_0 ... Y_u
};

GeneratorChain generator_chain(std::uint32_t u);

struct ExampleAlgebra {
  GeneratorChain chain;
  FiniteAlgebra algebra;  // Sg{X}
  /// Y_m = { s : s_1 >= m } for every m <= u.
  bool closed_form = false;
  /// |{Y_0, ..., Y_u}|
  std::size_t distinct = 0;
  bool all_chain_members_in_algebra = false;
};

/// Builds the chain over base u >= 2 and Sg{X} in the full set algebra of
/// signature `kind` and dimension 3 (CA by default).
ExampleAlgebra example_algebra(std::uint32_t u, SigKind kind = SigKind::CA, std::uint64_t cap = kNoCap);

/// d(a) = 1 for every atom a, hence d(x) = 1 for every x != 0.
bool is_simple(const FiniteAlgebra& a);

/// Every atom below b is fixed by every unary operator (so every x <= b is).
bool is_hereditary_closed(const FiniteAlgebra& a, const Bitset& b);

/// Preconditions: y is one of `freegens`, a != 0, a lies in the subalgebra
/// generated by the other generators (DomainError otherwise). Returns
/// a.y != 0 and a.(-y) != 0.
bool splitting_check(const FiniteAlgebra& a, std::span<const Bitset> freegens, const Bitset& x,
                     const Bitset& y);

}  // namespace cylalg
