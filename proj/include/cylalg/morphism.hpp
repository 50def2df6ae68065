#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cylalg/finite_algebra.hpp"

namespace cylalg {

/// A Boolean homomorphism A -> B given by the images of the atoms of A.
/// The images are pairwise disjoint and join to 1 in B.
struct Homomorphism {
  std::vector<Bitset> atom_images;
  std::size_t target_atoms = 0;

  Bitset apply(const Bitset& x) const;
};

/// Checks the Boolean conditions on atom images and that every operator
/// commutes with the map on atoms (which suffices by additivity).
bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const Homomorphism& h);

/// An isomorphism is a bijection between atoms.
struct Isomorphism {
  std::vector<std::size_t> atom_map;

  Bitset apply(const Bitset& x) const;
  Homomorphism as_homomorphism() const;
};

bool is_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const Isomorphism& iso);

/// Default search budget: carriers up to 2^12.
inline constexpr std::size_t kIsoMaxAtoms = 12;

/// Backtracking over atom bijections with per-atom invariants and incremental
/// table checks. Returns nullopt for different signatures or sizes. Throws
/// CapacityError above `max_atoms` atoms.
std::optional<Isomorphism> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                            std::size_t max_atoms = kIsoMaxAtoms);

/// The element 0 of A would have to map to both 0 and `second` (nonzero).
struct HomWitness {
  Bitset element;
  Bitset first;
  Bitset second;
};

/// Extends gens[i] -> images[i] to a homomorphism A -> B by generating the
/// relation { (g_i, h_i) } inside A x B. Throws DomainError when `gens` does
/// not generate A or the lists differ in length.
std::variant<Homomorphism, HomWitness> extend_homomorphism(const FiniteAlgebra& a,
                                                           std::span<const Bitset> gens,
                                                           const FiniteAlgebra& b,
                                                           std::span<const Bitset> images);

/// BA signature: every meet of the y_i and their complements is nonzero.
/// Other signatures: every map Y -> B, for each B in `probes`, extends to a
/// homomorphism on Sg(Y); an empty probe family is a DomainError.
bool is_independent(const FiniteAlgebra& a, std::span<const Bitset> y,
                    std::span<const FiniteAlgebra> probes = {});

struct Decomposition {
  FiniteAlgebra left;     // Rl_b A
  FiniteAlgebra right;    // Rl_{-b} A
  FiniteAlgebra product;  // left x right
  Isomorphism iso;        // A -> product, x |-> (x.b, x.-b)
};

struct DecompositionFailure {
  /// An atom below both Ig{b} and Ig{-b}.
  Bitset witness_atom;
};

std::variant<Decomposition, DecompositionFailure> decompose_by_zero_dimensional(const FiniteAlgebra& a,
                                                                                const Bitset& b);

}  // namespace cylalg
