#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cylalg/formula.hpp"
#include "cylalg/model.hpp"

namespace cylalg {

/// Replaces each v_i = v_j (i != j) by all v_k (E(v_k,v_i) <-> E(v_k,v_j)),
/// k the smallest index outside {i, j}; v_i = v_i becomes true. With three
/// variables v_k is the one not in the atom.
Formula tr(const Formula& f, const std::string& symbol = "E");

struct Quotient {
  ModelFinite model;
  /// Class of each element; classes numbered by first occurrence.
  std::vector<std::uint32_t> projection;
};

struct LeibnizResult {
  std::optional<Quotient> quotient;
  /// (a, a', b, b') with a ~ a', b ~ b' and aEb but not a'Eb' (or the
  /// reverse); present exactly when the congruence is not strong.
  std::optional<std::array<std::uint32_t, 4>> witness;
};

/// a ~ b iff every z has zEa <-> zEb. When ~ preserves E in both places the
/// quotient M/~ and the projection are returned, else a witness. The model's
/// vocabulary must be exactly {symbol/2}.
LeibnizResult leibniz_quotient(const ModelFinite& m, const std::string& symbol = "E");

}  // namespace cylalg
