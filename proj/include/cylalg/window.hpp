#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cylalg/formula.hpp"

namespace cylalg {

/// Finite window onto (Z, R*) with R* = { (a,b) : a < b } u { (c,c) : c in F }.
/// A quantifier heading a subformula of quantifier depth h ranges over
/// [-(W - hM), W - hM], so inner quantifiers see a wider range than the
/// outer ones and every witness an inner quantifier needs near an outer
/// value stays inside its range.
struct WindowModel {
  std::int64_t radius = 16;  // W
  std::int64_t margin = 2;   // M
  std::vector<std::int64_t> fixed{0};  // F

  bool related(std::int64_t a, std::int64_t b) const;
};

struct WindowResult {
  /// Value at radius W.
  bool value = false;
  /// Same value at radii W, 2W and 4W.
  bool stable = false;
  std::array<std::int64_t, 3> radii{};
  std::array<bool, 3> values{};
};

/// Atoms must use the symbol R with 2 or 3 arguments; R(a,b,c) reads as
/// R*(a,b). Requires W > M * depth(f) and F inside [-W+M, W-M]
/// (DomainError otherwise). `assignment` gives values of free variables.
bool eval_window_once(const WindowModel& wm, const Formula& f, std::span<const std::int64_t> assignment = {});
WindowResult eval_window(const WindowModel& wm, const Formula& f, std::span<const std::int64_t> assignment = {});

}  // namespace cylalg
