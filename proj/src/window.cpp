#include "cylalg/window.hpp"

#include <algorithm>
#include <unordered_map>

#include "cylalg/error.hpp"

namespace cylalg {

bool WindowModel::related(std::int64_t a, std::int64_t b) const {
  if (a < b) return true;
  return a == b && std::find(fixed.begin(), fixed.end(), a) != fixed.end();
}

namespace {

using Node = Formula::Node;

class WindowEvaluator {
 public:
  explicit WindowEvaluator(const WindowModel& wm) : wm_(wm), env_(kMaxVariables, 0) {}

  std::vector<std::int64_t>& env() { return env_; }

  bool eval(const Node* n) {
    switch (n->kind) {
      case FormulaKind::True: return true;
      case FormulaKind::False: return false;
      case FormulaKind::Atom:
        if (n->symbol != "R" || n->vars.size() < 2 || n->vars.size() > 3)
          throw DomainError("window models interpret only R with 2 or 3 arguments");
        return wm_.related(env_[n->vars[0]], env_[n->vars[1]]);
      case FormulaKind::Eq: return env_[n->vars[0]] == env_[n->vars[1]];
      case FormulaKind::Not: return !eval(n->a.get());
      case FormulaKind::And: return eval(n->a.get()) && eval(n->b.get());
      case FormulaKind::Or: return eval(n->a.get()) || eval(n->b.get());
      case FormulaKind::Implies: return !eval(n->a.get()) || eval(n->b.get());
      case FormulaKind::Iff: return eval(n->a.get()) == eval(n->b.get());
      case FormulaKind::Exists:
      case FormulaKind::Forall: return quantifier(n);
    }
    return false;
  }

 private:
  bool quantifier(const Node* n) {
    std::uint64_t key = 0;
    const int nfree = __builtin_popcountll(n->free_mask);
    const bool memo = nfree <= 2;
    if (memo) {
      for (std::uint32_t v = 0; v < kMaxVariables; ++v)
        if (n->free_mask & (std::uint64_t{1} << v))
          key = (key << 32) | static_cast<std::uint32_t>(static_cast<std::int32_t>(env_[v]));
      auto& table = memo_[n];
      auto it = table.find(key);
      if (it != table.end()) return it->second;
    }
    const std::int64_t r = wm_.radius - static_cast<std::int64_t>(n->depth) * wm_.margin;
    const std::uint32_t v = n->vars[0];
    const std::int64_t saved = env_[v];
    const bool exists = n->kind == FormulaKind::Exists;
    bool result = !exists;
    for (std::int64_t c = -r; c <= r; ++c) {
      env_[v] = c;
      if (eval(n->a.get()) == exists) {
        result = exists;
        break;
      }
    }
    env_[v] = saved;
    if (memo) memo_[n][key] = result;
    return result;
  }

  const WindowModel& wm_;
  std::vector<std::int64_t> env_;
  std::unordered_map<const Node*, std::unordered_map<std::uint64_t, bool>> memo_;
};

void validate(const WindowModel& wm, const Formula& f) {
  if (wm.margin < 0) throw DomainError("window margin must be nonnegative");
  if (wm.radius <= wm.margin * static_cast<std::int64_t>(f.quantifier_depth()))
    throw DomainError("window radius " + std::to_string(wm.radius) + " does not exceed margin x depth " +
                      std::to_string(wm.margin * f.quantifier_depth()));
  for (auto c : wm.fixed)
    if (c < -wm.radius + wm.margin || c > wm.radius - wm.margin)
      throw DomainError("fixed point " + std::to_string(c) + " outside [-W+M, W-M]");
}

}  // namespace

bool eval_window_once(const WindowModel& wm, const Formula& f, std::span<const std::int64_t> assignment) {
  validate(wm, f);
  for (auto v : f.free_vars())
    if (v >= assignment.size()) throw DomainError("free variable v" + std::to_string(v) + " is unassigned");
  WindowEvaluator ev(wm);
  std::copy_n(assignment.begin(), std::min<std::size_t>(assignment.size(), kMaxVariables), ev.env().begin());
  return ev.eval(f.node());
}

WindowResult eval_window(const WindowModel& wm, const Formula& f, std::span<const std::int64_t> assignment) {
  WindowResult out;
  for (int k = 0; k < 3; ++k) {
    WindowModel scaled = wm;
    scaled.radius = wm.radius << k;
    out.radii[k] = scaled.radius;
    out.values[k] = eval_window_once(scaled, f, assignment);
  }
  out.value = out.values[0];
  out.stable = out.values[0] == out.values[1] && out.values[1] == out.values[2];
  return out;
}

}  // namespace cylalg
