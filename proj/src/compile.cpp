#include "cylalg/compile.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <unordered_map>

#include "cylalg/error.hpp"

namespace cylalg {

namespace {

using Node = Formula::Node;

bool natural(const std::vector<std::uint32_t>& args) {
  for (std::uint32_t k = 0; k < args.size(); ++k)
    if (args[k] != k) return false;
  return true;
}

std::optional<Formula> find_unrestricted(const Formula& f, std::uint32_t n) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return std::nullopt;
    case FormulaKind::Atom:
      if (!natural(f.vars()) || f.vars().size() > n) return f;
      return std::nullopt;
    case FormulaKind::Eq:
      if (f.vars()[0] >= n || f.vars()[1] >= n) return f;
      return std::nullopt;
    case FormulaKind::Not: return find_unrestricted(f.body(), n);
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      if (f.bound() >= n) return f;
      return find_unrestricted(f.body(), n);
    default:
      if (auto g = find_unrestricted(f.lhs(), n)) return g;
      return find_unrestricted(f.rhs(), n);
  }
}

}  // namespace

bool is_restricted(const Formula& f, std::uint32_t n) { return !find_unrestricted(f, n).has_value(); }

std::optional<Formula> first_unrestricted(const Formula& f, std::uint32_t n) { return find_unrestricted(f, n); }

std::vector<std::pair<std::uint32_t, std::uint32_t>> replacement_path(std::span<const std::uint32_t> target,
                                                                      std::uint32_t n) {
  const std::size_t k = target.size();
  if (k > n) throw DomainError("atom has more places than there are variables");
  for (auto t : target)
    if (t >= n) throw DomainError("target coordinate out of range");
  double states = 1;
  for (std::size_t i = 0; i < k; ++i) states *= n;
  if (states > 1e6) throw CapacityError("replacement search space too large");

  using Map = std::vector<std::uint32_t>;
  Map start(k);
  for (std::uint32_t i = 0; i < k; ++i) start[i] = i;
  const Map goal(target.begin(), target.end());
  std::map<Map, std::pair<Map, std::pair<std::uint32_t, std::uint32_t>>> parent;
  std::queue<Map> frontier;
  frontier.push(start);
  parent.emplace(start, std::make_pair(start, std::make_pair(0U, 0U)));
  while (!frontier.empty()) {
    const Map cur = frontier.front();
    frontier.pop();
    if (cur == goal) break;
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b) {
        if (a == b) continue;
        Map next = cur;
        for (auto& x : next)
          if (x == a) x = b;
        if (next == cur || parent.count(next)) continue;
        parent.emplace(next, std::make_pair(cur, std::make_pair(a, b)));
        frontier.push(next);
      }
  }
  if (!parent.count(goal)) throw DomainError("argument pattern not reachable by replacements in n variables");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> path;
  for (Map cur = goal; cur != start;) {
    const auto& [prev, step] = parent.at(cur);
    path.push_back(step);
    cur = prev;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

std::vector<std::uint32_t> fresh_vars(const std::vector<std::uint32_t>& used, std::size_t count) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; out.size() < count; ++v) {
    if (v >= kMaxVariables) throw CapacityError("out of variables");
    if (std::find(used.begin(), used.end(), v) == used.end()) out.push_back(v);
  }
  return out;
}

template <class AtomFn>
Formula map_atoms(const Formula& f, AtomFn&& fn) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Eq: return f;
    case FormulaKind::Atom: return fn(f);
    case FormulaKind::Not: return !map_atoms(f.body(), fn);
    case FormulaKind::And: return map_atoms(f.lhs(), fn) & map_atoms(f.rhs(), fn);
    case FormulaKind::Or: return map_atoms(f.lhs(), fn) | map_atoms(f.rhs(), fn);
    case FormulaKind::Implies: return map_atoms(f.lhs(), fn).implies(map_atoms(f.rhs(), fn));
    case FormulaKind::Iff: return Formula::iff(map_atoms(f.lhs(), fn), map_atoms(f.rhs(), fn));
    case FormulaKind::Exists: return Formula::exists(f.bound(), map_atoms(f.body(), fn));
    case FormulaKind::Forall: return Formula::forall(f.bound(), map_atoms(f.body(), fn));
  }
  return f;
}

std::uint32_t declared_arity(const Vocabulary& vocab, const Formula& atom) {
  const std::uint32_t k = vocab.arity(atom.symbol());
  if (atom.vars().size() > k)
    throw DomainError("atom " + to_string(atom) + " has more arguments than " + atom.symbol() + "/" +
                      std::to_string(k));
  return k;
}

// An atom's semantic shape: a set depending on coordinates 0..k-1 (the
// natural atom, possibly with trailing places projected out) and the map
// sending those coordinates to the atom's variables.
struct AtomPlan {
  std::uint32_t declared = 0;
  std::uint32_t projected_from = 0;  // places >= this are quantified away
  std::vector<std::uint32_t> target;
};

AtomPlan plan_atom(const Vocabulary& vocab, const Formula& atom, AbbrevReading reading) {
  AtomPlan p;
  p.declared = declared_arity(vocab, atom);
  p.target = atom.vars();
  const auto m = static_cast<std::uint32_t>(p.target.size());
  p.projected_from = p.declared;
  if (m < p.declared) {
    if (reading == AbbrevReading::Exists) {
      p.projected_from = m;
    } else {
      if (m == 0) throw DomainError("diagonal reading needs at least one argument");
      p.target.resize(p.declared, p.target.back());
    }
  }
  return p;
}

std::vector<std::uint32_t> iota(std::uint32_t k) {
  std::vector<std::uint32_t> v(k);
  for (std::uint32_t i = 0; i < k; ++i) v[i] = i;
  return v;
}

}  // namespace

Formula expand_abbreviations(const Formula& f, const Vocabulary& vocab, AbbrevReading reading) {
  return map_atoms(f, [&](const Formula& atom) {
    const std::uint32_t k = declared_arity(vocab, atom);
    std::vector<std::uint32_t> args = atom.vars();
    if (args.size() == k) return atom;
    if (reading == AbbrevReading::Diagonal) {
      if (args.empty()) throw DomainError("diagonal reading needs at least one argument");
      args.resize(k, args.back());
      return Formula::atom(atom.symbol(), args);
    }
    const auto fresh = fresh_vars(args, k - args.size());
    args.insert(args.end(), fresh.begin(), fresh.end());
    Formula g = Formula::atom(atom.symbol(), args);
    for (auto v = fresh.rbegin(); v != fresh.rend(); ++v) g = Formula::exists(*v, g);
    return g;
  });
}

Formula restrict_atoms(const Formula& f, std::uint32_t n, const Vocabulary& vocab, AbbrevReading reading) {
  return map_atoms(f, [&](const Formula& atom) {
    const AtomPlan p = plan_atom(vocab, atom, reading);
    if (p.declared > n) throw DomainError("symbol " + atom.symbol() + " has more places than n");
    Formula g = Formula::atom(atom.symbol(), iota(p.declared));
    for (std::uint32_t v = p.declared; v-- > p.projected_from;) g = Formula::exists(v, g);
    for (const auto& [a, b] : replacement_path(p.target, n))
      g = Formula::exists(a, Formula::eq(a, b) & g);
    return g;
  });
}

namespace {

class Compiler {
 public:
  Compiler(const CompileOptions& opts, Vocabulary vocab) : opts_(opts), vocab_(std::move(vocab)) {}

  Term compile(const Formula& f) {
    auto it = memo_.find(f.node());
    if (it != memo_.end()) return it->second;
    Term t = build(f);
    memo_.emplace(f.node(), t);
    return t;
  }

  const Vocabulary& vocabulary() const { return vocab_; }

 private:
  void check_var(std::uint32_t v) const {
    if (v >= opts_.n)
      throw DomainError("variable v" + std::to_string(v) + " outside n = " + std::to_string(opts_.n));
  }

  Term substitution(std::uint32_t a, std::uint32_t b, Term x) const {
    if (opts_.target == Target::SC) return Term::subst(a, b, std::move(x));
    return Term::cyl(a, Term::diag(a, b) & x);
  }

  Term atom(const Formula& f) {
    for (auto v : f.vars()) check_var(v);
    const AtomPlan p = plan_atom(vocab_, f, opts_.reading);
    if (p.declared > opts_.n) throw DomainError("symbol " + f.symbol() + " has more places than n");
    Term t = Term::var(static_cast<std::uint32_t>(vocab_.index_of(f.symbol())));
    for (std::uint32_t v = p.declared; v-- > p.projected_from;) t = Term::cyl(v, t);
    const bool is_natural = p.target == iota(static_cast<std::uint32_t>(p.target.size()));
    if (!is_natural && opts_.target == Target::CA && opts_.require_restricted)
      throw DomainError("unrestricted atom " + to_string(f));
    for (const auto& [a, b] : replacement_path(p.target, opts_.n)) t = substitution(a, b, t);
    return t;
  }

  Term build(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::True: return Term::one();
      case FormulaKind::False: return Term::zero();
      case FormulaKind::Atom: return atom(f);
      case FormulaKind::Eq: {
        const auto i = f.vars()[0], j = f.vars()[1];
        check_var(i);
        check_var(j);
        if (opts_.target == Target::SC) throw MismatchError("equality atom " + to_string(f) + " under SC");
        if (i == j) return Term::one();
        return Term::diag(std::min(i, j), std::max(i, j));
      }
      case FormulaKind::Not: return !compile(f.body());
      case FormulaKind::And: return compile(f.lhs()) & compile(f.rhs());
      case FormulaKind::Or: return compile(f.lhs()) | compile(f.rhs());
      case FormulaKind::Implies: return compile(f.lhs()).implies(compile(f.rhs()));
      case FormulaKind::Iff: {
        const Term l = compile(f.lhs()), r = compile(f.rhs());
        return l.implies(r) & r.implies(l);
      }
      case FormulaKind::Exists:
        check_var(f.bound());
        return Term::cyl(f.bound(), compile(f.body()));
      case FormulaKind::Forall:
        check_var(f.bound());
        return !Term::cyl(f.bound(), !compile(f.body()));
    }
    throw DomainError("unknown formula node");
  }

  const CompileOptions& opts_;
  Vocabulary vocab_;
  std::unordered_map<const Node*, Term> memo_;
};

}  // namespace

CompiledTerm compile_to_term(const Formula& f, const CompileOptions& opts) {
  if (opts.n == 0) throw DomainError("n must be at least 1");
  Vocabulary vocab = opts.vocabulary ? *opts.vocabulary : vocabulary_of(f);
  Compiler c(opts, vocab);
  Term t = c.compile(f);
  const SigKind kind = opts.target == Target::CA ? SigKind::CA : SigKind::SC;
  return CompiledTerm{t, std::move(vocab), Signature::make(kind, opts.n)};
}

std::vector<Element> natural_atom_sets(const ModelFinite& m, const Vocabulary& vocab, std::uint32_t n) {
  std::vector<Element> out;
  for (const auto& name : vocab.symbols())
    out.push_back(satisfaction_set(m, Formula::atom(name, iota(vocab.arity(name))), n));
  return out;
}

}  // namespace cylalg
