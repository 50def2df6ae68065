#pragma once

// Brute-force reference implementations. Nothing here calls the library's
// algorithms; values are built from definitions by plain enumeration.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cylalg/bitset.hpp"
#include "cylalg/formula.hpp"
#include "cylalg/model.hpp"
#include "cylalg/space.hpp"

namespace oracle {

using Tuple = std::vector<std::uint32_t>;
using Set = std::vector<bool>;  // indexed by tuple number

// Every tuple of ^n u, coordinate 0 varying fastest.
inline std::vector<Tuple> all_tuples(std::uint32_t u, std::uint32_t n) {
  std::vector<Tuple> out;
  Tuple t(n, 0);
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < n; ++i) total *= u;
  for (std::uint64_t k = 0; k < total; ++k) {
    out.push_back(t);
    for (std::uint32_t i = 0; i < n; ++i) {
      if (++t[i] < u) break;
      t[i] = 0;
    }
  }
  return out;
}

// Plain set algebra over ^n u with tuples looked up linearly.
struct SetAlg {
  std::uint32_t u, n;
  std::vector<Tuple> tuples;

  SetAlg(std::uint32_t base, std::uint32_t dim) : u(base), n(dim), tuples(all_tuples(base, dim)) {}

  std::size_t size() const { return tuples.size(); }
  std::size_t find(const Tuple& t) const {
    return static_cast<std::size_t>(std::find(tuples.begin(), tuples.end(), t) - tuples.begin());
  }
  Set empty() const { return Set(size(), false); }
  Set full() const { return Set(size(), true); }
  Set cyl(std::uint32_t i, const Set& x) const {
    Set out = empty();
    for (std::size_t k = 0; k < size(); ++k)
      for (std::uint32_t v = 0; v < u && !out[k]; ++v) {
        Tuple t = tuples[k];
        t[i] = v;
        out[k] = x[find(t)];
      }
    return out;
  }
  Set diag(std::uint32_t i, std::uint32_t j) const {
    Set out = empty();
    for (std::size_t k = 0; k < size(); ++k) out[k] = tuples[k][i] == tuples[k][j];
    return out;
  }
  Set subst(std::uint32_t i, std::uint32_t j, const Set& x) const {
    Set out = empty();
    for (std::size_t k = 0; k < size(); ++k) {
      Tuple t = tuples[k];
      t[i] = t[j];
      out[k] = x[find(t)];
    }
    return out;
  }
};

inline Set meet(const Set& a, const Set& b) {
  Set o(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) o[k] = a[k] && b[k];
  return o;
}
inline Set join(const Set& a, const Set& b) {
  Set o(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) o[k] = a[k] || b[k];
  return o;
}
inline Set complement(const Set& a) {
  Set o(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) o[k] = !a[k];
  return o;
}
inline bool leq(const Set& a, const Set& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] && !b[k]) return false;
  return true;
}
inline bool none(const Set& a) { return std::none_of(a.begin(), a.end(), [](bool b) { return b; }); }

inline Set from_bits(const cylalg::Bitset& b) {
  Set s(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) s[k] = b.test(k);
  return s;
}
inline cylalg::Bitset to_bits(const Set& s) {
  cylalg::Bitset b(s.size());
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k]) b.set(k);
  return b;
}

// Least family containing gens, closed under complement, join and the given
// unary operators. Fixpoint iteration over all pairs; use on small algebras.
inline std::set<Set> closure(const std::vector<Set>& gens, const std::vector<std::function<Set(const Set&)>>& ops,
                             std::size_t nbits, std::size_t limit = 1u << 12) {
  std::set<Set> s(gens.begin(), gens.end());
  s.insert(Set(nbits, false));
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Set> cur(s.begin(), s.end());
    auto add = [&](Set x) {
      if (s.insert(std::move(x)).second) changed = true;
    };
    for (const auto& x : cur) {
      add(complement(x));
      for (const auto& f : ops) add(f(x));
    }
    for (std::size_t a = 0; a < cur.size(); ++a)
      for (std::size_t b = a + 1; b < cur.size(); ++b) add(join(cur[a], cur[b]));
    if (s.size() > limit) return s;
  }
  return s;
}

// Minimal nonzero members of a finite Boolean family.
inline std::vector<Set> minimal_nonzero(const std::set<Set>& family) {
  std::vector<Set> out;
  for (const auto& x : family) {
    if (none(x)) continue;
    bool minimal = true;
    for (const auto& y : family)
      if (!none(y) && y != x && leq(y, x)) minimal = false;
    if (minimal) out.push_back(x);
  }
  return out;
}

// Relational structure with tuple sets, evaluated by naive recursion.
struct Model {
  std::uint32_t size = 0;
  std::map<std::string, std::set<Tuple>> rels;

  cylalg::ModelFinite to_library(const std::map<std::string, std::uint32_t>& arities) const {
    cylalg::ModelFinite m(size);
    for (const auto& [name, ar] : arities) m.add_relation(name, ar);
    for (const auto& [name, ts] : rels)
      for (const auto& t : ts) m.add_tuple(name, t);
    return m;
  }
};

inline bool eval(const Model& m, const cylalg::Formula& f, Tuple& s) {
  using K = cylalg::FormulaKind;
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: {
      Tuple t;
      for (auto v : f.vars()) t.push_back(s[v]);
      auto it = m.rels.find(f.symbol());
      if (it == m.rels.end()) return false;
      // Fewer arguments than stored places: some completion is present.
      for (const auto& row : it->second)
        if (t.size() <= row.size() && std::equal(t.begin(), t.end(), row.begin())) return true;
      return false;
    }
    case K::Eq: return s[f.vars()[0]] == s[f.vars()[1]];
    case K::Not: return !eval(m, f.lhs(), s);
    case K::And: return eval(m, f.lhs(), s) && eval(m, f.rhs(), s);
    case K::Or: return eval(m, f.lhs(), s) || eval(m, f.rhs(), s);
    case K::Implies: return !eval(m, f.lhs(), s) || eval(m, f.rhs(), s);
    case K::Iff: return eval(m, f.lhs(), s) == eval(m, f.rhs(), s);
    case K::Exists:
    case K::Forall: {
      const auto v = f.bound();
      const auto saved = s[v];
      const bool ex = f.kind() == K::Exists;
      bool result = !ex;
      for (std::uint32_t a = 0; a < m.size; ++a) {
        s[v] = a;
        if (eval(m, f.body(), s) == ex) {
          result = ex;
          break;
        }
      }
      s[v] = saved;
      return result;
    }
  }
  return false;
}

// Satisfaction set over ^n size, indexed like all_tuples.
inline Set satisfaction(const Model& m, const cylalg::Formula& f, std::uint32_t n) {
  const auto ts = all_tuples(m.size, n);
  Set out(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    Tuple s = ts[k];
    s.resize(cylalg::kMaxVariables, 0);
    out[k] = eval(m, f, s);
  }
  return out;
}

// All binary relations E on a carrier of the given size.
inline std::vector<Model> all_binary_models(std::uint32_t size, const std::string& sym = "E") {
  std::vector<Model> out;
  const std::uint32_t cells = size * size;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
    Model m;
    m.size = size;
    m.rels[sym];
    for (std::uint32_t c = 0; c < cells; ++c)
      if ((mask >> c) & 1U) m.rels[sym].insert({c % size, c / size});
    out.push_back(std::move(m));
  }
  return out;
}

// Hereditarily finite sets built as nested sorted vectors by powersets.
struct HF {
  std::vector<HF> members;
  bool operator==(const HF& o) const { return members == o.members; }
  bool operator<(const HF& o) const { return code() < o.code(); }
  std::uint64_t code() const {
    std::uint64_t c = 0;
    for (const auto& m : members) c += std::uint64_t{1} << m.code();
    return c;
  }
  bool has(const HF& x) const { return std::find(members.begin(), members.end(), x) != members.end(); }
};

// Sets of rank below r, built as the powerset of the previous level.
inline std::vector<HF> level(std::uint32_t r) {
  std::vector<HF> v;
  if (r == 0) return v;
  const auto prev = level(r - 1);
  if (prev.size() > 16) return v;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << prev.size()); ++mask) {
    HF s;
    for (std::size_t k = 0; k < prev.size(); ++k)
      if ((mask >> k) & 1U) s.members.push_back(prev[k]);
    std::sort(s.members.begin(), s.members.end());
    v.push_back(std::move(s));
  }
  std::sort(v.begin(), v.end());
  return v;
}

inline HF von_neumann(std::uint32_t n) {
  HF s;
  for (std::uint32_t k = 0; k < n; ++k) s.members.push_back(von_neumann(k));
  std::sort(s.members.begin(), s.members.end());
  return s;
}

inline HF kpair(const HF& a, const HF& b) {
  HF sa, sab, out;
  sa.members = {a};
  sab.members = {a};
  if (!(a == b)) sab.members.push_back(b);
  std::sort(sab.members.begin(), sab.members.end());
  out.members = {sa};
  if (!(sa == sab)) out.members.push_back(sab);
  std::sort(out.members.begin(), out.members.end());
  return out;
}

inline std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace oracle
