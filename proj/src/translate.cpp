#include "cylalg/translate.hpp"

#include <map>

#include "cylalg/error.hpp"

namespace cylalg {

Formula tr(const Formula& f, const std::string& symbol) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom: return f;
    case FormulaKind::Eq: {
      const std::uint32_t i = f.vars()[0], j = f.vars()[1];
      if (i == j) return Formula::truth();
      std::uint32_t k = 0;
      while (k == i || k == j) ++k;
      return Formula::forall(k, Formula::iff(Formula::atom(symbol, {k, i}), Formula::atom(symbol, {k, j})));
    }
    case FormulaKind::Not: return !tr(f.body(), symbol);
    case FormulaKind::And: return tr(f.lhs(), symbol) & tr(f.rhs(), symbol);
    case FormulaKind::Or: return tr(f.lhs(), symbol) | tr(f.rhs(), symbol);
    case FormulaKind::Implies: return tr(f.lhs(), symbol).implies(tr(f.rhs(), symbol));
    case FormulaKind::Iff: return Formula::iff(tr(f.lhs(), symbol), tr(f.rhs(), symbol));
    case FormulaKind::Exists: return Formula::exists(f.bound(), tr(f.body(), symbol));
    case FormulaKind::Forall: return Formula::forall(f.bound(), tr(f.body(), symbol));
  }
  return f;
}

LeibnizResult leibniz_quotient(const ModelFinite& m, const std::string& symbol) {
  const auto vocab = m.vocabulary();
  if (vocab.size() != 1 || !vocab.contains(symbol) || vocab.arity(symbol) != 2)
    throw DomainError("Leibniz quotient needs the vocabulary {" + symbol + "/2}");
  const auto& e = m.relation(symbol);
  const std::uint32_t n = m.size();

  std::vector<Bitset> ext(n, Bitset(n));  // ext[a] = { z : zEa }
  for (std::size_t i = 0; i < e.tuple_count(); ++i) ext[e.coord(i, 1)].set(e.coord(i, 0));

  std::map<Bitset, std::uint32_t> class_of;
  std::vector<std::uint32_t> proj(n);
  std::vector<std::uint32_t> rep;
  for (std::uint32_t a = 0; a < n; ++a) {
    auto [it, fresh] = class_of.emplace(ext[a], static_cast<std::uint32_t>(rep.size()));
    if (fresh) rep.push_back(a);
    proj[a] = it->second;
  }

  // Right places agree within a class by construction; check the left place.
  for (std::uint32_t a = 0; a < n; ++a) {
    const std::uint32_t r = rep[proj[a]];
    if (r == a) continue;
    for (std::uint32_t b = 0; b < n; ++b) {
      const std::uint32_t ab[2] = {a, b};
      const std::uint32_t rb[2] = {r, b};
      if (e.contains(ab) != e.contains(rb)) {
        LeibnizResult out;
        if (e.contains(ab))
          out.witness = std::array<std::uint32_t, 4>{a, r, b, b};
        else
          out.witness = std::array<std::uint32_t, 4>{r, a, b, b};
        return out;
      }
    }
  }

  const auto classes = static_cast<std::uint32_t>(rep.size());
  std::vector<std::string> labels;
  if (!m.labels().empty())
    for (auto r : rep) labels.push_back(m.labels()[r]);
  ModelFinite q(classes, std::move(labels));
  q.add_relation(symbol, 2);
  for (std::size_t i = 0; i < e.tuple_count(); ++i)
    q.add_tuple(symbol, {proj[e.coord(i, 0)], proj[e.coord(i, 1)]});
  return LeibnizResult{Quotient{std::move(q), std::move(proj)}, std::nullopt};
}

}  // namespace cylalg
