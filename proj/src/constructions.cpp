#include "cylalg/constructions.hpp"

#include <algorithm>
#include <set>

#include "cylalg/error.hpp"

namespace cylalg {

FreeBA free_boolean_algebra(std::uint32_t k) {
  if (k > 4) throw CapacityError("free Boolean algebra limited to 4 generators");
  const std::size_t n = std::size_t{1} << k;
  std::vector<Bitset> reprs;
  for (std::size_t f = 0; f < n; ++f) reprs.push_back(Bitset::single(n, f));
  SpacePtr space = k > 0 ? TupleSpace::make(2, k) : nullptr;
  FiniteAlgebra alg(Signature::make(SigKind::BA), n, {}, std::move(reprs), std::move(space));
  std::vector<Bitset> gens;
  for (std::uint32_t i = 0; i < k; ++i) {
    Bitset g(n);
    for (std::size_t f = 0; f < n; ++f)
      if ((f >> i) & 1U) g.set(f);
    gens.push_back(std::move(g));
  }
  return FreeBA{std::move(alg), std::move(gens)};
}

GeneratorChain generator_chain(std::uint32_t u) {
  if (u < 2) throw DomainError("the example needs |U| >= 2");
  auto space = TupleSpace::make(u, 3);
  Element x = Element::from_predicate(space, [](auto s) { return s[0] < s[1]; });
  std::vector<Element> y{Element::full(space)};
  for (std::uint32_t m = 0; m < u; ++m) y.push_back(cyl(0, cyl(1, y.back() - x) & x));
  return GeneratorChain{u, std::move(x), std::move(y)};
}

ExampleAlgebra example_algebra(std::uint32_t u, SigKind kind, std::uint64_t cap) {
  GeneratorChain chain = generator_chain(u);
  const auto& space = chain.x.space_ptr();
  bool closed = true;
  for (std::uint32_t m = 0; m <= u; ++m) {
    const Element expect = Element::from_predicate(space, [m](auto s) { return s[1] >= m; });
    closed = closed && chain.y[m] == expect;
  }
  std::set<Bitset> values;
  for (const auto& e : chain.y) values.insert(e.bits());

  const SetAlgebra ambient(kind, u, 3);
  const Element gens[1] = {chain.x};
  FiniteAlgebra alg = generate_subalgebra(ambient, gens, cap);
  bool members = true;
  for (const auto& e : chain.y) members = members && alg.locate(e.bits()).has_value();
  const std::size_t distinct = values.size();
  return ExampleAlgebra{std::move(chain), std::move(alg), closed, distinct, members};
}

bool is_simple(const FiniteAlgebra& a) {
  if (a.is_degenerate()) return false;
  if (a.signature().kind() == SigKind::BA) return a.atom_count() == 1;
  const Bitset one = a.one();
  for (std::size_t k = 0; k < a.atom_count(); ++k)
    if (!(discriminator(a, a.atom(k)) == one)) return false;
  return true;
}

bool is_hereditary_closed(const FiniteAlgebra& a, const Bitset& b) {
  a.check_element(b);
  bool ok = true;
  b.for_each_set([&](std::size_t x) {
    for (const auto& t : a.tables())
      if (t.op.arity() == 1 && !(t.values[x] == a.atom(x))) ok = false;
  });
  return ok;
}

bool splitting_check(const FiniteAlgebra& a, std::span<const Bitset> freegens, const Bitset& x,
                     const Bitset& y) {
  a.check_element(x);
  a.check_element(y);
  const auto it = std::find(freegens.begin(), freegens.end(), y);
  if (it == freegens.end()) throw DomainError("y is not one of the free generators");
  if (x.none()) throw DomainError("a must be nonzero");
  std::vector<Bitset> others;
  for (auto g = freegens.begin(); g != freegens.end(); ++g)
    if (g != it) others.push_back(*g);
  const FiniteAlgebra sub = generate_subalgebra(a, others);
  if (!sub.locate(x)) throw DomainError("a is not generated by the remaining generators");
  return (x & y).any() && (x - y).any();
}

}  // namespace cylalg
