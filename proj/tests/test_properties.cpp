#include <doctest.h>

#include <random>

#include "cylalg/compile.hpp"
#include "cylalg/constructions.hpp"
#include "cylalg/finite_algebra.hpp"
#include "cylalg/hf.hpp"
#include "cylalg/library.hpp"
#include "cylalg/morphism.hpp"
#include "cylalg/translate.hpp"
#include "oracles.hpp"

using namespace cylalg;

namespace {

Element random_element(std::mt19937_64& rng, const SpacePtr& sp, int density = 2) {
  Bitset b(sp->size());
  for (std::size_t k = 0; k < sp->size(); ++k)
    if (rng() % density == 0) b.set(k);
  return Element(sp, b);
}

Formula random_e_formula(std::mt19937_64& rng, int depth) {
  const auto v = [&] { return static_cast<std::uint32_t>(rng() % 3); };
  if (depth == 0 || rng() % 5 == 0) return rng() % 3 ? Formula::atom("E", {v(), v()}) : Formula::eq(v(), v());
  switch (rng() % 5) {
    case 0: return !random_e_formula(rng, depth - 1);
    case 1: return random_e_formula(rng, depth - 1) & random_e_formula(rng, depth - 1);
    case 2: return random_e_formula(rng, depth - 1) | random_e_formula(rng, depth - 1);
    case 3: return Formula::exists(v(), random_e_formula(rng, depth - 1));
    default: return Formula::forall(v(), random_e_formula(rng, depth - 1));
  }
}

oracle::Model from_library(const ModelFinite& m) {
  oracle::Model o;
  o.size = m.size();
  o.rels["E"];
  for (const auto& t : m.relation("E").tuples()) o.rels["E"].insert(t);
  return o;
}

}  // namespace

TEST_CASE("discriminator lemma on every element of small full set algebras") {
  for (SigKind kind : {SigKind::DF, SigKind::SC, SigKind::CA}) {
    for (auto [u, n] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
      if (std::uint64_t{1} << (oracle::ipow(u, n)) > (1u << 16)) continue;
      SetAlgebra amb(kind, u, n);
      const auto size = amb.space()->size();
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << size); ++m) {
        Bitset x(size);
        for (std::size_t k = 0; k < size; ++k) x.assign(k, (m >> k) & 1U);
        const Bitset d = discriminator(amb.element(x)).bits();
        CHECK(x.is_subset_of(d));
        CHECK(discriminator(amb.element(d)).bits().is_subset_of(d));
        for (const auto& op : amb.signature().operators())
          if (op.arity() == 1) CHECK(amb.apply(op, std::span<const Bitset>(&x, 1)).is_subset_of(d));
      }
    }
  }
}

TEST_CASE("discriminator lemma on random elements of larger spaces") {
  std::mt19937_64 rng(31);
  SetAlgebra amb(SigKind::CA, 4, 3);
  for (int t = 0; t < 200; ++t) {
    const Element x = random_element(rng, amb.space(), 1 + static_cast<int>(rng() % 40));
    const Element d = discriminator(x);
    CHECK(x <= d);
    for (std::uint32_t i = 0; i < 3; ++i) CHECK(cyl(i, x) <= d);
  }
}

TEST_CASE("closure soundness on random two-generator subalgebras") {
  std::mt19937_64 rng(32);
  for (SigKind kind : {SigKind::DF, SigKind::SC, SigKind::CA}) {
    SetAlgebra amb(kind, 2, 3);
    for (int t = 0; t < 4; ++t) {
      const std::vector<Element> gens{random_element(rng, amb.space()), random_element(rng, amb.space())};
      const FiniteAlgebra a = generate_subalgebra(amb, gens, std::uint64_t{1} << 16);
      for (const auto& g : gens) CHECK(a.locate(g.bits()).has_value());
      // Each operator applied to each atom is a union of atoms.
      for (std::size_t k = 0; k < a.atom_count(); ++k) {
        const Bitset rk = a.represent(a.atom(k));
        for (const auto& op : amb.signature().operators())
          if (op.arity() == 1) CHECK(a.locate(amb.apply(op, std::span<const Bitset>(&rk, 1))).has_value());
      }
    }
  }
}

TEST_CASE("atoms below a hereditarily closed b number at most 2^m") {
  std::mt19937_64 rng(33);
  for (std::uint32_t m = 1; m <= 2; ++m)
    for (SigKind kind : {SigKind::DF, SigKind::CA}) {
      SetAlgebra amb(kind, 2, 2);
      for (int t = 0; t < 10; ++t) {
        std::vector<Element> gens;
        for (std::uint32_t k = 0; k < m; ++k) gens.push_back(random_element(rng, amb.space()));
        const FiniteAlgebra a = generate_subalgebra(amb, gens);
        a.for_each_element([&](const Bitset& b) {
          if (is_hereditary_closed(a, b)) CHECK(b.count() <= (std::size_t{1} << m));
        });
      }
    }
}

TEST_CASE("decomposition round-trips whenever its precondition passes") {
  const FiniteAlgebra e = example_algebra(2).algebra;
  const FiniteAlgebra p = product(e, e);
  std::size_t done = 0;
  p.for_each_element([&](const Bitset& b) {
    const auto d = decompose_by_zero_dimensional(p, b);
    if (const auto* dec = std::get_if<Decomposition>(&d)) {
      ++done;
      CHECK(is_isomorphism(p, dec->product, dec->iso));
      CHECK(dec->left.atom_count() == b.count());
    } else {
      const Bitset w = std::get<DecompositionFailure>(d).witness_atom;
      CHECK(w.count() == 1);
      CHECK(w.is_subset_of(principal_ideal(p, b).closure));
      CHECK(w.is_subset_of(principal_ideal(p, ~b).closure));
    }
  });
  // 0, 1 and the two coordinate units
  CHECK(done == 4);
}

TEST_CASE("tr soundness on HF universes up to rank 4") {
  // Naive evaluation up to rank 3; the memoized evaluator (itself checked
  // against the naive one) at rank 4.
  std::mt19937_64 rng(34);
  for (std::uint32_t r = 1; r <= 3; ++r) {
    const oracle::Model m = from_library(hf_universe(r).model());
    for (int t = 0; t < 60; ++t) {
      const Formula f = random_e_formula(rng, 4);
      CHECK(oracle::satisfaction(m, f, 3) == oracle::satisfaction(m, tr(f), 3));
    }
  }
  const ModelFinite m4 = hf_universe(4).model();
  for (int t = 0; t < 60; ++t) {
    const Formula f = random_e_formula(rng, 4);
    CHECK(satisfaction_set(m4, f, 3) == satisfaction_set(m4, tr(f), 3));
  }
  const auto& lib = formula_library();
  for (const char* name : {"singleton", "pair", "p0", "p1", "succ", "lt", "Ord", "Ford"})
    CHECK_MESSAGE(satisfaction_set(m4, lib[name], 3) == satisfaction_set(m4, tr(lib[name]), 3), name);
}

TEST_CASE("quotient transfer on every E-model over at most 3 points") {
  std::mt19937_64 rng(35);
  std::vector<Formula> fs;
  for (int t = 0; t < 25; ++t) {
    Formula f = random_e_formula(rng, 4);
    for (std::uint32_t v : {0u, 1u, 2u}) f = Formula::exists(v, f);
    fs.push_back(f);
  }
  std::size_t passing = 0;
  for (std::uint32_t size = 1; size <= 3; ++size)
    for (const auto& om : oracle::all_binary_models(size)) {
      const LeibnizResult q = leibniz_quotient(om.to_library({{"E", 2}}));
      if (!q.quotient) continue;
      ++passing;
      const oracle::Model qm = from_library(q.quotient->model);
      for (const auto& f : fs) {
        oracle::Tuple s(kMaxVariables, 0), s2(kMaxVariables, 0);
        CHECK(oracle::eval(om, tr(f), s) == oracle::eval(qm, f, s2));
      }
    }
  CHECK(passing > 100);
}

TEST_CASE("the oracles catch a corrupted compiler output") {
  // A compiled term with one cylindrification index changed must disagree
  // with the satisfaction set on some model.
  const Formula f = parse_formula("ex v1 (E(v0,v1) & !E(v1,v0))");
  CompileOptions opts;
  opts.vocabulary = Vocabulary{{"E", 2}};
  const CompiledTerm ct = compile_to_term(f, opts);
  const std::string text = to_string(ct.term);
  const auto pos = text.find("(cyl 1");
  REQUIRE(pos != std::string::npos);
  std::string mutated = text;
  mutated.replace(pos, 6, "(cyl 2");
  const Term bad = parse_term(mutated);
  bool caught = false;
  for (const auto& om : oracle::all_binary_models(2)) {
    const ModelFinite m = om.to_library({{"E", 2}});
    const SetAlgebra cs(SigKind::CA, 2, 3);
    const auto env = natural_atom_sets(m, ct.vocabulary, 3);
    CHECK(oracle::from_bits(evaluate(ct.term, env, cs).bits()) == oracle::satisfaction(om, f, 3));
    caught = caught || oracle::from_bits(evaluate(bad, env, cs).bits()) != oracle::satisfaction(om, f, 3);
  }
  CHECK(caught);
}
