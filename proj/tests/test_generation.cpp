#include <doctest.h>

#include <random>
#include <sstream>

#include "cylalg/constructions.hpp"
#include "cylalg/error.hpp"
#include "cylalg/finite_algebra.hpp"
#include "cylalg/morphism.hpp"
#include "cylalg/space.hpp"
#include "oracles.hpp"

using namespace cylalg;

namespace {

Element random_element(std::mt19937_64& rng, const SpacePtr& sp) {
  Bitset b(sp->size());
  for (std::size_t k = 0; k < sp->size(); ++k)
    if (rng() & 1U) b.set(k);
  return Element(sp, b);
}

// Oracle family of Sg{gens} in the full set algebra of the given kind.
std::set<oracle::Set> oracle_subalgebra(SigKind kind, std::uint32_t u, std::uint32_t n,
                                        const std::vector<Element>& gens) {
  const oracle::SetAlg o(u, n);
  std::vector<oracle::Set> g;
  for (const auto& e : gens) g.push_back(oracle::from_bits(e.bits()));
  std::vector<std::function<oracle::Set(const oracle::Set&)>> ops;
  if (kind != SigKind::BA)
    for (std::uint32_t i = 0; i < n; ++i) ops.push_back([&o, i](const oracle::Set& x) { return o.cyl(i, x); });
  if (kind == SigKind::CA)
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j) g.push_back(o.diag(i, j));
  if (kind == SigKind::SC)
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if (i != j) ops.push_back([&o, i, j](const oracle::Set& x) { return o.subst(i, j, x); });
  return oracle::closure(g, ops, o.size());
}

std::set<oracle::Set> library_family(const FiniteAlgebra& a) {
  std::set<oracle::Set> out;
  for (const auto& x : a.elements()) out.insert(oracle::from_bits(a.represent(x)));
  return out;
}

// Exhaustive closure check: every operator maps every element into the carrier.
bool carrier_closed(const FiniteAlgebra& a, const SetAlgebra& amb) {
  const auto fam = library_family(a);
  for (const auto& x : a.elements()) {
    const Bitset rx = a.represent(x);
    for (const auto& op : amb.signature().operators()) {
      if (op.arity() != 1) continue;
      const Bitset fx = amb.apply(op, std::span<const Bitset>(&rx, 1));
      if (!fam.count(oracle::from_bits(fx))) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("closure") {
  TEST_CASE("generated subalgebras match the oracle closure") {
    std::mt19937_64 rng(11);
    for (SigKind kind : {SigKind::BA, SigKind::DF, SigKind::CA, SigKind::SC}) {
      for (int trial = 0; trial < 6; ++trial) {
        SetAlgebra amb(kind, 2, 2);
        const std::vector<Element> gens{random_element(rng, amb.space())};
        const FiniteAlgebra a = generate_subalgebra(amb, gens);
        const auto want = oracle_subalgebra(kind, 2, 2, gens);
        CHECK(library_family(a) == want);
        CHECK(carrier_closed(a, amb));
      }
    }
  }

  TEST_CASE("closure is idempotent on the generated carrier") {
    std::mt19937_64 rng(12);
    SetAlgebra amb(SigKind::CA, 2, 3);
    for (int trial = 0; trial < 5; ++trial) {
      const std::vector<Element> gens{random_element(rng, amb.space())};
      const FiniteAlgebra a = generate_subalgebra(amb, gens);
      std::vector<Bitset> all;
      for (const auto& x : a.atom_representations()) all.push_back(x);
      const FiniteAlgebra again = generate_subalgebra(static_cast<const Ambient&>(amb), all);
      CHECK(again.atom_count() == a.atom_count());
      CHECK(again.atom_representations() == a.atom_representations());
    }
  }

  TEST_CASE("capacity error quotes the cap") {
    SetAlgebra amb(SigKind::CA, 3, 3);
    const GeneratorChain ch = generator_chain(3);
    const std::vector<Element> gens{ch.x};
    CHECK_THROWS_AS(generate_subalgebra(amb, gens, 16), CapacityError);
  }

  TEST_CASE("no generators gives the minimal subalgebra") {
    SetAlgebra ba(SigKind::BA, 2, 2);
    CHECK(generate_subalgebra(ba, std::span<const Element>{}).atom_count() == 1);
    SetAlgebra ca(SigKind::CA, 2, 2);
    // 0, 1, d01 and -d01
    CHECK(generate_subalgebra(ca, std::span<const Element>{}).atom_count() == 2);
  }
}

TEST_SUITE("atoms and ideals") {
  TEST_CASE("atoms are the minimal nonzero elements") {
    std::mt19937_64 rng(13);
    SetAlgebra amb(SigKind::DF, 2, 2);
    for (int trial = 0; trial < 8; ++trial) {
      const std::vector<Element> gens{random_element(rng, amb.space()), random_element(rng, amb.space())};
      const FiniteAlgebra a = generate_subalgebra(amb, gens);
      std::vector<oracle::Set> lib;
      for (const auto& at : atoms(a)) lib.push_back(oracle::from_bits(a.represent(at)));
      std::sort(lib.begin(), lib.end());
      auto want = oracle::minimal_nonzero(oracle_subalgebra(SigKind::DF, 2, 2, gens));
      std::sort(want.begin(), want.end());
      CHECK(lib == want);
      Bitset sum = a.zero();
      for (const auto& at : atoms(a)) {
        CHECK_FALSE(sum.intersects(at));
        sum |= at;
      }
      CHECK(sum == a.one());
    }
  }

  TEST_CASE("every nonzero a.(-b) has an atom below it") {
    std::mt19937_64 rng(14);
    SetAlgebra amb(SigKind::CA, 2, 3);
    for (int trial = 0; trial < 4; ++trial) {
      const std::vector<Element> gens{random_element(rng, amb.space())};
      const FiniteAlgebra a = generate_subalgebra(amb, gens, std::uint64_t{1} << 12);
      const auto elems = a.elements();
      for (std::size_t i = 0; i < elems.size(); i += 3)
        for (std::size_t j = 0; j < elems.size(); j += 5) {
          const Bitset& x = elems[i];
          const Bitset& b = elems[j];
          if ((x - b).none()) {
            CHECK_THROWS_AS(atom_below(a, x, b), DomainError);
            continue;
          }
          const Bitset at = atom_below(a, x, b);
          CHECK(at.count() == 1);
          CHECK(at.is_subset_of(x - b));
        }
    }
  }

  TEST_CASE("principal ideal closure is d(b) under a discriminator") {
    std::mt19937_64 rng(15);
    SetAlgebra amb(SigKind::CA, 2, 2);
    const std::vector<Element> gens{random_element(rng, amb.space())};
    const FiniteAlgebra a = generate_subalgebra(amb, gens);
    a.for_each_element([&](const Bitset& b) {
      const Ideal ig = principal_ideal(a, b);
      CHECK(ig.closure == discriminator(a, b));
      CHECK(ig.contains(b));
      // downward closed and closed under +
      a.for_each_element([&](const Bitset& x) {
        if (ig.contains(x)) CHECK(ig.contains(x & b));
      });
    });
  }

  TEST_CASE("relativization keeps the elements below b") {
    std::mt19937_64 rng(16);
    SetAlgebra amb(SigKind::DF, 2, 2);
    const std::vector<Element> gens{random_element(rng, amb.space())};
    const FiniteAlgebra a = generate_subalgebra(amb, gens);
    const Bitset b = a.atom(0);
    CHECK(relativize(a, b).atom_count() == 1);
    CHECK(relativize(a, a.zero()).is_degenerate());
    CHECK(relativize(a, a.one()).atom_count() == a.atom_count());
  }
}

TEST_SUITE("products and morphisms") {
  TEST_CASE("product sizes and coordinatewise operators") {
    const FreeBA f1 = free_boolean_algebra(1), f2 = free_boolean_algebra(2);
    const FiniteAlgebra p = product(f1.algebra, f2.algebra);
    CHECK(p.atom_count() == f1.algebra.atom_count() + f2.algebra.atom_count());
    CHECK_THROWS_AS(product(f1.algebra, generate_subalgebra(SetAlgebra(SigKind::CA, 2, 2), std::span<const Element>{})),
                    MismatchError);
  }

  TEST_CASE("isomorphism search on permuted copies") {
    std::mt19937_64 rng(17);
    SetAlgebra amb(SigKind::CA, 2, 2);
    const std::vector<Element> gens{random_element(rng, amb.space())};
    const FiniteAlgebra a = generate_subalgebra(amb, gens);
    std::vector<std::size_t> perm(a.atom_count());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = perm.size() - 1 - k;
    std::vector<OpTable> tables;
    for (const auto& t : a.tables()) {
      OpTable nt{t.op, std::vector<Bitset>(t.values.size())};
      const auto map = [&](const Bitset& x) {
        Bitset y(x.size());
        x.for_each_set([&](std::size_t k) { y.set(perm[k]); });
        return y;
      };
      if (t.op.arity() == 0)
        nt.values[0] = map(t.values[0]);
      else
        for (std::size_t k = 0; k < perm.size(); ++k) nt.values[perm[k]] = map(t.values[k]);
      tables.push_back(std::move(nt));
    }
    const FiniteAlgebra b(a.signature(), a.atom_count(), std::move(tables));
    const auto iso = find_isomorphism(a, b);
    REQUIRE(iso.has_value());
    CHECK(is_isomorphism(a, b, *iso));
    CHECK(is_homomorphism(a, b, iso->as_homomorphism()));
  }

  TEST_CASE("non-isomorphic algebras of equal size are told apart") {
    // Fr_1 x Fr_1 vs Fr_2: both 4 atoms in BA, so isomorphic.
    const FreeBA f1 = free_boolean_algebra(1), f2 = free_boolean_algebra(2);
    CHECK(find_isomorphism(product(f1.algebra, f1.algebra), f2.algebra).has_value());
    // Two DF_2 algebras with 2 atoms: one simple, one not.
    SetAlgebra amb(SigKind::DF, 2, 2);
    auto sp = amb.space();
    const Element rowzero = Element::from_predicate(sp, [](auto s) { return s[1] == 0; });
    const std::vector<Element> g1{rowzero};
    const FiniteAlgebra a = generate_subalgebra(amb, g1);
    const FiniteAlgebra b = product(generate_subalgebra(amb, std::span<const Element>{}),
                                    generate_subalgebra(amb, std::span<const Element>{}));
    if (a.atom_count() == b.atom_count()) CHECK_FALSE(find_isomorphism(a, b).has_value());
    CHECK_THROWS_AS(find_isomorphism(free_boolean_algebra(4).algebra, free_boolean_algebra(4).algebra, 8),
                    CapacityError);
  }

  TEST_CASE("homomorphism extension: free maps extend, clashing maps give a witness") {
    const FreeBA f2 = free_boolean_algebra(2);
    const FreeBA f1 = free_boolean_algebra(1);
    const std::vector<Bitset> imgs{f1.generators[0], ~f1.generators[0]};
    const auto h = extend_homomorphism(f2.algebra, f2.generators, f1.algebra, imgs);
    REQUIRE(std::holds_alternative<Homomorphism>(h));
    CHECK(is_homomorphism(f2.algebra, f1.algebra, std::get<Homomorphism>(h)));

    // g and -g both sent to the top: 0 = g.-g would go to 1.
    const std::vector<Bitset> gens{f1.generators[0], ~f1.generators[0]};
    const std::vector<Bitset> tops{f1.algebra.one(), f1.algebra.one()};
    const auto w = extend_homomorphism(f1.algebra, gens, f1.algebra, tops);
    CHECK(std::holds_alternative<HomWitness>(w));
    const std::vector<Bitset> none;
    CHECK_THROWS_AS(extend_homomorphism(f1.algebra, none, f1.algebra, none), DomainError);
  }

  TEST_CASE("independence in free Boolean algebras") {
    for (std::uint32_t k = 1; k <= 3; ++k) {
      const FreeBA f = free_boolean_algebra(k);
      CHECK(is_independent(f.algebra, f.generators));
      std::vector<Bitset> dup{f.generators[0], f.generators[0]};
      CHECK_FALSE(is_independent(f.algebra, dup));
    }
  }
}

TEST_SUITE("free Boolean algebras") {
  TEST_CASE("sizes and generator shape") {
    for (std::uint32_t k = 0; k <= 4; ++k) {
      const FreeBA f = free_boolean_algebra(k);
      CHECK(f.algebra.atom_count() == (std::size_t{1} << k));
      CHECK(f.generators.size() == k);
      for (std::uint32_t i = 0; i < k; ++i)
        for (std::size_t a = 0; a < f.algebra.atom_count(); ++a) CHECK(f.generators[i].test(a) == (((a >> i) & 1U) != 0));
    }
    CHECK_THROWS_AS(free_boolean_algebra(5), CapacityError);
  }

  TEST_CASE("maps on a free generating set correspond to maps into 2") {
    // Every independent k-element generating set Y of Fr_k: each map Y -> 2
    // extends, and distinct maps give distinct homomorphisms.
    const FreeBA f2 = free_boolean_algebra(2);
    const FreeBA two = free_boolean_algebra(0);
    const auto elems = f2.algebra.elements();
    std::size_t checked = 0;
    for (const auto& y0 : elems)
      for (const auto& y1 : elems) {
        const std::vector<Bitset> y{y0, y1};
        if (!is_independent(f2.algebra, y)) continue;
        ++checked;
        std::set<std::vector<Bitset>> images;
        for (int m = 0; m < 4; ++m) {
          const std::vector<Bitset> img{(m & 1) ? two.algebra.one() : two.algebra.zero(),
                                        (m & 2) ? two.algebra.one() : two.algebra.zero()};
          const auto h = extend_homomorphism(f2.algebra, y, two.algebra, img);
          REQUIRE(std::holds_alternative<Homomorphism>(h));
          images.insert(std::get<Homomorphism>(h).atom_images);
        }
        CHECK(images.size() == 4);
      }
    // independent pairs in a 4-atom algebra: ordered pairs of "halves" crossing
    CHECK(checked == 24);
  }

  TEST_CASE("splitting: preconditions") {
    const FreeBA f = free_boolean_algebra(2);
    CHECK_THROWS_AS(splitting_check(f.algebra, f.generators, f.algebra.zero(), f.generators[0]), DomainError);
    CHECK_THROWS_AS(splitting_check(f.algebra, f.generators, f.generators[0], f.generators[0]), DomainError);
    CHECK(splitting_check(f.algebra, f.generators, f.generators[1], f.generators[0]));
  }
}

TEST_SUITE("example algebra") {
  TEST_CASE("chain matches the closed form computed by brute force") {
    for (std::uint32_t u = 2; u <= 4; ++u) {
      const GeneratorChain ch = generator_chain(u);
      const oracle::SetAlg o(u, 3);
      oracle::Set x = o.empty();
      for (std::size_t k = 0; k < o.size(); ++k) x[k] = o.tuples[k][0] < o.tuples[k][1];
      CHECK(oracle::from_bits(ch.x.bits()) == x);
      oracle::Set y = o.full();
      REQUIRE(ch.y.size() == u + 1);
      for (std::uint32_t m = 0; m <= u; ++m) {
        CHECK(oracle::from_bits(ch.y[m].bits()) == y);
        oracle::Set want = o.empty();
        for (std::size_t k = 0; k < o.size(); ++k) want[k] = o.tuples[k][1] >= m;
        CHECK(y == want);
        y = o.cyl(0, oracle::meet(o.cyl(1, oracle::meet(y, oracle::complement(x))), x));
      }
    }
  }

  TEST_CASE("example flags at u = 2 and u = 3") {
    for (std::uint32_t u : {2u, 3u}) {
      const ExampleAlgebra ex = example_algebra(u);
      CHECK(ex.closed_form);
      CHECK(ex.distinct == u + 1);
      CHECK(ex.all_chain_members_in_algebra);
      CHECK(is_simple(ex.algebra));
      CHECK(ex.algebra.atom_count() >= 3);
    }
    CHECK_THROWS_AS(example_algebra(1), DomainError);
  }

  TEST_CASE("simplicity fails for a product") {
    const FiniteAlgebra e = example_algebra(2).algebra;
    CHECK_FALSE(is_simple(product(e, e)));
  }
}

TEST_SUITE("hereditary closure and decomposition") {
  TEST_CASE("closed elements in a product are the coordinate units") {
    const FiniteAlgebra e = example_algebra(2).algebra;
    const FiniteAlgebra p = product(e, e);
    Bitset left(p.atom_count());
    for (std::size_t k = 0; k < e.atom_count(); ++k) left.set(k);
    const auto d = decompose_by_zero_dimensional(p, left);
    REQUIRE(std::holds_alternative<Decomposition>(d));
    const auto& dec = std::get<Decomposition>(d);
    CHECK(is_isomorphism(p, dec.product, dec.iso));
    CHECK(find_isomorphism(dec.left, e, 24).has_value());
  }

  TEST_CASE("decomposition refuses a b whose ideals meet") {
    const FiniteAlgebra e = example_algebra(2).algebra;
    const auto d = decompose_by_zero_dimensional(e, e.atom(0));
    CHECK(std::holds_alternative<DecompositionFailure>(d));
  }

  TEST_CASE("hereditarily closed test matches its definition") {
    SetAlgebra amb(SigKind::CA, 2, 2);
    auto sp = amb.space();
    // -c0(-d01): tuples all of whose c0-neighbours are diagonal: empty for |U| = 2
    const Element rem = ~cyl(0, ~diag(sp, 0, 1));
    CHECK(rem.is_empty());
    const std::vector<Element> gens{diag(sp, 0, 1)};
    const FiniteAlgebra a = generate_subalgebra(amb, gens);
    CHECK(is_hereditary_closed(a, a.zero()));
    a.for_each_element([&](const Bitset& b) {
      bool want = true;
      b.for_each_set([&](std::size_t k) {
        for (const auto& t : a.tables())
          if (t.op.arity() == 1 && t.values[k] != a.atom(k)) want = false;
      });
      CHECK(is_hereditary_closed(a, b) == want);
    });
  }
}

TEST_SUITE("serialization") {
  TEST_CASE("write and read round trip") {
    const FiniteAlgebra a = example_algebra(2).algebra;
    std::stringstream ss;
    write_algebra(ss, a);
    const std::string text = ss.str();
    CHECK(text.rfind("cylalg-algebra 1", 0) == 0);
    const FiniteAlgebra b = read_algebra(ss);
    CHECK(b.atom_count() == a.atom_count());
    CHECK(b.signature() == a.signature());
    CHECK(b.atom_representations() == a.atom_representations());
    std::stringstream again;
    write_algebra(again, b);
    CHECK(again.str() == text);
  }

  TEST_CASE("malformed input") {
    std::stringstream bad("cylalg-algebra 9\n");
    CHECK_THROWS_AS(read_algebra(bad), ParseError);
  }
}
