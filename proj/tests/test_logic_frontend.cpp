#include <doctest.h>

#include <random>

#include "cylalg/compile.hpp"
#include "cylalg/error.hpp"
#include "cylalg/formula.hpp"
#include "cylalg/library.hpp"
#include "cylalg/model.hpp"
#include "cylalg/translate.hpp"
#include "cylalg/window.hpp"
#include "oracles.hpp"

using namespace cylalg;

namespace {

// Random formula over E/2 with variables below nvars.
Formula random_formula(std::mt19937_64& rng, int depth, std::uint32_t nvars, bool equality) {
  const auto var = [&] { return static_cast<std::uint32_t>(rng() % nvars); };
  const auto leaf = [&]() -> Formula {
    const auto k = rng() % (equality ? 4 : 3);
    if (k == 0) return Formula::atom("E", {var(), var()});
    if (k == 1) {
      const auto v = var();
      return Formula::atom("E", {v, v});
    }
    if (k == 2) return rng() % 2 ? Formula::truth() : Formula::falsity();
    return Formula::eq(var(), var());
  };
  if (depth == 0) return leaf();
  switch (rng() % 8) {
    case 0: return leaf();
    case 1: return !random_formula(rng, depth - 1, nvars, equality);
    case 2: return random_formula(rng, depth - 1, nvars, equality) & random_formula(rng, depth - 1, nvars, equality);
    case 3: return random_formula(rng, depth - 1, nvars, equality) | random_formula(rng, depth - 1, nvars, equality);
    case 4:
      return random_formula(rng, depth - 1, nvars, equality).implies(random_formula(rng, depth - 1, nvars, equality));
    case 5:
      return Formula::iff(random_formula(rng, depth - 1, nvars, equality),
                          random_formula(rng, depth - 1, nvars, equality));
    case 6: return Formula::exists(var(), random_formula(rng, depth - 1, nvars, equality));
    default: return Formula::forall(var(), random_formula(rng, depth - 1, nvars, equality));
  }
}

bool extensional(const oracle::Model& m) {
  const auto& e = m.rels.at("E");
  for (std::uint32_t a = 0; a < m.size; ++a)
    for (std::uint32_t b = a + 1; b < m.size; ++b) {
      bool same = true;
      for (std::uint32_t z = 0; z < m.size; ++z) same = same && (e.count({z, a}) == e.count({z, b}));
      if (same) return false;
    }
  return true;
}

const std::map<std::string, std::uint32_t> kE{{"E", 2}};

}  // namespace

TEST_SUITE("formula syntax") {
  TEST_CASE("printer and parser round trip on every library entry") {
    const auto& lib = formula_library();
    for (const auto& name : lib.names()) {
      const Formula& f = lib[name];
      CHECK_MESSAGE(parse_formula(to_string(f)) == f, name);
    }
  }

  TEST_CASE("printer and parser round trip on random formulas") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 500; ++t) {
      const Formula f = random_formula(rng, 4, 3, true);
      CHECK(parse_formula(to_string(f)) == f);
    }
  }

  TEST_CASE("canonical forms") {
    CHECK(to_string(Formula::neq(0, 1)) == "v0 != v1");
    CHECK(to_string(parse_formula("ex v0 (E(v0,v1) & E(v1,v0) & true)")) == "ex v0 (E(v0,v1) & E(v1,v0) & true)");
    CHECK(parse_formula("a() -> b() -> c()") == parse_formula("a() -> (b() -> c())"));
    const Formula f = parse_formula("all v2 (E(v0,v2) -> ex v1 E(v1,v2))");
    CHECK(f.free_vars() == std::vector<std::uint32_t>{0});
    CHECK(f.quantifier_depth() == 2);
    CHECK(f.var_bound() == 3);
  }

  TEST_CASE("parse errors report the offset") {
    try {
      parse_formula("E(v0,v1) & ");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.position() == 11);
    }
    CHECK_THROWS_AS(parse_formula("E(v0,"), ParseError);
    CHECK_THROWS_AS(parse_formula("v0 = "), ParseError);
    CHECK_THROWS_AS(parse_formula("v64 = v0"), ParseError);
    CHECK_THROWS_AS(parse_formula("E(v0) E(v1)"), ParseError);
  }

  TEST_CASE("vocabulary") {
    Vocabulary v{{"E", 2}};
    CHECK_THROWS_AS(v.add("E", 3), DomainError);
    v.add("A", 1);
    CHECK(v.symbols() == std::vector<std::string>{"A", "E"});
    CHECK(vocabulary_of(parse_formula("R(v0,v1) & R(v0,v1,v2)")).arity("R") == 3);
  }
}

TEST_SUITE("finite models") {
  TEST_CASE("evaluation agrees with the naive evaluator") {
    std::mt19937_64 rng(22);
    const auto models = oracle::all_binary_models(2);
    for (int t = 0; t < 200; ++t) {
      const Formula f = random_formula(rng, 4, 3, true);
      for (const auto& om : models) {
        const ModelFinite m = om.to_library(kE);
        CHECK(oracle::from_bits(satisfaction_set(m, f, 3).bits()) == oracle::satisfaction(om, f, 3));
      }
    }
  }

  TEST_CASE("arity mismatch and unassigned variables") {
    ModelFinite m(2);
    m.add_relation("E", 2);
    CHECK_THROWS_AS(m.add_tuple("E", {0, 1, 1}), DomainError);
    CHECK_THROWS(holds(m, parse_formula("E(v0,v1,v2)"), std::vector<std::uint32_t>{0, 0, 0}));
    CHECK_THROWS(holds(m, parse_formula("E(v0,v1)")));
  }

  TEST_CASE("json round trip") {
    ModelFinite m(3);
    m.add_relation("E", 2);
    m.add_tuple("E", {0, 1});
    m.add_tuple("E", {2, 2});
    const std::string text = model_to_json(m);
    const ModelFinite back = model_from_json(text);
    CHECK(model_to_json(back) == text);
    CHECK(back.holds("E", std::vector<std::uint32_t>{2, 2}));
    CHECK_THROWS(model_from_json("{\"carrier\": 2, \"relations\": {\"E\": {\"arity\": 2, \"tuples\": [[0,5]]}}}"));
  }
}

TEST_SUITE("compiler") {
  TEST_CASE("compiled terms denote satisfaction sets on every E-model with carrier <= 2") {
    std::mt19937_64 rng(23);
    const auto models = oracle::all_binary_models(2);
    for (int t = 0; t < 150; ++t) {
      const Formula f = random_formula(rng, 4, 3, true);
      CompileOptions opts;
      opts.vocabulary = Vocabulary{{"E", 2}};
      const CompiledTerm ct = compile_to_term(f, opts);
      for (const auto& om : models) {
        const ModelFinite m = om.to_library(kE);
        const SetAlgebra cs(SigKind::CA, m.size(), 3);
        const auto env = natural_atom_sets(m, ct.vocabulary, 3);
        CHECK(oracle::from_bits(evaluate(ct.term, env, cs).bits()) == oracle::satisfaction(om, f, 3));
      }
    }
  }

  TEST_CASE("compiled terms on sampled E-models with carrier 3") {
    std::mt19937_64 rng(24);
    const auto models = oracle::all_binary_models(3);
    for (int t = 0; t < 40; ++t) {
      const Formula f = random_formula(rng, 3, 3, true);
      CompileOptions opts;
      opts.vocabulary = Vocabulary{{"E", 2}};
      const CompiledTerm ct = compile_to_term(f, opts);
      for (int k = 0; k < 20; ++k) {
        const auto& om = models[rng() % models.size()];
        const ModelFinite m = om.to_library(kE);
        const SetAlgebra cs(SigKind::CA, 3, 3);
        CHECK(oracle::from_bits(evaluate(ct.term, natural_atom_sets(m, ct.vocabulary, 3), cs).bits()) ==
              oracle::satisfaction(om, f, 3));
      }
    }
  }

  TEST_CASE("equality-free formulas compile to SC terms") {
    std::mt19937_64 rng(25);
    const auto models = oracle::all_binary_models(2);
    for (int t = 0; t < 60; ++t) {
      const Formula f = random_formula(rng, 3, 3, false);
      CompileOptions opts;
      opts.target = Target::SC;
      opts.vocabulary = Vocabulary{{"E", 2}};
      const CompiledTerm ct = compile_to_term(f, opts);
      CHECK(ct.signature.kind() == SigKind::SC);
      for (const auto& om : models) {
        const ModelFinite m = om.to_library(kE);
        const SetAlgebra cs(SigKind::SC, 2, 3);
        CHECK(oracle::from_bits(evaluate(ct.term, natural_atom_sets(m, ct.vocabulary, 3), cs).bits()) ==
              oracle::satisfaction(om, f, 3));
      }
    }
    CompileOptions sc;
    sc.target = Target::SC;
    CHECK_THROWS_AS(compile_to_term(parse_formula("v0 = v1"), sc), MismatchError);
  }

  TEST_CASE("abbreviation readings of a ternary symbol") {
    oracle::Model om;
    om.size = 2;
    om.rels["R"] = {{0, 1, 0}, {1, 1, 1}, {1, 0, 0}};
    const ModelFinite m = om.to_library({{"R", 3}});
    const Formula f = parse_formula("R(v0,v1)");
    Vocabulary v{{"R", 3}};
    const SetAlgebra cs(SigKind::CA, 2, 3);
    for (auto reading : {AbbrevReading::Exists, AbbrevReading::Diagonal}) {
      CompileOptions opts;
      opts.vocabulary = v;
      opts.reading = reading;
      const CompiledTerm ct = compile_to_term(f, opts);
      const Formula want = reading == AbbrevReading::Exists ? parse_formula("ex v2 R(v0,v1,v2)")
                                                            : parse_formula("R(v0,v1,v1)");
      CHECK(oracle::from_bits(evaluate(ct.term, natural_atom_sets(m, ct.vocabulary, 3), cs).bits()) ==
            oracle::satisfaction(om, want, 3));
    }
  }

  TEST_CASE("restriction") {
    CHECK(is_restricted(parse_formula("ex v1 E(v0,v1)"), 3));
    CHECK_FALSE(is_restricted(parse_formula("E(v1,v0)"), 3));
    const auto bad = first_unrestricted(parse_formula("E(v0,v1) & E(v1,v0)"), 3);
    REQUIRE(bad.has_value());
    CHECK(to_string(*bad) == "E(v1,v0)");
    CompileOptions strict;
    strict.require_restricted = true;
    CHECK_THROWS_AS(compile_to_term(parse_formula("E(v1,v0)"), strict), DomainError);
    CHECK_NOTHROW(compile_to_term(parse_formula("E(v0,v1)"), strict));
    CompileOptions two;
    two.n = 2;
    CHECK_THROWS_AS(compile_to_term(parse_formula("E(v0,v2)"), two), DomainError);
  }

  TEST_CASE("replacement paths realise the target coordinate map") {
    // Apply the steps to the set { s : (s_0, s_1) in R } and compare.
    const oracle::SetAlg o(3, 3);
    oracle::Set base = o.empty();
    const std::set<std::pair<std::uint32_t, std::uint32_t>> rel{{0, 1}, {1, 2}, {2, 2}, {2, 0}};
    for (std::size_t k = 0; k < o.size(); ++k) base[k] = rel.count({o.tuples[k][0], o.tuples[k][1]}) != 0;
    for (std::uint32_t a = 0; a < 3; ++a)
      for (std::uint32_t b = 0; b < 3; ++b) {
        const std::uint32_t target[] = {a, b};
        oracle::Set cur = base;
        for (auto [i, j] : replacement_path(target, 3)) cur = o.subst(i, j, cur);
        oracle::Set want = o.empty();
        for (std::size_t k = 0; k < o.size(); ++k) want[k] = rel.count({o.tuples[k][a], o.tuples[k][b]}) != 0;
        CHECK(cur == want);
      }
    const std::uint32_t swap2[] = {1, 0};
    CHECK_THROWS_AS(replacement_path(swap2, 2), DomainError);
  }
}

TEST_SUITE("equality translation") {
  TEST_CASE("tr shape") {
    CHECK(to_string(tr(parse_formula("v0 = v1"))) == "all v2 (E(v2,v0) <-> E(v2,v1))");
    CHECK(to_string(tr(parse_formula("v1 = v1"))) == "true");
    CHECK(to_string(tr(parse_formula("v0 = v2"))) == "all v1 (E(v1,v0) <-> E(v1,v2))");
  }

  TEST_CASE("tr preserves meaning on extensional models") {
    std::mt19937_64 rng(26);
    std::vector<oracle::Model> ext;
    for (std::uint32_t size = 1; size <= 3; ++size)
      for (auto& m : oracle::all_binary_models(size))
        if (extensional(m)) ext.push_back(std::move(m));
    REQUIRE(ext.size() > 10);
    for (int t = 0; t < 100; ++t) {
      const Formula f = random_formula(rng, 3, 3, true);
      const Formula g = tr(f);
      for (const auto& m : ext) CHECK(oracle::satisfaction(m, f, 3) == oracle::satisfaction(m, g, 3));
    }
  }

  TEST_CASE("Leibniz quotient against brute-force classes") {
    for (std::uint32_t size = 1; size <= 3; ++size)
      for (const auto& om : oracle::all_binary_models(size)) {
        const auto& e = om.rels.at("E");
        const auto same = [&](std::uint32_t a, std::uint32_t b) {
          for (std::uint32_t z = 0; z < size; ++z)
            if (e.count({z, a}) != e.count({z, b})) return false;
          return true;
        };
        bool strong = true;
        for (std::uint32_t a = 0; a < size; ++a)
          for (std::uint32_t a2 = 0; a2 < size; ++a2)
            for (std::uint32_t b = 0; b < size; ++b)
              for (std::uint32_t b2 = 0; b2 < size; ++b2)
                if (same(a, a2) && same(b, b2) && e.count({a, b}) != e.count({a2, b2})) strong = false;
        const LeibnizResult r = leibniz_quotient(om.to_library(kE));
        REQUIRE(r.quotient.has_value() == strong);
        REQUIRE(r.witness.has_value() == !strong);
        if (strong) {
          const auto& q = *r.quotient;
          for (std::uint32_t a = 0; a < size; ++a)
            for (std::uint32_t b = 0; b < size; ++b) {
              CHECK((q.projection[a] == q.projection[b]) == same(a, b));
              const std::uint32_t t[] = {q.projection[a], q.projection[b]};
              CHECK(q.model.holds("E", t) == (e.count({a, b}) != 0));
            }
        } else {
          const auto [a, a2, b, b2] = *r.witness;
          CHECK(same(a, a2));
          CHECK(same(b, b2));
          CHECK(e.count({a, b}) != e.count({a2, b2}));
        }
      }
  }
}

TEST_SUITE("window") {
  TEST_CASE("quantifier-free formulas agree with direct evaluation at every point") {
    WindowModel wm;
    wm.radius = 8;
    wm.fixed = {0, 3};
    const Formula f = parse_formula("R(v0,v1) & !R(v1,v0) | v0 = v1");
    for (std::int64_t a = -8; a <= 8; ++a)
      for (std::int64_t b = -8; b <= 8; ++b) {
        const std::int64_t at[] = {a, b};
        const bool ra = a < b || (a == b && (a == 0 || a == 3));
        const bool rb = b < a || (a == b && (a == 0 || a == 3));
        CHECK(eval_window_once(wm, f, at) == ((ra && !rb) || a == b));
        CHECK(wm.related(a, b) == ra);
      }
  }

  TEST_CASE("successor formula picks out b = a + 1") {
    WindowModel wm;
    const Formula suc = lib::suc(0, 1);
    for (std::int64_t a = -4; a <= 4; ++a)
      for (std::int64_t b = -4; b <= 4; ++b) {
        const std::int64_t at[] = {a, b};
        CHECK(eval_window_once(wm, suc, at) == (b == a + 1));
      }
  }

  TEST_CASE("library sentences on the window") {
    const auto& lib = formula_library();
    WindowModel one;
    WindowModel two;
    two.fixed = {0, 5};
    const WindowResult ax = eval_window(one, lib["Ax"]);
    CHECK(ax.value);
    CHECK(ax.stable);
    const WindowResult eta1 = eval_window(one, lib["eta"]);
    CHECK_FALSE(eta1.value);
    CHECK(eta1.stable);
    const WindowResult eta2 = eval_window(two, lib["eta"]);
    CHECK(eta2.value);
    CHECK(eta2.stable);
    CHECK(eta1.radii == std::array<std::int64_t, 3>{16, 32, 64});
  }

  TEST_CASE("window preconditions") {
    WindowModel wm;
    wm.radius = 2;
    CHECK_THROWS_AS(eval_window_once(wm, formula_library()["Ax"]), DomainError);
    WindowModel far;
    far.fixed = {100};
    CHECK_THROWS_AS(eval_window_once(far, parse_formula("true")), DomainError);
    CHECK_THROWS_AS(eval_window_once(WindowModel{}, parse_formula("E(v0,v0)"), std::vector<std::int64_t>{0}),
                    DomainError);
    CHECK_THROWS_AS(eval_window_once(WindowModel{}, parse_formula("R(v0,v1)")), DomainError);
  }
}

TEST_SUITE("library on finite models") {
  TEST_CASE("Ax fails on every ternary model over at most 2 points") {
    const Formula ax = formula_library()["Ax"];
    for (std::uint32_t size = 1; size <= 2; ++size) {
      const auto ts = oracle::all_tuples(size, 3);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ts.size()); ++mask) {
        oracle::Model m;
        m.size = size;
        m.rels["R"];
        for (std::size_t k = 0; k < ts.size(); ++k)
          if ((mask >> k) & 1U) m.rels["R"].insert(ts[k]);
        oracle::Tuple s(kMaxVariables, 0);
        CHECK_FALSE(oracle::eval(m, ax, s));
      }
    }
  }

  TEST_CASE("restricted entries are restricted and literal variants differ") {
    const auto& lib = formula_library();
    for (const char* name : {"phi", "psi", "eta"}) CHECK(lib[name].free_vars().size() <= 3);
    CHECK_FALSE(lib["suc"] == lib["suc_literal"]);
    CHECK_FALSE(lib["phi"] == lib["phi_as_printed"]);
    CHECK(lib["Ax"].is_closed());
    CHECK(lib["eta"].is_closed());
    CHECK_THROWS(lib.entry("no_such_entry"));
  }
}
