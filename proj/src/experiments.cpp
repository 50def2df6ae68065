#include "cylalg/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

#include "cylalg/compile.hpp"
#include "cylalg/constructions.hpp"
#include "cylalg/error.hpp"
#include "cylalg/hf.hpp"
#include "cylalg/library.hpp"
#include "cylalg/model.hpp"
#include "cylalg/morphism.hpp"
#include "cylalg/term.hpp"
#include "cylalg/translate.hpp"
#include "cylalg/window.hpp"

namespace cylalg {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::SurrogatePass: return "surrogate-pass";
  }
  return "fail";
}

std::string report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["experiment"] = r.id;
  j["parameters"] = r.parameters;
  j["verdict"] = to_string(r.verdict);
  j["results"] = r.results;
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

std::string report_text(const Report& r) {
  std::size_t width = 0;
  for (const auto& [k, _] : r.rows) width = std::max(width, k.size());
  std::ostringstream os;
  os << r.id << '\n';
  for (const auto& [k, v] : r.rows) os << "  " << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  for (const auto& w : r.warnings) os << "  warning: " << w << '\n';
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.3f", r.seconds);
  os << "verdict: " << to_string(r.verdict);
  if (r.verdict == Verdict::SurrogatePass) os << " (bounded window approximation, not a proof)";
  os << "  [" << secs << " s]\n";
  return os.str();
}

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class Timer {
 public:
  explicit Timer(Report& r) : r_(r), t0_(Clock::now()) {}
  ~Timer() { r_.seconds = std::chrono::duration<double>(Clock::now() - t0_).count(); }

 private:
  Report& r_;
  Clock::time_point t0_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string ratio(std::uint64_t ok, std::uint64_t total) { return std::to_string(ok) + "/" + std::to_string(total); }

/// Uniform random bitset from raw engine output, so streams agree across
/// standard libraries.
Bitset random_bits(std::mt19937_64& g, std::size_t n) {
  Bitset b(n);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 64 == 0) word = g();
    if ((word >> (i % 64)) & 1U) b.set(i);
  }
  return b;
}

std::vector<OpDescriptor> unary_ops(const Signature& sig) {
  std::vector<OpDescriptor> out;
  for (const auto& op : sig.operators())
    if (op.arity() == 1) out.push_back(op);
  return out;
}

// ---------------------------------------------------------------------------
// Test matrix of single-generated subalgebras.

struct MatrixAlgebra {
  std::string label;
  FiniteAlgebra algebra;
};

struct MatrixConfig {
  SigKind kind;
  std::uint32_t n;
  std::uint32_t u;
};

std::vector<MatrixConfig> matrix_configs(bool with_ra) {
  std::vector<MatrixConfig> out;
  for (SigKind k : {SigKind::BA, SigKind::DF, SigKind::SC, SigKind::CA})
    for (std::uint32_t n : {2u, 3u})
      for (std::uint32_t u : {2u, 3u}) out.push_back({k, n, u});
  if (with_ra)
    for (std::uint32_t u : {2u, 3u}) out.push_back({SigKind::RA, 0, u});
  return out;
}

std::vector<MatrixAlgebra> matrix_algebras(const MatrixParams& p, bool with_ra, std::uint64_t& skipped) {
  std::vector<MatrixAlgebra> out;
  std::mt19937_64 g(p.seed);
  for (const auto& c : matrix_configs(with_ra)) {
    const SetAlgebra amb(c.kind, c.u, c.n);
    const SpacePtr& sp = amb.space();
    std::string name(to_string(c.kind));
    if (c.kind != SigKind::RA) name += "_" + std::to_string(c.n);
    name += " u=" + std::to_string(c.u);
    std::vector<std::pair<std::string, Element>> gens;
    gens.emplace_back("s0<s1", Element::from_predicate(sp, [](auto s) { return s[0] < s[1]; }));
    gens.emplace_back("s0=s1", Element::from_predicate(sp, [](auto s) { return s[0] == s[1]; }));
    gens.emplace_back("s0=0", Element::from_predicate(sp, [](auto s) { return s[0] == 0; }));
    for (std::uint64_t k = 0; k < p.samples; ++k)
      gens.emplace_back("random#" + std::to_string(k), Element(sp, random_bits(g, sp->size())));
    for (const auto& [label, x] : gens) {
      const Element one[] = {x};
      FiniteAlgebra a = generate_subalgebra(amb, one);
      if (a.atom_count() > p.max_atoms) {
        ++skipped;
        continue;
      }
      out.push_back({name + " X=" + label, std::move(a)});
    }
  }
  return out;
}

Formula resolve_formula(const std::string& text) {
  const auto& lib = formula_library();
  if (lib.contains(text)) return lib[text];
  return parse_formula(text);
}

/// Vocabulary within {E/2}.
bool only_membership(const Formula& f) {
  const auto v = vocabulary_of(f);
  return v.size() == 0 || (v.size() == 1 && v.contains("E") && v.arity("E") == 2);
}

/// Calls f(assignment) for every assignment of `free` variables into a
/// carrier of size c; other variables stay 0.
template <class F>
void for_each_assignment(std::uint32_t c, const std::vector<std::uint32_t>& free, F&& f) {
  std::uint32_t width = 0;
  for (auto v : free) width = std::max(width, v + 1);
  std::vector<std::uint32_t> s(width, 0);
  while (true) {
    f(std::span<const std::uint32_t>(s));
    std::size_t k = 0;
    while (k < free.size() && ++s[free[k]] == c) s[free[k++]] = 0;
    if (k == free.size()) return;
  }
}

std::uint64_t assignment_count(std::uint32_t c, std::size_t nfree) {
  std::uint64_t n = 1;
  for (std::size_t k = 0; k < nfree; ++k) {
    n *= c;
    if (n > (std::uint64_t{1} << 40)) return n;
  }
  return n;
}

/// Every model over `vocab` with carrier c when the cells fit in 16 bits;
/// otherwise `fallback` seeded random ones.
template <class F>
void for_each_model(const Vocabulary& vocab, std::uint32_t c, std::uint64_t fallback, std::mt19937_64& g, F&& f) {
  std::vector<std::pair<std::string, std::uint32_t>> rels;
  std::uint64_t cells = 0;
  for (const auto& name : vocab.symbols()) {
    const auto k = vocab.arity(name);
    rels.emplace_back(name, k);
    std::uint64_t m = 1;
    for (std::uint32_t i = 0; i < k; ++i) m *= c;
    cells += m;
  }
  const auto build = [&](const Bitset& bits) {
    ModelFinite m(c);
    std::size_t pos = 0;
    for (const auto& [name, k] : rels) {
      m.add_relation(name, k);
      std::vector<std::uint32_t> t(k, 0);
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < k; ++i) count *= c;
      for (std::uint64_t idx = 0; idx < count; ++idx, ++pos) {
        if (bits.test(pos)) m.add_tuple(name, t);
        for (std::uint32_t i = 0; i < k; ++i) {
          if (++t[i] < c) break;
          t[i] = 0;
        }
      }
    }
    f(m);
  };
  if (cells <= 16) {
    Bitset bits(cells);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << cells); ++v) {
      for (std::size_t i = 0; i < cells; ++i) bits.assign(i, (v >> i) & 1U);
      build(bits);
    }
  } else {
    for (std::uint64_t k = 0; k < fallback; ++k) build(random_bits(g, cells));
  }
}

/// Copy c of element x is x + c |V|; every copy of y is a member of every
/// copy of x exactly when y is in x.
ModelFinite duplicated_model(const HFUniverse& u) {
  const std::uint32_t n = u.size();
  ModelFinite m(2 * n);
  m.add_relation("E", 2);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      if (u.member(y, x))
        for (std::uint32_t cx = 0; cx < 2; ++cx)
          for (std::uint32_t cy = 0; cy < 2; ++cy) m.add_tuple("E", {y + cy * n, x + cx * n});
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

Report run_example(const ExampleParams& p) {
  Report r;
  r.id = "example";
  Timer timer(r);
  r.parameters["u"] = p.u;
  r.parameters["signature"] = std::string(to_string(p.kind)) + "_3";
  r.parameters["cap"] = p.cap == kNoCap ? json("none") : json(p.cap);

  const ExampleAlgebra ex = example_algebra(p.u, p.kind, p.cap);
  const SpacePtr& sp = ex.chain.x.space_ptr();
  json chain = json::array();
  for (std::size_t m = 0; m < ex.chain.y.size(); ++m) {
    const Element expected = Element::from_predicate(sp, [m](auto s) { return s[1] >= m; });
    chain.push_back({{"m", m}, {"size", ex.chain.y[m].count()}, {"closed_form", ex.chain.y[m] == expected}});
  }
  const bool simple = is_simple(ex.algebra);
  const std::size_t expected_distinct = p.u + 1;
  r.results["chain"] = chain;
  r.results["closed_form"] = ex.closed_form;
  r.results["distinct"] = ex.distinct;
  r.results["expected_distinct"] = expected_distinct;
  r.results["chain_in_algebra"] = ex.all_chain_members_in_algebra;
  r.results["atoms"] = ex.algebra.atom_count();
  r.results["finite"] = true;
  r.results["simple"] = simple;

  r.row("chain Y_0..Y_u", std::to_string(ex.chain.y.size()) + " members");
  r.row("Y_m = {s : s_1 >= m}", yes_no(ex.closed_form));
  r.row("distinct chain values", ratio(ex.distinct, expected_distinct));
  r.row("chain inside Sg{X}", yes_no(ex.all_chain_members_in_algebra));
  r.row("atoms of Sg{X}", std::to_string(ex.algebra.atom_count()));
  r.row("Sg{X} simple", yes_no(simple));
  r.require(ex.closed_form && ex.distinct == expected_distinct && ex.all_chain_members_in_algebra && simple);
  return r;
}

Report run_atoms(const ExampleParams& p) {
  Report r;
  r.id = "atoms";
  Timer timer(r);
  r.parameters["u"] = p.u;
  r.parameters["signature"] = std::string(to_string(p.kind)) + "_3";
  r.parameters["cap"] = p.cap == kNoCap ? json("none") : json(p.cap);

  const ExampleAlgebra ex = example_algebra(p.u, p.kind, p.cap);
  const auto& a = ex.algebra;
  const auto& sp = *a.space();
  json list = json::array();
  Bitset seen(a.representation_size());
  bool disjoint = true;
  for (std::size_t k = 0; k < a.atom_count(); ++k) {
    const Bitset& rep = a.atom_representations()[k];
    if (rep.intersects(seen)) disjoint = false;
    seen |= rep;
    const auto first = sp.decode(rep.find_first());
    list.push_back({{"index", k}, {"size", rep.count()}, {"first_tuple", first}, {"set", rep.to_hex()}});
    std::string t;
    for (auto v : first) t += std::to_string(v);
    r.row("atom " + std::to_string(k), std::to_string(rep.count()) + " tuples, first " + t);
  }
  const bool covers = seen.all();
  r.results["atom_count"] = a.atom_count();
  r.results["atoms"] = list;
  r.results["disjoint"] = disjoint;
  r.results["cover_unit"] = covers;
  r.row("disjoint, cover the unit", yes_no(disjoint && covers));
  r.require(disjoint && covers && a.atom_count() > 0);
  return r;
}

Report run_check_identity(const IdentityParams& p) {
  if (p.lhs.empty() && p.rhs.empty()) {
    Report r = run_discriminator_matrix(MatrixParams{p.samples == 1000 ? 12 : p.samples, p.seed});
    r.id = "check-identity";
    return r;
  }
  Report r;
  r.id = "check-identity";
  Timer timer(r);
  r.parameters["lhs"] = p.lhs;
  r.parameters["rhs"] = p.rhs;
  r.parameters["signature"] = Signature::make(p.kind, p.kind == SigKind::RA ? 0 : p.n).name();
  r.parameters["u"] = p.u;
  r.parameters["samples"] = p.samples;
  r.parameters["seed"] = p.seed;

  const SetAlgebra amb(p.kind, p.u, p.n);
  const Term lhs = parse_term(p.lhs), rhs = parse_term(p.rhs);
  const std::uint32_t nvars = std::max(lhs.variable_count(), rhs.variable_count());
  check_term(lhs, amb.signature(), nvars);
  check_term(rhs, amb.signature(), nvars);
  const std::uint64_t bits = amb.space()->size() * nvars;
  const bool exhaustive = bits <= 16;
  const std::uint64_t cases = exhaustive ? (std::uint64_t{1} << bits) : p.samples;

  std::mt19937_64 g(p.seed);
  std::uint64_t failures = 0;
  json witness = nullptr;
  for (std::uint64_t c = 0; c < cases; ++c) {
    std::vector<Element> asg;
    for (std::uint32_t v = 0; v < nvars; ++v) {
      Bitset b(amb.space()->size());
      if (exhaustive) {
        for (std::size_t i = 0; i < b.size(); ++i) b.assign(i, (c >> (v * b.size() + i)) & 1U);
      } else {
        b = random_bits(g, b.size());
      }
      asg.push_back(amb.element(std::move(b)));
    }
    const Element l = evaluate(lhs, asg, amb), rr = evaluate(rhs, asg, amb);
    if (!(l == rr)) {
      if (failures++ == 0) {
        json vals = json::array();
        for (const auto& e : asg) vals.push_back(e.bits().to_hex());
        witness = {{"assignment", vals}, {"lhs", l.bits().to_hex()}, {"rhs", rr.bits().to_hex()}};
      }
    }
  }
  r.results["exhaustive"] = exhaustive;
  r.results["cases"] = cases;
  r.results["counterexamples"] = failures;
  r.results["first_counterexample"] = witness;
  r.row("mode", exhaustive ? "exhaustive" : "seeded sample");
  r.row("assignments satisfying", ratio(cases - failures, cases));
  r.require(failures == 0);
  return r;
}

Report run_discriminator_matrix(const MatrixParams& p) {
  Report r;
  r.id = "discriminator";
  Timer timer(r);
  r.parameters["samples"] = p.samples;
  r.parameters["seed"] = p.seed;
  r.parameters["max_atoms"] = p.max_atoms;

  std::uint64_t skipped = 0;
  const auto algebras = matrix_algebras(p, true, skipped);
  std::uint64_t elements = 0, checks = 0, violations = 0;
  json first = nullptr;
  for (const auto& [label, a] : algebras) {
    const auto ops = unary_ops(a.signature());
    a.for_each_element([&](const Bitset& x) {
      ++elements;
      const Bitset d = discriminator(a, x);
      const auto fail = [&](const std::string& what) {
        if (violations++ == 0) first = {{"algebra", label}, {"element", x.to_hex()}, {"law", what}};
      };
      ++checks;
      if (!x.is_subset_of(d)) fail("x <= d(x)");
      ++checks;
      if (!discriminator(a, d).is_subset_of(d)) fail("d(d(x)) <= d(x)");
      for (const auto& op : ops) {
        ++checks;
        if (!a.apply(op, x).is_subset_of(d)) fail(op.name() + "(x) <= d(x)");
      }
    });
  }
  r.results["algebras"] = algebras.size();
  r.results["skipped_over_budget"] = skipped;
  r.results["elements"] = elements;
  r.results["checks"] = checks;
  r.results["violations"] = violations;
  r.results["first_violation"] = first;
  r.row("subalgebras checked", std::to_string(algebras.size()) + " (" + std::to_string(skipped) + " over budget)");
  r.row("elements", std::to_string(elements));
  r.row("law instances holding", ratio(checks - violations, checks));
  r.require(violations == 0 && !algebras.empty());
  return r;
}

Report run_hereditary(const MatrixParams& p) {
  Report r;
  r.id = "hereditary";
  Timer timer(r);
  r.parameters["samples"] = p.samples;
  r.parameters["seed"] = p.seed;
  r.parameters["max_atoms"] = p.max_atoms;

  std::uint64_t skipped = 0;
  const auto algebras = matrix_algebras(p, false, skipped);
  std::uint64_t bound_violations = 0, closed_mismatch = 0, max_fixed = 0;
  std::uint64_t decompositions = 0, decomposition_failures = 0, refused = 0;
  json first = nullptr;
  for (const auto& [label, a] : algebras) {
    const auto ops = unary_ops(a.signature());
    Bitset fixed(a.atom_count());
    for (std::size_t k = 0; k < a.atom_count(); ++k) {
      const Bitset at = a.atom(k);
      if (std::all_of(ops.begin(), ops.end(), [&](const auto& op) { return a.apply(op, at) == at; })) fixed.set(k);
    }
    max_fixed = std::max<std::uint64_t>(max_fixed, fixed.count());
    if (!is_hereditary_closed(a, fixed) || fixed.count() > 2) {
      if (bound_violations++ == 0) first = {{"algebra", label}, {"closed_atoms", fixed.count()}};
    }
    // Candidates b: every element when small, else atoms, coatoms and a few joins.
    std::vector<Bitset> bs;
    if (a.atom_count() <= 8) {
      bs = a.elements();
    } else {
      bs = {a.zero(), a.one(), fixed};
      for (std::size_t k = 0; k < a.atom_count(); ++k) {
        bs.push_back(a.atom(k));
        bs.push_back(~a.atom(k));
      }
    }
    for (const auto& b : bs) {
      if (is_hereditary_closed(a, b) != b.is_subset_of(fixed)) ++closed_mismatch;
      auto res = decompose_by_zero_dimensional(a, b);
      if (auto* d = std::get_if<Decomposition>(&res)) {
        ++decompositions;
        const bool ok = is_isomorphism(a, d->product, d->iso) &&
                        d->left.atom_count() == b.count() && d->right.atom_count() == a.atom_count() - b.count();
        if (!ok) ++decomposition_failures;
      } else {
        ++refused;
      }
    }
  }
  // Two-dimensional remark: -c0(-d01) in the full Cs_2 over two points.
  const SetAlgebra cs2(SigKind::CA, 2, 2);
  const Element remark = ~cyl(0, ~diag(cs2.space(), 0, 1));
  std::vector<Element> singletons;
  for (std::uint64_t i = 0; i < cs2.space()->size(); ++i)
    singletons.push_back(cs2.element(Bitset::single(cs2.space()->size(), i)));
  const FiniteAlgebra full = generate_subalgebra(cs2, singletons);
  const bool remark_closed = is_hereditary_closed(full, full.from_concrete(remark));

  r.results["algebras"] = algebras.size();
  r.results["skipped_over_budget"] = skipped;
  r.results["max_closed_atoms"] = max_fixed;
  r.results["bound_violations"] = bound_violations;
  r.results["first_violation"] = first;
  r.results["closed_test_mismatches"] = closed_mismatch;
  r.results["decompositions"] = decompositions;
  r.results["decomposition_failures"] = decomposition_failures;
  r.results["precondition_refused"] = refused;
  r.results["remark_element_empty"] = remark.is_empty();
  r.results["remark_element_closed"] = remark_closed;
  r.row("single-generated subalgebras", std::to_string(algebras.size()) + " (" + std::to_string(skipped) + " over budget)");
  r.row("largest |At n Rl_b| (bound 2)", std::to_string(max_fixed));
  r.row("decompositions verified", ratio(decompositions - decomposition_failures, decompositions));
  r.row("precondition refused", std::to_string(refused));
  r.row("-c0-d01 in Cs_2, |U|=2", std::string(remark.is_empty() ? "0" : "nonzero") + ", closed " + yes_no(remark_closed));
  r.require(bound_violations == 0 && closed_mismatch == 0 && decomposition_failures == 0 && remark_closed &&
            !algebras.empty());
  return r;
}

Report run_free_ba(std::uint32_t max_k) {
  Report r;
  r.id = "free-ba";
  Timer timer(r);
  r.parameters["k"] = max_k;
  if (max_k > 4) throw CapacityError("free Boolean algebras are built for k <= 4");

  json sizes = json::array();
  bool sizes_ok = true;
  std::vector<FreeBA> fr;
  for (std::uint32_t k = 0; k <= max_k; ++k) {
    fr.push_back(free_boolean_algebra(k));
    const auto& a = fr.back().algebra;
    const std::uint64_t atoms = std::uint64_t{1} << k;
    const bool ok = a.atom_count() == atoms && a.size() == (std::uint64_t{1} << atoms);
    sizes_ok = sizes_ok && ok;
    sizes.push_back({{"k", k}, {"atoms", a.atom_count()}, {"size", *a.size()}, {"expected_size", std::uint64_t{1} << atoms}});
    r.row("|Fr_" + std::to_string(k) + "|", std::to_string(*a.size()) + " (" + std::to_string(a.atom_count()) + " atoms)");
  }

  json isos = json::array();
  bool iso_ok = true;
  for (std::uint32_t k = 1; k < max_k; ++k) {
    const FiniteAlgebra prod = product(fr[k].algebra, fr[k].algebra);
    const auto iso = find_isomorphism(fr[k + 1].algebra, prod);
    const bool ok = iso && is_isomorphism(fr[k + 1].algebra, prod, *iso);
    iso_ok = iso_ok && ok;
    isos.push_back({{"k", k}, {"certified", ok}});
    r.row("Fr_" + std::to_string(k + 1) + " ~ Fr_" + std::to_string(k) + " x Fr_" + std::to_string(k), yes_no(ok));
  }

  // Splitting in Fr_max_k: nonzero a in Sg(S), S a proper subset, y outside S.
  const auto& top = fr[max_k];
  std::uint64_t cases = 0, split = 0;
  for (std::uint32_t s = 0; s + 1 < (1u << max_k); ++s) {
    std::vector<Bitset> sub;
    for (std::uint32_t i = 0; i < max_k; ++i)
      if ((s >> i) & 1U) sub.push_back(top.generators[i]);
    const FiniteAlgebra sg = generate_subalgebra(top.algebra, sub);
    for (std::uint32_t i = 0; i < max_k; ++i) {
      if ((s >> i) & 1U) continue;
      sg.for_each_element([&](const Bitset& x) {
        if (x.none()) return;
        ++cases;
        if (splitting_check(top.algebra, top.generators, sg.represent(x), top.generators[i])) ++split;
      });
    }
  }
  const bool independent = is_independent(top.algebra, top.generators);
  r.results["sizes"] = sizes;
  r.results["isomorphisms"] = isos;
  r.results["splitting_cases"] = cases;
  r.results["splitting_holds"] = split;
  r.results["generators_independent"] = independent;
  r.row("splitting in Fr_" + std::to_string(max_k), ratio(split, cases));
  r.row("generators independent", yes_no(independent));
  r.require(sizes_ok && iso_ok && split == cases && independent);
  return r;
}

Report run_tau_sigma_delta(const TauSigmaDeltaParams& p) {
  Report r;
  r.id = "tau-sigma-delta";
  Timer timer(r);
  r.parameters["u"] = p.u;
  r.parameters["samples"] = p.samples;
  r.parameters["seed"] = p.seed;

  const auto& lib = formula_library();
  Vocabulary vocab;
  vocab.add("R", 3);
  CompileOptions opts;
  opts.n = 3;
  opts.vocabulary = vocab;
  const Term tau = compile_to_term(lib["phi"], opts).term;
  const Term sigma = compile_to_term(lib["psi"], opts).term;
  const Term delta = compile_to_term(lib["eta"], opts).term;
  const Term st[] = {tau};
  const Term sigma_tau = substitute(sigma, st);
  const Term delta_tau = substitute(delta, st);

  const SetAlgebra cs(SigKind::CA, p.u, 3);
  const std::size_t points = cs.space()->size();
  const bool exhaustive = points <= 8;
  const std::uint64_t cases = exhaustive ? (std::uint64_t{1} << points) : p.samples;
  std::mt19937_64 g(p.seed);
  std::uint64_t bad_sigma = 0, bad_delta = 0;
  json first = nullptr;
  for (std::uint64_t c = 0; c < cases; ++c) {
    Bitset b(points);
    if (exhaustive)
      for (std::size_t i = 0; i < points; ++i) b.assign(i, (c >> i) & 1U);
    else
      b = random_bits(g, points);
    const Element x[] = {cs.element(std::move(b))};
    const bool s_ok = evaluate(sigma_tau, x, cs) == x[0];
    const bool d_ok = evaluate(delta_tau, x, cs).is_full();
    if (!s_ok) ++bad_sigma;
    if (!d_ok) ++bad_delta;
    if ((!s_ok || !d_ok) && first.is_null()) first = {{"x", x[0].bits().to_hex()}, {"sigma", s_ok}, {"delta", d_ok}};
  }
  r.results["exhaustive"] = exhaustive;
  r.results["cases"] = cases;
  r.results["sigma_tau_counterexamples"] = bad_sigma;
  r.results["delta_tau_counterexamples"] = bad_delta;
  r.results["first_counterexample"] = first;
  r.results["term_nodes"] = {{"tau", tau.dag_size()}, {"sigma", sigma.dag_size()}, {"delta", delta.dag_size()}};
  r.row("mode", exhaustive ? "exhaustive" : "seeded sample");
  r.row("sigma(tau(x)) = x", ratio(cases - bad_sigma, cases));
  r.row("delta(tau(x)) = 1", ratio(cases - bad_delta, cases));
  r.require(bad_sigma == 0 && bad_delta == 0);
  return r;
}

Report run_window(const WindowParams& p) {
  Report r;
  r.id = "window";
  Timer timer(r);
  r.parameters["formula"] = p.formula;
  r.parameters["w"] = p.w;
  r.parameters["margin"] = p.margin;
  r.parameters["fixed"] = p.fixed;
  r.parameters["at"] = p.at;
  r.parameters["expect"] = p.expect ? json(*p.expect) : json(nullptr);

  const Formula f = resolve_formula(p.formula);
  WindowModel wm;
  wm.radius = p.w;
  wm.margin = p.margin;
  wm.fixed = p.fixed;
  const WindowResult res = eval_window(wm, f, p.at);
  json per = json::array();
  for (int k = 0; k < 3; ++k) per.push_back({{"radius", res.radii[k]}, {"value", res.values[k]}});
  r.results["value"] = res.value;
  r.results["stable"] = res.stable;
  r.results["radii"] = per;
  r.results["quantifier_depth"] = f.quantifier_depth();
  std::string vals;
  for (int k = 0; k < 3; ++k) vals += (k ? ", " : "") + std::to_string(res.radii[k]) + ": " + (res.values[k] ? "true" : "false");
  r.row("value", res.value ? "true" : "false");
  r.row("per radius", vals);
  r.row("stable", yes_no(res.stable));
  const bool ok = res.stable && (!p.expect || *p.expect == res.value);
  r.verdict = ok ? Verdict::SurrogatePass : Verdict::Fail;
  return r;
}

Report run_translate(const TranslateParams& p) {
  Report r;
  r.id = "translate";
  Timer timer(r);
  r.parameters["rank"] = p.rank;
  r.parameters["corpus_size"] = p.corpus.size();
  r.parameters["model_size"] = p.model_size;

  std::vector<std::pair<const CorpusEntry*, Formula>> cases;
  for (const auto& e : p.corpus)
    if (only_membership(e.formula)) cases.emplace_back(&e, tr(e.formula));
  if (cases.empty()) r.warnings.push_back("corpus has no formulas over {E/2}");

  // f <-> tr(f) pointwise on HF universes.
  std::uint64_t points = 0, disagreements = 0;
  json first = nullptr;
  json ranks = json::array();
  const auto& lib = formula_library();
  bool extensional = true;
  for (std::uint32_t rank = 1; rank <= p.rank; ++rank) {
    const HFUniverse u(rank);
    const ModelFinite m = u.model();
    const bool ax = holds(m, lib["Ax_eq"]) && holds(m, lib["Ax_cong"]);
    extensional = extensional && ax;
    std::uint64_t here = 0;
    for (const auto& [e, t] : cases) {
      const auto free = e->formula.free_vars();
      if (assignment_count(m.size(), free.size()) > (std::uint64_t{1} << 20)) {
        r.warnings.push_back(e->name + " skipped at rank " + std::to_string(rank) + ": too many assignments");
        continue;
      }
      for_each_assignment(m.size(), free, [&](std::span<const std::uint32_t> s) {
        ++points, ++here;
        if (holds(m, e->formula, s) != holds(m, t, s) && disagreements++ == 0)
          first = {{"formula", e->name}, {"rank", rank}, {"assignment", std::vector<std::uint32_t>(s.begin(), s.end())}};
      });
    }
    ranks.push_back({{"rank", rank}, {"carrier", u.size()}, {"extensional", ax}, {"points", here}});
  }

  // Quotient transfer on the duplicated HF model and on all small E-models.
  std::uint64_t models = 0, congruent = 0, ax_cong_mismatch = 0, transfer_points = 0, transfer_failures = 0;
  json first_transfer = nullptr;
  const auto transfer = [&](const ModelFinite& m, const std::string& label) {
    ++models;
    const LeibnizResult lr = leibniz_quotient(m);
    if (lr.quotient.has_value() != holds(m, lib["Ax_cong"])) ++ax_cong_mismatch;
    if (!lr.quotient) return;
    ++congruent;
    const auto& q = *lr.quotient;
    for (const auto& [e, t] : cases) {
      const auto free = e->formula.free_vars();
      if (assignment_count(m.size(), free.size()) > (std::uint64_t{1} << 16)) continue;
      for_each_assignment(m.size(), free, [&](std::span<const std::uint32_t> s) {
        ++transfer_points;
        std::vector<std::uint32_t> ps(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) ps[i] = q.projection[s[i]];
        if (holds(m, t, s) != holds(q.model, e->formula, ps) && transfer_failures++ == 0)
          first_transfer = {{"formula", e->name}, {"model", label},
                            {"assignment", std::vector<std::uint32_t>(s.begin(), s.end())}};
      });
    }
  };
  const HFUniverse base(std::min<std::uint32_t>(p.rank, 3));
  const ModelFinite dup = duplicated_model(base);
  const auto dup_q = leibniz_quotient(dup);
  const bool dup_iso = dup_q.quotient && dup_q.quotient->model.size() == base.size();
  transfer(dup, "duplicated V_" + std::to_string(base.rank()));
  Vocabulary ev;
  ev.add("E", 2);
  std::mt19937_64 g(0);
  for (std::uint32_t c = 1; c <= p.model_size; ++c)
    for_each_model(ev, c, 256, g, [&](const ModelFinite& m) { transfer(m, "E-model on " + std::to_string(c)); });

  r.results["formulas"] = cases.size();
  r.results["universes"] = ranks;
  r.results["hf_extensional"] = extensional;
  r.results["tr_points"] = points;
  r.results["tr_disagreements"] = disagreements;
  r.results["first_tr_disagreement"] = first;
  r.results["duplicated_quotient_size"] = dup_q.quotient ? json(dup_q.quotient->model.size()) : json(nullptr);
  r.results["models"] = models;
  r.results["congruence_passing"] = congruent;
  r.results["congruence_vs_Ax_cong_mismatches"] = ax_cong_mismatch;
  r.results["transfer_points"] = transfer_points;
  r.results["transfer_failures"] = transfer_failures;
  r.results["first_transfer_failure"] = first_transfer;
  r.row("E-formulas from corpus", std::to_string(cases.size()));
  r.row("HF universes extensional", yes_no(extensional));
  r.row("f <-> tr(f) on HF, rank <= " + std::to_string(p.rank), ratio(points - disagreements, points));
  r.row("duplicated model collapses", yes_no(dup_iso));
  r.row("congruence-passing models", ratio(congruent, models));
  r.row("congruence check = Ax_cong", yes_no(ax_cong_mismatch == 0));
  r.row("M |= tr(f) iff M/~ |= f", ratio(transfer_points - transfer_failures, transfer_points));
  r.require(extensional && disagreements == 0 && dup_iso && ax_cong_mismatch == 0 && transfer_failures == 0);
  return r;
}

Report run_pairing(std::uint32_t rank) {
  Report r;
  r.id = "pairing";
  Timer timer(r);
  r.parameters["rank"] = rank;
  if (rank < 2 || rank > 4) throw CapacityError("pairing runs at ranks 2..4");

  const auto& lib = formula_library();
  const HFUniverse u(rank);
  const QuasiProjections qp = quasiprojection_relations(u);
  const Relation id = Relation::identity(u.size());
  const bool f0 = qp.p0.converse().compose(qp.p0) <= id;
  const bool f1 = qp.p1.converse().compose(qp.p1) <= id;

  // Relativized surjectivity: both coordinates in V_{rank-2}.
  const std::uint32_t low = rank >= 3 ? HFUniverse(rank - 2).size() : 0;
  const Relation reach = qp.p0.converse().compose(qp.p1);
  std::uint64_t covered = 0;
  for (std::uint32_t a = 0; a < low; ++a)
    for (std::uint32_t b = 0; b < low; ++b)
      if (reach.contains(a, b)) ++covered;
  const std::uint64_t wanted = std::uint64_t{low} * low;

  const Relation asg[] = {qp.p0, qp.p1};
  const Term pi = pi_ra_term();
  const Term p = Term::var(0), q = Term::var(1);
  const Term fun_p = Term::comp(Term::conv(p), p).implies(Term::ident());
  const Term fun_q = Term::comp(Term::conv(q), q).implies(Term::ident());
  const bool c1 = evaluate(fun_p, asg, u.size()) == Relation::full(u.size());
  const bool c2 = evaluate(fun_q, asg, u.size()) == Relation::full(u.size());
  const Relation c3 = evaluate(Term::comp(Term::conv(p), q), asg, u.size());
  const Relation whole = evaluate(pi, asg, u.size());
  bool c3_low = true, pi_low = true;
  for (std::uint32_t a = 0; a < low; ++a)
    for (std::uint32_t b = 0; b < low; ++b) {
      c3_low = c3_low && c3.contains(a, b);
      pi_low = pi_low && whole.contains(a, b);
    }

  // Formula evaluation against decode_pair at every rank up to `rank`.
  std::uint64_t checks = 0, mismatches = 0, pairs = 0, non_kuratowski = 0;
  json first = nullptr;
  for (std::uint32_t k = 1; k <= rank; ++k) {
    const HFUniverse uk(k);
    const ModelFinite m = uk.model();
    for (std::uint32_t x = 0; x < uk.size(); ++x) {
      const auto d = decode_pair(uk.set(x));
      const std::uint32_t one[] = {x};
      ++checks;
      if (holds(m, lib["pair"], one) != d.has_value() && mismatches++ == 0)
        first = {{"rank", k}, {"x", x}, {"formula", "pair"}};
      if (k == rank && d) {
        ++pairs;
        if (HFSet::kuratowski(d->first, d->second) != uk.set(x) && !(d->first == d->second && uk.set(x) == HFSet::singleton(HFSet::singleton(d->first))))
          ++non_kuratowski;
      }
      for (std::uint32_t y = 0; y < uk.size(); ++y) {
        const std::uint32_t xy[] = {x, y};
        const bool o0 = d && uk.code_of(d->first) == y;
        const bool o1 = d && uk.code_of(d->second) == y;
        checks += 2;
        if (holds(m, lib["p0"], xy) != o0 && mismatches++ == 0) first = {{"rank", k}, {"x", x}, {"y", y}, {"formula", "p0"}};
        if (holds(m, lib["p1"], xy) != o1 && mismatches++ == 0) first = {{"rank", k}, {"x", x}, {"y", y}, {"formula", "p1"}};
      }
    }
  }

  r.results["carrier"] = u.size();
  r.results["p0_functional"] = f0;
  r.results["p1_functional"] = f1;
  r.results["surjective_on"] = "V_" + std::to_string(rank >= 2 ? rank - 2 : 0);
  r.results["surjective_pairs"] = covered;
  r.results["surjective_wanted"] = wanted;
  r.results["pi_functional_p_full"] = c1;
  r.results["pi_functional_q_full"] = c2;
  r.results["pi_third_contains_low"] = c3_low;
  r.results["pi_contains_low"] = pi_low;
  r.results["pair_codes"] = pairs;
  r.results["pair_codes_not_kuratowski"] = non_kuratowski;
  r.results["formula_checks"] = checks;
  r.results["formula_mismatches"] = mismatches;
  r.results["first_mismatch"] = first;
  r.row("P0, P1 functional", yes_no(f0 && f1));
  r.row("surjective on V_" + std::to_string(rank - 2) + " x V_" + std::to_string(rank - 2), ratio(covered, wanted));
  r.row("(p~;p -> 1'), (q~;q -> 1') full", yes_no(c1 && c2));
  r.row("p~;q and pi contain low pairs", yes_no(c3_low && pi_low));
  r.row("pair codes at rank " + std::to_string(rank), std::to_string(pairs) + " (" + std::to_string(non_kuratowski) + " non-Kuratowski)");
  r.row("pair/p0/p1 = decode_pair", ratio(checks - mismatches, checks));
  r.require(f0 && f1 && covered == wanted && c1 && c2 && c3_low && pi_low && mismatches == 0);
  return r;
}

Report run_arith(const ArithParams& p) {
  Report r;
  r.id = "arith";
  Timer timer(r);
  r.parameters["rank"] = p.rank;
  r.parameters["max_value"] = p.max_value;

  const std::uint32_t mv = p.max_value;
  std::vector<HFSet> ord;
  for (std::uint32_t k = 0; k <= mv; ++k) ord.push_back(HFSet::ordinal(k));
  const auto s = [&](const HFSet& x) -> std::optional<HFSet> {
    if (x.size() + 1 > mv) return std::nullopt;
    return ord[x.size() + 1];
  };
  const auto subset = [](const HFSet& a, const HFSet& b) {
    return std::all_of(a.members().begin(), a.members().end(), [&](const HFSet& z) { return b.contains(z); });
  };
  const auto le = [&](const HFSet& a, const HFSet& b) { return subset(a, b); };
  const auto lt = [&](const HFSet& a, const HFSet& b) { return subset(a, b) && a != b; };

  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> eq;  // name -> (instances, failures)
  const auto check = [&](const char* name, bool ok) {
    auto& c = eq[name];
    ++c.first;
    if (!ok) ++c.second;
  };
  const HFSet zero = ord[0];
  for (const auto& x : ord) {
    if (auto sx = s(x)) check("sx != 0", *sx != zero);
    check("not x < 0", !lt(x, zero));
    if (auto v = ordinal_sum(x, zero, mv)) check("x + 0 = x", *v == x);
    if (auto v = ordinal_product(x, zero, mv)) check("x . 0 = 0", *v == zero);
    if (auto v = ordinal_power(x, zero, mv); v && s(zero)) check("x exp 0 = s0", *v == *s(zero));
    for (const auto& y : ord) {
      const auto sx = s(x), sy = s(y);
      if (sx && sy) check("sx = sy -> x = y", *sx != *sy || x == y);
      if (sy) check("x < sy <-> x <= y", lt(x, *sy) == le(x, y));
      check("x < y or x = y or y < x", lt(x, y) || x == y || lt(y, x));
      if (sy) {
        const auto lhs = ordinal_sum(x, *sy, mv);
        const auto xy = ordinal_sum(x, y, mv);
        if (lhs && xy && s(*xy)) check("x + sy = s(x + y)", *lhs == *s(*xy));
        const auto mlhs = ordinal_product(x, *sy, mv);
        const auto mxy = ordinal_product(x, y, mv);
        if (mlhs && mxy)
          if (auto rhs = ordinal_sum(*mxy, x, mv)) check("x . sy = x . y + x", *mlhs == *rhs);
        const auto elhs = ordinal_power(x, *sy, mv);
        const auto exy = ordinal_power(x, y, mv);
        if (elhs && exy)
          if (auto rhs = ordinal_product(*exy, x, mv)) check("x exp sy = x exp y . x", *elhs == *rhs);
      }
    }
  }
  json eqs = json::object();
  std::uint64_t instances = 0, failures = 0;
  for (const auto& [name, c] : eq) {
    eqs[name] = {{"instances", c.first}, {"failures", c.second}};
    instances += c.first;
    failures += c.second;
    r.row(name, ratio(c.first - c.second, c.first));
  }

  // Ord and Ford against the oracles on every element of V_rank.
  const auto& lib = formula_library();
  const HFUniverse u(p.rank);
  const ModelFinite m = u.model();
  std::uint64_t ord_checks = 0, ord_mismatch = 0, ordinals = 0;
  for (std::uint32_t x = 0; x < u.size(); ++x) {
    const HFSet sx = u.set(x);
    const std::uint32_t a[] = {x};
    ord_checks += 2;
    if (holds(m, lib["Ord"], a) != is_ordinal(sx)) ++ord_mismatch;
    if (holds(m, lib["Ford"], a) != is_finite_ordinal(sx)) ++ord_mismatch;
    if (is_ordinal(sx)) ++ordinals;
  }
  const ModelFinite am = u.arithmetic_model();
  const bool lambda = holds(am, lib["lambda"]);
  const bool lambda_total = holds(am, lib["lambda_total"]);

  r.results["equations"] = eqs;
  r.results["instances"] = instances;
  r.results["failures"] = failures;
  r.results["ordinals_in_universe"] = ordinals;
  r.results["ord_ford_checks"] = ord_checks;
  r.results["ord_ford_mismatches"] = ord_mismatch;
  r.results["lambda_on_universe"] = lambda;
  r.results["lambda_total_on_universe"] = lambda_total;
  r.row("Ord/Ford formula = oracle on V_" + std::to_string(p.rank), ratio(ord_checks - ord_mismatch, ord_checks));
  r.row("lambda on V_" + std::to_string(p.rank), lambda ? "true" : "false");
  r.row("lambda_total on V_" + std::to_string(p.rank), std::string(lambda_total ? "true" : "false") + " (truncated universe)");
  r.require(failures == 0 && ord_mismatch == 0 && lambda);
  return r;
}

Report run_corpus_check(const CorpusParams& p) {
  Report r;
  r.id = "corpus-check";
  Timer timer(r);
  r.parameters["corpus_size"] = p.corpus.size();
  r.parameters["require_restricted"] = p.require_restricted;
  r.parameters["model_size"] = p.model_size;
  r.parameters["seed"] = p.seed;
  r.parameters["rank"] = p.rank;
  if (p.corpus.empty()) r.warnings.push_back("empty corpus: nothing to check");

  std::mt19937_64 g(p.seed);
  json entries = json::array();
  std::uint64_t total_models = 0, compile_failures = 0, tr_failures = 0, refused = 0;
  for (const auto& e : p.corpus) {
    json je;
    je["name"] = e.name;
    const Vocabulary vocab = vocabulary_of(e.formula);
    const std::uint32_t n = std::max<std::uint32_t>(3, e.formula.var_bound());
    je["n"] = n;
    if (p.require_restricted) {
      if (auto bad = first_unrestricted(e.formula, n)) {
        ++refused;
        je["error"] = "not restricted: " + to_string(*bad);
        r.warnings.push_back(e.name + " (line " + std::to_string(e.line) + ") is not restricted: " + to_string(*bad));
        entries.push_back(je);
        continue;
      }
    }
    CompileOptions opts;
    opts.n = n;
    opts.vocabulary = vocab;
    opts.require_restricted = p.require_restricted;
    const CompiledTerm ct = compile_to_term(e.formula, opts);
    const Formula expanded = expand_abbreviations(e.formula, vocab);

    std::uint64_t models = 0, bad = 0;
    for (std::uint32_t c = 1; c <= p.model_size; ++c) {
      std::uint64_t space = 1;
      for (std::uint32_t i = 0; i < n; ++i) space *= c;
      if (space > 4096) continue;
      const std::uint64_t fallback = space > 729 ? 8 : 64;
      const SetAlgebra cs(SigKind::CA, c, n);
      for_each_model(vocab, c, fallback, g, [&](const ModelFinite& m) {
        ++models;
        const auto atoms = natural_atom_sets(m, vocab, n);
        if (!(evaluate(ct.term, atoms, cs) == satisfaction_set(m, expanded, n))) ++bad;
      });
    }
    total_models += models;
    compile_failures += bad;
    je["models"] = models;
    je["compile_mismatches"] = bad;

    if (only_membership(e.formula)) {
      const Formula t = tr(e.formula);
      std::uint64_t points = 0, tr_bad = 0;
      for (std::uint32_t rank = 1; rank <= p.rank; ++rank) {
        const HFUniverse u(rank);
        const ModelFinite m = u.model();
        const auto free = e.formula.free_vars();
        if (assignment_count(m.size(), free.size()) > (std::uint64_t{1} << 16)) continue;
        for_each_assignment(m.size(), free, [&](std::span<const std::uint32_t> s) {
          ++points;
          if (holds(m, e.formula, s) != holds(m, t, s)) ++tr_bad;
        });
      }
      tr_failures += tr_bad;
      je["tr_points"] = points;
      je["tr_mismatches"] = tr_bad;
    }
    entries.push_back(je);
    r.row(e.name, std::to_string(models - bad) + "/" + std::to_string(models) + " models" +
                      (je.contains("tr_points") ? ", tr " + ratio(je["tr_points"].get<std::uint64_t>() - je["tr_mismatches"].get<std::uint64_t>(),
                                                                    je["tr_points"].get<std::uint64_t>())
                                                : std::string()));
  }
  r.results["entries"] = entries;
  r.results["cases"] = p.corpus.size();
  r.results["models"] = total_models;
  r.results["compile_mismatches"] = compile_failures;
  r.results["tr_mismatches"] = tr_failures;
  r.results["unrestricted"] = refused;
  r.require(compile_failures == 0 && tr_failures == 0 && refused == 0);
  return r;
}

}  // namespace cylalg
