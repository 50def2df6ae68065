// One PASS/FAIL line per acceptance criterion, with wall time and limit.
// Library reports are cross-checked against brute-force oracles where the
// oracle is small enough to run.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "cylalg/constructions.hpp"
#include "cylalg/experiments.hpp"
#include "cylalg/library.hpp"
#include "oracles.hpp"

using namespace cylalg;

namespace {

int failures = 0;

void criterion(int id, const std::string& what, double limit, const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit <= 0 || s < limit;
  if (!in_time) detail += (detail.empty() ? "" : "; ") + std::string("over time limit");
  const bool pass = ok && in_time;
  if (!pass) ++failures;
  char timing[64];
  if (limit > 0)
    std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", s, limit);
  else
    std::snprintf(timing, sizeof timing, "%.2f s", s);
  std::printf("%s criterion %d: %s [%s]%s%s\n", pass ? "PASS" : "FAIL", id, what.c_str(), timing,
              detail.empty() ? "" : " ", detail.c_str());
  std::fflush(stdout);
}

template <class T>
T get(const Report& r, const char* key) {
  return r.results.at(key).get<T>();
}

// sigma(tau(x)) = x and delta(tau(x)) = 1 recomputed from the formulas by
// naive evaluation, with the generator read as a ternary R.
bool oracle_tau_sigma_delta(std::uint32_t u, std::uint64_t& cases) {
  const auto& lib = formula_library();
  const auto ts = oracle::all_tuples(u, 3);
  cases = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ts.size()); ++mask) {
    oracle::Model m;
    m.size = u;
    m.rels["R"];
    oracle::Set x(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k)
      if ((mask >> k) & 1U) {
        m.rels["R"].insert(ts[k]);
        x[k] = true;
      }
    const oracle::Set tau = oracle::satisfaction(m, lib["phi"], 3);
    oracle::Model mt;
    mt.size = u;
    mt.rels["R"];
    for (std::size_t k = 0; k < ts.size(); ++k)
      if (tau[k]) mt.rels["R"].insert(ts[k]);
    if (oracle::satisfaction(mt, lib["psi"], 3) != x) return false;
    const oracle::Set delta = oracle::satisfaction(mt, lib["eta"], 3);
    if (std::find(delta.begin(), delta.end(), false) != delta.end()) return false;
    ++cases;
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "example --u 3: closed form, |U|+1 chain values, Sg{X} finite and simple, >= 3 atoms", 5,
            [](std::string& d) {
              const Report r = run_example({});
              // Oracle: Y_{m+1} = c0((c1(Y_m - X)) . X) from the definitions.
              const oracle::SetAlg o(3, 3);
              oracle::Set x = o.empty(), y = o.full();
              for (std::size_t k = 0; k < o.size(); ++k) x[k] = o.tuples[k][0] < o.tuples[k][1];
              std::set<oracle::Set> values;
              bool closed = true;
              for (std::uint32_t m = 0; m <= 3; ++m) {
                values.insert(y);
                for (std::size_t k = 0; k < o.size(); ++k) closed = closed && y[k] == (o.tuples[k][1] >= m);
                y = o.cyl(0, oracle::meet(o.cyl(1, oracle::meet(y, oracle::complement(x))), x));
              }
              const auto atoms = get<std::size_t>(r, "atoms");
              d = "atoms=" + std::to_string(atoms) + " distinct=" + std::to_string(get<std::size_t>(r, "distinct"));
              return r.passed() && get<bool>(r, "closed_form") && get<std::size_t>(r, "distinct") == 4 &&
                     get<bool>(r, "simple") && atoms >= 3 && closed && values.size() == 4;
            });

  criterion(2, "sigma(tau(x)) = x and delta(tau(x)) = 1: all 256 at |U|=2, 1000 seeded at |U|=3", 60,
            [](std::string& d) {
              TauSigmaDeltaParams p2;
              p2.u = 2;
              const Report r2 = run_tau_sigma_delta(p2);
              TauSigmaDeltaParams p3;
              p3.u = 3;
              p3.samples = 1000;
              const Report r3 = run_tau_sigma_delta(p3);
              std::uint64_t oracle_cases = 0;
              const bool oracle_ok = oracle_tau_sigma_delta(2, oracle_cases);
              d = "u=2 cases=" + std::to_string(get<std::uint64_t>(r2, "cases")) +
                  " u=3 cases=" + std::to_string(get<std::uint64_t>(r3, "cases")) +
                  " oracle u=2 cases=" + std::to_string(oracle_cases);
              const auto clean = [](const Report& r) {
                return get<std::uint64_t>(r, "sigma_tau_counterexamples") == 0 &&
                       get<std::uint64_t>(r, "delta_tau_counterexamples") == 0;
              };
              return r2.passed() && r3.passed() && clean(r2) && clean(r3) && get<std::uint64_t>(r2, "cases") == 256 &&
                     get<bool>(r2, "exhaustive") && get<std::uint64_t>(r3, "cases") >= 1000 && oracle_ok &&
                     oracle_cases == 256;
            });

  criterion(3, "window: Ax true at F={0}, eta false at F={0}, eta true at F={0,5}, stable over radii 16/32/64", 5,
            [](std::string& d) {
              const auto run = [&](const char* f, std::vector<std::int64_t> fixed, bool want) {
                WindowParams p;
                p.formula = f;
                p.fixed = std::move(fixed);
                p.expect = want;
                const Report r = run_window(p);
                d += std::string(d.empty() ? "" : " ") + f + "=" + (get<bool>(r, "value") ? "true" : "false");
                return r.verdict == Verdict::SurrogatePass && get<bool>(r, "value") == want && get<bool>(r, "stable");
              };
              const bool a = run("Ax", {0}, true);
              const bool b = run("eta", {0}, false);
              const bool c = run("eta", {0, 5}, true);
              return a && b && c;
            });

  criterion(4, "|Fr_k| = 2^(2^k) with 2^k atoms for k <= 3; Fr_{k+1} ~ Fr_k x Fr_k for k = 1, 2", 30,
            [](std::string& d) {
              const Report r = run_free_ba(3);
              bool sizes = true;
              for (std::uint32_t k = 0; k <= 3; ++k) {
                // Oracle: close the k projection sets over the 2^k maps k -> 2
                // under complement and join, then count elements and atoms.
                const std::uint64_t maps = oracle::ipow(2, k);
                std::vector<oracle::Set> gens;
                for (std::uint32_t g = 0; g < k; ++g) {
                  oracle::Set s(maps);
                  for (std::uint64_t f = 0; f < maps; ++f) s[f] = (f >> g) & 1U;
                  gens.push_back(s);
                }
                const auto family = oracle::closure(gens, {}, maps);
                const FreeBA f = free_boolean_algebra(k);
                sizes = sizes && family.size() == oracle::ipow(2, maps) &&
                        oracle::minimal_nonzero(family).size() == maps && f.algebra.atom_count() == maps &&
                        f.algebra.size() == family.size();
              }
              bool isos = true;
              for (const auto& e : r.results.at("isomorphisms")) isos = isos && e.at("certified").get<bool>();
              d = "isomorphisms=" + std::to_string(r.results.at("isomorphisms").size());
              return r.passed() && sizes && isos && r.results.at("isomorphisms").size() == 2;
            });

  criterion(5, "splitting in Fr_3: a.y != 0 and a.-y != 0 for every nonzero a over the other generators", 30,
            [](std::string& d) {
              const Report r = run_free_ba(3);
              // Oracle: Fr_3 as subsets of the 8 maps 3 -> 2.
              std::uint64_t cases = 0;
              bool ok = true;
              for (std::uint32_t sub = 0; sub + 1 < 8; ++sub) {
                std::vector<oracle::Set> gens;
                for (std::uint32_t g = 0; g < 3; ++g) {
                  if (!((sub >> g) & 1U)) continue;
                  oracle::Set s(8);
                  for (std::uint32_t f = 0; f < 8; ++f) s[f] = (f >> g) & 1U;
                  gens.push_back(s);
                }
                const auto family = oracle::closure(gens, {}, 8);
                for (std::uint32_t y = 0; y < 3; ++y) {
                  if ((sub >> y) & 1U) continue;
                  oracle::Set ys(8);
                  for (std::uint32_t f = 0; f < 8; ++f) ys[f] = (f >> y) & 1U;
                  for (const auto& a : family) {
                    if (oracle::none(a)) continue;
                    ++cases;
                    ok = ok && !oracle::none(oracle::meet(a, ys)) &&
                         !oracle::none(oracle::meet(a, oracle::complement(ys)));
                  }
                }
              }
              d = "library " + std::to_string(get<std::uint64_t>(r, "splitting_holds")) + "/" +
                  std::to_string(get<std::uint64_t>(r, "splitting_cases")) + ", oracle " + std::to_string(cases);
              return r.passed() && get<std::uint64_t>(r, "splitting_holds") == get<std::uint64_t>(r, "splitting_cases") &&
                     get<std::uint64_t>(r, "splitting_cases") == cases && ok && cases == 66;
            });

  criterion(6, "discriminator lemma on every element of every generated subalgebra with carrier <= 4096", 0,
            [](std::string& d) {
              const Report r = run_discriminator_matrix({});
              d = "algebras=" + std::to_string(get<std::size_t>(r, "algebras")) +
                  " checks=" + std::to_string(get<std::uint64_t>(r, "checks"));
              return r.passed() && get<std::uint64_t>(r, "violations") == 0 && get<std::size_t>(r, "algebras") > 0;
            });

  criterion(7, "atoms below hereditarily closed b <= 2; decomposition round-trips when its precondition passes", 0,
            [](std::string& d) {
              const Report r = run_hereditary({});
              d = "max=" + std::to_string(get<std::size_t>(r, "max_closed_atoms")) +
                  " decompositions=" + std::to_string(get<std::uint64_t>(r, "decompositions"));
              return r.passed() && get<std::size_t>(r, "max_closed_atoms") <= 2 &&
                     get<std::uint64_t>(r, "bound_violations") == 0 &&
                     get<std::uint64_t>(r, "decomposition_failures") == 0 && get<std::uint64_t>(r, "decompositions") > 0;
            });

  criterion(8, "f <-> tr(f) on HF ranks <= 3 over the shipped corpus; quotient transfer", 60, [](std::string& d) {
    TranslateParams p;
    p.corpus = shipped_corpus();
    const Report r = run_translate(p);
    d = "tr points=" + std::to_string(get<std::uint64_t>(r, "tr_points")) +
        " transfer points=" + std::to_string(get<std::uint64_t>(r, "transfer_points"));
    return r.passed() && get<std::uint64_t>(r, "tr_disagreements") == 0 &&
           get<std::uint64_t>(r, "transfer_failures") == 0 && get<std::uint64_t>(r, "transfer_points") > 0;
  });

  criterion(9, "P0, P1 functional; surjective on V_{r-2} at rank 3; pi parts; pair/p0/p1 agree with decode", 0,
            [](std::string& d) {
              bool ok = true;
              for (std::uint32_t rank : {2u, 3u}) {
                const Report r = run_pairing(rank);
                ok = ok && r.passed() && get<bool>(r, "p0_functional") && get<bool>(r, "p1_functional") &&
                     get<std::uint64_t>(r, "formula_mismatches") == 0;
                if (rank == 3) {
                  ok = ok && get<std::uint64_t>(r, "surjective_pairs") == get<std::uint64_t>(r, "surjective_wanted");
                  d = "rank 3 surjective " + std::to_string(get<std::uint64_t>(r, "surjective_pairs")) + "/" +
                      std::to_string(get<std::uint64_t>(r, "surjective_wanted"));
                }
              }
              return ok;
            });

  criterion(10, "arithmetic equation instances with values <= 6; Ord/Ford agree with the oracle at rank 4", 0,
            [](std::string& d) {
              const Report r = run_arith({});
              d = "instances=" + std::to_string(get<std::uint64_t>(r, "instances")) +
                  " ord/ford checks=" + std::to_string(get<std::uint64_t>(r, "ord_ford_checks"));
              return r.passed() && get<std::uint64_t>(r, "failures") == 0 &&
                     get<std::uint64_t>(r, "ord_ford_mismatches") == 0 && get<std::uint64_t>(r, "instances") > 0;
            });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
