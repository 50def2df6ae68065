#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cylalg/constructions.hpp"
#include "cylalg/error.hpp"
#include "cylalg/experiments.hpp"
#include "cylalg/hf.hpp"

using namespace cylalg;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

SigKind parse_kind(const std::string& s) {
  try {
    return parse_sig_kind(s);
  } catch (const Error&) {
    throw CLI::ValidationError("--sig", "unknown signature '" + s + "' (BA, DF, SC, CA, RA)");
  }
}

std::uint64_t cap_value(const std::string& s) {
  if (s == "none") return kNoCap;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--cap", "expected a number or 'none', got '" + s + "'");
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  body(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite cylindric, substitution, diagonal-free and relation set algebras; experiment runner."};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "print the JSON report instead of the text table");

  std::function<Report()> run;

  // example / atoms
  std::uint32_t ex_u = 3;
  std::string ex_sig = "CA", ex_cap = "none", ex_out;
  for (const char* name : {"example", "atoms"}) {
    auto* sc = app.add_subcommand(name, std::string(name) == "example"
                                            ? "chain Y_m, closed form, Sg{X}, simplicity"
                                            : "atoms of Sg{X} with sizes and first tuples");
    sc->add_option("--u", ex_u, "base size |U| (>= 2)")->capture_default_str();
    sc->add_option("--sig", ex_sig, "DF, SC or CA")->capture_default_str();
    sc->add_option("--cap", ex_cap, "largest admitted carrier size, or none")->capture_default_str();
    sc->add_option("--write-algebra", ex_out, "also write Sg{X} to this file (cylalg-algebra format)");
    sc->add_flag("--json", json, "print the JSON report");
    const bool is_example = std::string(name) == "example";
    sc->callback([&, is_example] {
      run = [&, is_example] {
        const ExampleParams p{ex_u, parse_kind(ex_sig), cap_value(ex_cap)};
        Report r = is_example ? run_example(p) : run_atoms(p);
        if (!ex_out.empty()) {
          const FiniteAlgebra a = example_algebra(p.u, p.kind, p.cap).algebra;
          write_file(ex_out, [&](std::ostream& os) { write_algebra(os, a); });
        }
        return r;
      };
    });
  }

  // check-identity
  IdentityParams idp;
  std::string id_sig = "CA", id_cap = "12";
  {
    auto* sc = app.add_subcommand("check-identity",
                                  "lhs = rhs in a full set algebra; without terms, the discriminator lemma matrix");
    sc->add_option("--lhs", idp.lhs, "left term, prefix syntax");
    sc->add_option("--rhs", idp.rhs, "right term, prefix syntax");
    sc->add_option("--sig", id_sig, "BA, DF, SC, CA or RA")->capture_default_str();
    sc->add_option("--n", idp.n, "dimension")->capture_default_str();
    sc->add_option("--u", idp.u, "base size")->capture_default_str();
    sc->add_option("--samples", idp.samples, "random assignments (or generators per matrix cell)")->capture_default_str();
    sc->add_option("--seed", idp.seed, "random seed")->capture_default_str();
    sc->add_option("--cap", id_cap, "matrix: largest atom count checked")->capture_default_str();
    sc->add_flag("--json", json, "print the JSON report");
    sc->callback([&, sc] {
      run = [&, sc] {
        if (idp.lhs.empty() != idp.rhs.empty()) throw CLI::ValidationError("--lhs/--rhs", "give both terms or neither");
        if (idp.lhs.empty()) {
          MatrixParams mp;
          mp.samples = sc->count("--samples") ? idp.samples : mp.samples;
          mp.seed = idp.seed;
          mp.max_atoms = cap_value(id_cap);
          Report r = run_discriminator_matrix(mp);
          r.id = "check-identity";
          return r;
        }
        idp.kind = parse_kind(id_sig);
        return run_check_identity(idp);
      };
    });
  }

  // free-ba
  std::uint32_t fb_k = 3;
  {
    auto* sc = app.add_subcommand("free-ba", "free Boolean algebras: sizes, Fr_{k+1} ~ Fr_k x Fr_k, splitting");
    sc->add_option("--n", fb_k, "largest number of generators k (<= 4)")->capture_default_str();
    sc->add_flag("--json", json, "print the JSON report");
    sc->callback([&] { run = [&] { return run_free_ba(fb_k); }; });
  }

  // tau-sigma-delta
  TauSigmaDeltaParams tsd;
  {
    auto* sc = app.add_subcommand("tau-sigma-delta", "sigma(tau(x)) = x and delta(tau(x)) = 1 in Cs_3");
    sc->add_option("--u", tsd.u, "base size")->capture_default_str();
    sc->add_option("--samples", tsd.samples, "random generators when not exhaustive")->capture_default_str();
    sc->add_option("--seed", tsd.seed, "random seed")->capture_default_str();
    sc->add_flag("--json", json, "print the JSON report");
    sc->callback([&] { run = [&] { return run_tau_sigma_delta(tsd); }; });
  }

  // window
  WindowParams wp;
  std::string expect;
  {
    auto* sc = app.add_subcommand("window", "bounded window evaluation on (Z, R*) with fixed points F");
    sc->add_option("--formula", wp.formula, "library name or formula text")->capture_default_str();
    sc->add_option("--w", wp.w, "radius W")->capture_default_str();
    sc->add_option("--margin", wp.margin, "margin M")->capture_default_str();
    sc->add_option("--fixed", wp.fixed, "fixed points a,b,...")->delimiter(',')->capture_default_str();
    sc->add_option("--at", wp.at, "values of v0,v1,... for free variables")->delimiter(',');
    sc->add_option("--expect", expect, "expected value: true or false")->check(CLI::IsMember({"true", "false"}));
    sc->add_flag("--json", json, "print the JSON report");
    sc->callback([&] {
      run = [&] {
        if (!expect.empty()) wp.expect = expect == "true";
        return run_window(wp);
      };
    });
  }

  // translate
  TranslateParams tp;
  std::string tr_corpus;
  {
    auto* sc = app.add_subcommand("translate", "tr soundness on HF universes and quotient transfer");
    sc->add_option("--rank", tp.rank, "largest HF rank (1..5)")->capture_default_str();
    sc->add_option("--corpus", tr_corpus, "corpus file (default: shipped corpus)");
    sc->add_option("--size", tp.model_size, "exhaustive E-models up to this carrier size")->capture_default_str();
    sc->add_flag("--json", json, "print the JSON report");
    sc->callback([&] {
      run = [&] {
        tp.corpus = tr_corpus.empty() ? shipped_corpus() : read_corpus_file(tr_corpus);
        return run_translate(tp);
      };
    });
  }

  // pairing
  std::uint32_t pair_rank = 3;
  std::string pair_out;
  {
    auto* sc = app.add_subcommand("pairing", "quasiprojections P0, P1 on HF sets and the pairing formulas");
    sc->add_option("--rank", pair_rank, "HF rank (2..4)")->capture_default_str();
    sc->add_option("--write-model", pair_out, "also write V_rank with E and set labels as model JSON");
    sc->add_flag("--json", json, "print the JSON report");
    sc->callback([&] {
      run = [&] {
        Report r = run_pairing(pair_rank);
        if (!pair_out.empty()) {
          const ModelFinite m = hf_universe(pair_rank).model(true);
          write_file(pair_out, [&](std::ostream& os) { os << model_to_json(m); });
        }
        return r;
      };
    });
  }

  // arith
  ArithParams ap;
  {
    auto* sc = app.add_subcommand("arith", "ordinal arithmetic oracles, Ord/Ford and lambda on HF sets");
    sc->add_option("--rank", ap.rank, "HF rank for the formula checks (1..5)")->capture_default_str();
    sc->add_option("--max", ap.max_value, "largest ordinal value in equation instances")->capture_default_str();
    sc->add_flag("--json", json, "print the JSON report");
    sc->callback([&] { run = [&] { return run_arith(ap); }; });
  }

  // hereditary
  MatrixParams hp;
  std::string her_cap = "12";
  {
    auto* sc = app.add_subcommand("hereditary", "atoms below hereditarily closed b and decomposition by b");
    sc->add_option("--samples", hp.samples, "random generators per matrix cell")->capture_default_str();
    sc->add_option("--seed", hp.seed, "random seed")->capture_default_str();
    sc->add_option("--cap", her_cap, "largest atom count checked")->capture_default_str();
    sc->add_flag("--json", json, "print the JSON report");
    sc->callback([&] {
      run = [&] {
        hp.max_atoms = cap_value(her_cap);
        return run_hereditary(hp);
      };
    });
  }

  // corpus-check
  CorpusParams cp;
  std::string corpus_path;
  {
    auto* sc = app.add_subcommand("corpus-check", "compiler correctness and tr soundness over a corpus");
    sc->alias("corpus_check");
    sc->add_option("path", corpus_path, "corpus file (default: shipped corpus)");
    sc->add_flag("--require-restricted", cp.require_restricted, "refuse formulas that are not restricted");
    sc->add_option("--n", cp.model_size, "exhaustive models up to this carrier size")->capture_default_str();
    sc->add_option("--rank", cp.rank, "largest HF rank for tr soundness")->capture_default_str();
    sc->add_option("--seed", cp.seed, "random seed for sampled models")->capture_default_str();
    sc->add_flag("--json", json, "print the JSON report");
    sc->callback([&] {
      run = [&] {
        cp.corpus = corpus_path.empty() ? shipped_corpus() : read_corpus_file(corpus_path);
        return run_corpus_check(cp);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const Report r = run();
    std::cout << (json ? report_json(r) : report_text(r));
    return r.passed() ? kExitPass : kExitFail;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
