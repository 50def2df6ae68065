#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cylalg/corpus.hpp"
#include "cylalg/finite_algebra.hpp"
#include "cylalg/signature.hpp"

namespace cylalg {

/// SurrogatePass marks results that rest on a window-model approximation of
/// an infinite structure rather than on an exhaustive finite check.
enum class Verdict { Pass, Fail, SurrogatePass };

std::string_view to_string(Verdict v);

inline constexpr std::string_view kReportSchema = "cylalg.report/1";

struct Report {
  std::string id;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  Verdict verdict = Verdict::Pass;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;
  /// Text table, in order.
  std::vector<std::pair<std::string, std::string>> rows;
  /// Wall time; shown in text output only, so JSON stays byte-stable.
  double seconds = 0;

  bool passed() const { return verdict != Verdict::Fail; }
  /// Downgrades the verdict to Fail when `ok` is false.
  void require(bool ok) {
    if (!ok) verdict = Verdict::Fail;
  }
  void row(std::string key, std::string value) { rows.emplace_back(std::move(key), std::move(value)); }
};

std::string report_json(const Report& r);
std::string report_text(const Report& r);

struct ExampleParams {
  std::uint32_t u = 3;
  SigKind kind = SigKind::CA;
  std::uint64_t cap = kNoCap;
};
/// Chain Y_m, its closed form, Sg{X}, atom count and simplicity.
Report run_example(const ExampleParams& p);
/// Atoms of Sg{X} with their sizes and smallest tuples.
Report run_atoms(const ExampleParams& p);

struct IdentityParams {
  /// Terms in prefix syntax; both empty selects the discriminator matrix.
  std::string lhs;
  std::string rhs;
  SigKind kind = SigKind::CA;
  std::uint32_t n = 3;
  std::uint32_t u = 2;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
};
/// lhs = rhs in the full set algebra, over every assignment when there are
/// at most 2^16 of them and over `samples` seeded random ones otherwise.
Report run_check_identity(const IdentityParams& p);

struct MatrixParams {
  std::uint64_t samples = 12;  // random generators per (signature, n, u)
  std::uint64_t seed = 0;
  std::size_t max_atoms = 12;  // carrier <= 2^max_atoms
};
/// x <= d(x), d(d(x)) <= d(x) and f(x) <= d(x) for unary f on every element
/// of every single-generated subalgebra in the test matrix.
Report run_discriminator_matrix(const MatrixParams& p);
/// Atoms below hereditarily closed b number at most 2; decomposition by b
/// is a verified isomorphism whenever its precondition passes.
Report run_hereditary(const MatrixParams& p);

/// |Fr_k| and atom counts for k <= max_k, Fr_{k+1} ~ Fr_k x Fr_k for
/// 1 <= k < max_k, splitting in Fr_{max_k} and independence of generators.
Report run_free_ba(std::uint32_t max_k);

struct TauSigmaDeltaParams {
  std::uint32_t u = 2;
  /// Exhaustive when u^3 <= 8, else this many seeded random generators.
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
};
/// s(t(x)) = x and d(t(x)) = 1 in Cs_3 with t, s, d the compiled terms of
/// phi, psi and eta.
Report run_tau_sigma_delta(const TauSigmaDeltaParams& p);

struct WindowParams {
  /// Library name or formula text.
  std::string formula = "eta";
  std::int64_t w = 16;
  std::int64_t margin = 2;
  std::vector<std::int64_t> fixed{0};
  std::vector<std::int64_t> at;
  std::optional<bool> expect;
};
Report run_window(const WindowParams& p);

struct TranslateParams {
  std::uint32_t rank = 3;
  std::vector<CorpusEntry> corpus;
  /// Exhaustive E-models up to this carrier size for quotient transfer.
  std::uint32_t model_size = 3;
};
/// f <-> tr(f) pointwise on HF universes up to `rank`, and M |= tr(f) iff
/// M/~ |= f on every congruence-passing test model.
Report run_translate(const TranslateParams& p);

/// Functionality and relativized surjectivity of P0, P1, the RA term on
/// them, and agreement of pair, p0 and p1 with decode_pair at rank <= r.
Report run_pairing(std::uint32_t rank);

struct ArithParams {
  std::uint32_t rank = 4;
  std::uint32_t max_value = 6;
};
Report run_arith(const ArithParams& p);

struct CorpusParams {
  std::vector<CorpusEntry> corpus;
  bool require_restricted = false;
  /// Exhaustive models up to this carrier size.
  std::uint32_t model_size = 3;
  std::uint64_t seed = 0;
  /// HF ranks for tr soundness.
  std::uint32_t rank = 4;
};
/// Compiler correctness and tr soundness over the corpus.
Report run_corpus_check(const CorpusParams& p);

/// The corpus shipped with the library (the same text as data/corpus.txt).
std::vector<CorpusEntry> shipped_corpus();

}  // namespace cylalg
