#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cylalg/bitset.hpp"
#include "cylalg/formula.hpp"
#include "cylalg/space.hpp"

namespace cylalg {

/// Tuples of one relation over a carrier of size <= 65536, arity <= 4.
/// Membership is a dense bitset when size^arity <= 2^26, a hash set
/// otherwise. A per-position index lists the tuples with a given value.
class RelationTable {
 public:
  static constexpr std::uint32_t kMaxArity = 4;

  RelationTable(std::uint32_t carrier, std::uint32_t arity);

  std::uint32_t arity() const noexcept { return arity_; }
  std::size_t tuple_count() const noexcept { return tuples_.size(); }
  /// Returns false when the tuple was already present.
  bool insert(std::span<const std::uint32_t> t);
  bool contains(std::span<const std::uint32_t> t) const;
  /// i-th inserted tuple, packed 16 bits per coordinate (coordinate 0 low).
  std::uint64_t packed(std::size_t i) const { return tuples_[i]; }
  std::uint32_t coord(std::size_t i, std::uint32_t pos) const {
    return static_cast<std::uint32_t>((tuples_[i] >> (16 * pos)) & 0xFFFF);
  }
  std::vector<std::vector<std::uint32_t>> tuples() const;
  /// Indices of tuples whose coordinate `pos` equals `value`.
  const std::vector<std::uint32_t>& with(std::uint32_t pos, std::uint32_t value) const;

 private:
  std::uint64_t dense_index(std::span<const std::uint32_t> t) const;
  static std::uint64_t pack(std::span<const std::uint32_t> t);

  std::uint32_t carrier_;
  std::uint32_t arity_;
  bool dense_;
  Bitset bits_;
  std::unordered_set<std::uint64_t> set_;
  std::vector<std::uint64_t> tuples_;
  std::vector<std::vector<std::vector<std::uint32_t>>> index_;  // [pos][value]
  std::vector<std::uint32_t> empty_;
};

/// A finite relational structure on {0, ..., size-1}.
class ModelFinite {
 public:
  static constexpr std::uint32_t kMaxSize = 65536;

  explicit ModelFinite(std::uint32_t size, std::vector<std::string> labels = {});

  std::uint32_t size() const noexcept { return size_; }
  /// Optional display names, one per element.
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  void add_relation(const std::string& name, std::uint32_t arity);
  void add_tuple(const std::string& name, std::span<const std::uint32_t> tuple);
  void add_tuple(const std::string& name, std::initializer_list<std::uint32_t> tuple) {
    add_tuple(name, std::span<const std::uint32_t>(tuple.begin(), tuple.size()));
  }

  bool has_relation(const std::string& name) const { return rels_.count(name) != 0; }
  const RelationTable& relation(const std::string& name) const;
  Vocabulary vocabulary() const;
  bool holds(const std::string& name, std::span<const std::uint32_t> tuple) const {
    return relation(name).contains(tuple);
  }

 private:
  std::uint32_t size_;
  std::vector<std::string> labels_;
  std::map<std::string, RelationTable> rels_;
};

/// {"carrier": n | [labels], "relations": {"E": {"arity": 2, "tuples": [[0,1], ...]}}}
std::string model_to_json(const ModelFinite& m);
ModelFinite model_from_json(std::string_view text);

/// Direct Tarskian truth of `f` under `assignment` (indexed by variable;
/// must cover every free variable). Atoms must match the model's arities.
bool holds(const ModelFinite& m, const Formula& f, std::span<const std::uint32_t> assignment);
bool holds(const ModelFinite& m, const Formula& f);

/// { s in ^n(carrier) : M |= f[s] }. Free variables must be < n; bound
/// variables may exceed n.
Element satisfaction_set(const ModelFinite& m, const Formula& f, std::uint32_t n);

}  // namespace cylalg
