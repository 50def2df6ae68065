#include "cylalg/model.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

#include <json.hpp>

#include "cylalg/error.hpp"

namespace cylalg {

RelationTable::RelationTable(std::uint32_t carrier, std::uint32_t arity)
    : carrier_(carrier), arity_(arity), dense_(false) {
  if (arity > kMaxArity) throw CapacityError("relation arity above " + std::to_string(kMaxArity));
  double cells = 1;
  for (std::uint32_t k = 0; k < arity; ++k) cells *= carrier;
  dense_ = cells <= double(1 << 26);
  if (dense_) bits_ = Bitset(static_cast<std::size_t>(cells));
  index_.assign(arity, std::vector<std::vector<std::uint32_t>>(carrier));
}

std::uint64_t RelationTable::dense_index(std::span<const std::uint32_t> t) const {
  std::uint64_t idx = 0;
  for (std::size_t k = t.size(); k-- > 0;) idx = idx * carrier_ + t[k];
  return idx;
}

std::uint64_t RelationTable::pack(std::span<const std::uint32_t> t) {
  std::uint64_t key = 0;
  for (std::size_t k = 0; k < t.size(); ++k) key |= std::uint64_t{t[k]} << (16 * k);
  return key;
}

bool RelationTable::insert(std::span<const std::uint32_t> t) {
  if (t.size() != arity_)
    throw DomainError("tuple of length " + std::to_string(t.size()) + " for a relation of arity " +
                      std::to_string(arity_));
  for (auto v : t)
    if (v >= carrier_) throw DomainError("tuple element " + std::to_string(v) + " outside the carrier");
  if (dense_) {
    const auto i = dense_index(t);
    if (bits_.test(i)) return false;
    bits_.set(i);
  } else if (!set_.insert(pack(t)).second) {
    return false;
  }
  const auto id = static_cast<std::uint32_t>(tuples_.size());
  tuples_.push_back(pack(t));
  for (std::uint32_t p = 0; p < arity_; ++p) index_[p][t[p]].push_back(id);
  return true;
}

bool RelationTable::contains(std::span<const std::uint32_t> t) const {
  if (t.size() != arity_) throw DomainError("tuple length does not match relation arity");
  for (auto v : t)
    if (v >= carrier_) return false;
  if (dense_) return bits_.test(dense_index(t));
  return set_.count(pack(t)) != 0;
}

std::vector<std::vector<std::uint32_t>> RelationTable::tuples() const {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t i = 0; i < tuples_.size(); ++i) {
    std::vector<std::uint32_t> t(arity_);
    for (std::uint32_t p = 0; p < arity_; ++p) t[p] = coord(i, p);
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<std::uint32_t>& RelationTable::with(std::uint32_t pos, std::uint32_t value) const {
  if (pos >= arity_ || value >= carrier_) return empty_;
  return index_[pos][value];
}

// ---------------------------------------------------------------------------

ModelFinite::ModelFinite(std::uint32_t size, std::vector<std::string> labels)
    : size_(size), labels_(std::move(labels)) {
  if (size == 0) throw DomainError("a model needs a nonempty carrier");
  if (size > kMaxSize) throw CapacityError("model carrier above " + std::to_string(kMaxSize));
  if (!labels_.empty() && labels_.size() != size) throw DomainError("label count differs from carrier size");
}

void ModelFinite::add_relation(const std::string& name, std::uint32_t arity) {
  if (rels_.count(name)) throw DomainError("relation " + name + " already declared");
  rels_.emplace(name, RelationTable(size_, arity));
}

void ModelFinite::add_tuple(const std::string& name, std::span<const std::uint32_t> tuple) {
  auto it = rels_.find(name);
  if (it == rels_.end()) throw DomainError("unknown relation " + name);
  it->second.insert(tuple);
}

const RelationTable& ModelFinite::relation(const std::string& name) const {
  auto it = rels_.find(name);
  if (it == rels_.end()) throw DomainError("model has no relation " + name);
  return it->second;
}

Vocabulary ModelFinite::vocabulary() const {
  Vocabulary v;
  for (const auto& [name, r] : rels_) v.add(name, r.arity());
  return v;
}

std::string model_to_json(const ModelFinite& m) {
  nlohmann::ordered_json j;
  if (m.labels().empty())
    j["carrier"] = m.size();
  else
    j["carrier"] = m.labels();
  nlohmann::ordered_json rels = nlohmann::ordered_json::object();
  for (const auto& name : m.vocabulary().symbols()) {
    const auto& r = m.relation(name);
    rels[name] = {{"arity", r.arity()}, {"tuples", r.tuples()}};
  }
  j["relations"] = rels;
  return j.dump();
}

ModelFinite model_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model JSON: ") + e.what(), e.byte);
  }
  try {
    const auto& c = j.at("carrier");
    std::vector<std::string> labels;
    std::uint32_t size = 0;
    if (c.is_array()) {
      labels = c.get<std::vector<std::string>>();
      size = static_cast<std::uint32_t>(labels.size());
    } else {
      size = c.get<std::uint32_t>();
    }
    ModelFinite m(size, std::move(labels));
    if (j.contains("relations")) {
      for (const auto& [name, r] : j.at("relations").items()) {
        m.add_relation(name, r.at("arity").get<std::uint32_t>());
        for (const auto& t : r.at("tuples")) m.add_tuple(name, t.get<std::vector<std::uint32_t>>());
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what(), 0);
  }
}

// ---------------------------------------------------------------------------

namespace {

using Node = Formula::Node;

class Evaluator {
 public:
  explicit Evaluator(const ModelFinite& m) : m_(m), env_(kMaxVariables, 0) {}

  std::vector<std::uint32_t>& env() { return env_; }

  bool eval(const Node* n) {
    switch (n->kind) {
      case FormulaKind::True: return true;
      case FormulaKind::False: return false;
      case FormulaKind::Atom: return atom(n);
      case FormulaKind::Eq: return env_[n->vars[0]] == env_[n->vars[1]];
      case FormulaKind::Not: return !eval(n->a.get());
      case FormulaKind::And: return eval(n->a.get()) && eval(n->b.get());
      case FormulaKind::Or: return eval(n->a.get()) || eval(n->b.get());
      case FormulaKind::Implies: return !eval(n->a.get()) || eval(n->b.get());
      case FormulaKind::Iff: return eval(n->a.get()) == eval(n->b.get());
      case FormulaKind::Exists:
      case FormulaKind::Forall: return quantifier(n);
    }
    return false;
  }

 private:
  struct Memo {
    std::vector<std::uint32_t> vars;
    std::vector<std::int8_t> values;  // -1 unknown
  };

  struct Guard {
    const RelationTable* rel = nullptr;
    const Node* atom = nullptr;
    std::uint32_t pos = 0;
  };

  bool atom(const Node* n) {
    const auto& r = table(n);
    std::uint32_t t[RelationTable::kMaxArity];
    for (std::size_t k = 0; k < n->vars.size(); ++k) t[k] = env_[n->vars[k]];
    return r.contains(std::span<const std::uint32_t>(t, n->vars.size()));
  }

  const RelationTable& table(const Node* n) {
    auto hit = tables_.find(n);
    if (hit != tables_.end()) return *hit->second;
    const auto& r = m_.relation(n->symbol);
    if (r.arity() != n->vars.size())
      throw DomainError("atom " + n->symbol + " used with " + std::to_string(n->vars.size()) +
                        " arguments, model arity is " + std::to_string(r.arity()));
    tables_.emplace(n, &r);
    return r;
  }

  // An atom conjunct of `n` in which `v` occurs exactly once.
  std::optional<Guard> find_guard(const Node* n, std::uint32_t v) {
    if (n->kind == FormulaKind::And) {
      if (auto g = find_guard(n->a.get(), v)) return g;
      return find_guard(n->b.get(), v);
    }
    if (n->kind != FormulaKind::Atom) return std::nullopt;
    const auto occurrences = std::count(n->vars.begin(), n->vars.end(), v);
    if (occurrences != 1) return std::nullopt;
    const auto pos = static_cast<std::uint32_t>(std::find(n->vars.begin(), n->vars.end(), v) - n->vars.begin());
    return Guard{&table(n), n, pos};
  }

  // Values of the guarded variable for which the guard atom can hold.
  std::vector<std::uint32_t> candidates(const Guard& g) {
    std::vector<std::uint32_t> out;
    const auto& args = g.atom->vars;
    const std::uint32_t arity = g.rel->arity();
    if (arity == 1) {
      for (std::size_t i = 0; i < g.rel->tuple_count(); ++i) out.push_back(g.rel->coord(i, 0));
      return out;
    }
    const std::uint32_t q = g.pos == 0 ? 1 : 0;
    for (auto id : g.rel->with(q, env_[args[q]])) {
      bool match = true;
      for (std::uint32_t p = 0; p < arity && match; ++p)
        if (p != g.pos && g.rel->coord(id, p) != env_[args[p]]) match = false;
      if (match) out.push_back(g.rel->coord(id, g.pos));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool quantifier(const Node* n) {
    Memo* memo = memo_for(n);
    std::size_t key = 0;
    if (memo) {
      for (std::size_t k = memo->vars.size(); k-- > 0;) key = key * m_.size() + env_[memo->vars[k]];
      if (memo->values[key] >= 0) return memo->values[key] != 0;
    }
    const bool r = quantify(n);
    if (memo) memo->values[key] = r ? 1 : 0;
    return r;
  }

  bool quantify(const Node* n) {
    const std::uint32_t v = n->vars[0];
    const Node* body = n->a.get();
    const std::uint32_t saved = env_[v];
    const bool exists = n->kind == FormulaKind::Exists;
    std::optional<Guard> guard;
    if (exists)
      guard = find_guard(body, v);
    else if (body->kind == FormulaKind::Implies)
      guard = find_guard(body->a.get(), v);

    bool result = !exists;
    auto visit = [&](std::uint32_t c) {
      env_[v] = c;
      if (eval(body) == exists) {
        result = exists;
        return true;
      }
      return false;
    };
    if (guard) {
      for (auto c : candidates(*guard))
        if (visit(c)) break;
    } else {
      for (std::uint32_t c = 0; c < m_.size(); ++c)
        if (visit(c)) break;
    }
    env_[v] = saved;
    return result;
  }

  Memo* memo_for(const Node* n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second.values.empty() ? nullptr : &it->second;
    Memo memo;
    for (std::uint32_t v = 0; v < kMaxVariables; ++v)
      if (n->free_mask & (std::uint64_t{1} << v)) memo.vars.push_back(v);
    double cells = 1;
    for (std::size_t k = 0; k < memo.vars.size(); ++k) cells *= m_.size();
    if (memo.vars.size() <= 2 && cells <= double(1 << 22))
      memo.values.assign(static_cast<std::size_t>(cells), -1);
    auto& slot = memo_[n] = std::move(memo);
    return slot.values.empty() ? nullptr : &slot;
  }

  const ModelFinite& m_;
  std::vector<std::uint32_t> env_;
  std::unordered_map<const Node*, Memo> memo_;
  std::unordered_map<const Node*, const RelationTable*> tables_;
};

}  // namespace

bool holds(const ModelFinite& m, const Formula& f, std::span<const std::uint32_t> assignment) {
  for (auto v : f.free_vars())
    if (v >= assignment.size()) throw DomainError("free variable v" + std::to_string(v) + " is unassigned");
  Evaluator ev(m);
  for (std::size_t k = 0; k < assignment.size() && k < kMaxVariables; ++k) {
    if (assignment[k] >= m.size()) throw DomainError("assignment value outside the carrier");
    ev.env()[k] = assignment[k];
  }
  return ev.eval(f.node());
}

bool holds(const ModelFinite& m, const Formula& f) { return holds(m, f, std::span<const std::uint32_t>{}); }

Element satisfaction_set(const ModelFinite& m, const Formula& f, std::uint32_t n) {
  if (n < kMaxVariables && (f.free_mask() >> n) != 0)
    throw DomainError("formula has a free variable with index >= " + std::to_string(n));
  Evaluator ev(m);
  auto& env = ev.env();
  return Element::from_predicate(TupleSpace::make(m.size(), n), [&](std::span<const std::uint32_t> s) {
    std::copy(s.begin(), s.end(), env.begin());
    return ev.eval(f.node());
  });
}

}  // namespace cylalg
