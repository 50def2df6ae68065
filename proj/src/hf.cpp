#include "cylalg/hf.hpp"

#include <algorithm>

#include "cylalg/error.hpp"

namespace cylalg {

namespace {

const std::shared_ptr<const std::vector<HFSet>>& empty_members() {
  static const auto e = std::make_shared<const std::vector<HFSet>>();
  return e;
}

}  // namespace

HFSet::HFSet() : members_(empty_members()) {}

HFSet HFSet::of(std::vector<HFSet> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  HFSet s;
  for (const auto& m : members) s.rank_ = std::max(s.rank_, m.rank_ + 1);
  s.members_ = std::make_shared<const std::vector<HFSet>>(std::move(members));
  return s;
}

HFSet HFSet::from_code(std::uint64_t code) {
  std::vector<HFSet> members;
  for (std::uint32_t b = 0; b < 64; ++b)
    if ((code >> b) & 1U) members.push_back(from_code(b));
  return of(std::move(members));
}

HFSet HFSet::ordinal(std::uint32_t n) {
  std::vector<HFSet> members;
  for (std::uint32_t k = 0; k < n; ++k) members.push_back(of(members));
  return of(std::move(members));
}

HFSet HFSet::singleton(const HFSet& x) { return of({x}); }

HFSet HFSet::unordered_pair(const HFSet& a, const HFSet& b) { return of({a, b}); }

HFSet HFSet::kuratowski(const HFSet& a, const HFSet& b) { return of({singleton(a), unordered_pair(a, b)}); }

bool HFSet::contains(const HFSet& x) const { return std::binary_search(members_->begin(), members_->end(), x); }

std::optional<std::uint64_t> HFSet::code() const {
  std::uint64_t out = 0;
  for (const auto& m : *members_) {
    auto c = m.code();
    if (!c || *c >= 64) return std::nullopt;
    out |= std::uint64_t{1} << *c;
  }
  return out;
}

std::string HFSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_->size(); ++i) {
    if (i) out += ',';
    out += (*members_)[i].to_string();
  }
  return out + "}";
}

std::strong_ordering HFSet::operator<=>(const HFSet& o) const {
  if (members_ == o.members_) return std::strong_ordering::equal;
  // Codes compare like binary numbers: the larger top member decides.
  const auto& a = *members_;
  const auto& b = *o.members_;
  auto i = a.size(), j = b.size();
  while (i > 0 && j > 0) {
    --i, --j;
    auto c = a[i] <=> b[j];
    if (c != 0) return c;
  }
  return i <=> j;
}

HFUniverse::HFUniverse(std::uint32_t rank) : rank_(rank), size_(0) {
  if (rank < 1 || rank > kMaxRank)
    throw CapacityError("HF rank must be in 1.." + std::to_string(kMaxRank) + ", got " + std::to_string(rank));
  std::uint64_t s = 1;
  for (std::uint32_t k = 1; k < rank; ++k) s = std::uint64_t{1} << s;
  size_ = static_cast<std::uint32_t>(s);
}

std::uint32_t HFUniverse::rank_of(std::uint32_t code) const {
  if (code >= size_) throw DomainError("code " + std::to_string(code) + " outside V_" + std::to_string(rank_));
  std::uint32_t r = 0;
  for (std::uint32_t b = 0; b < 32; ++b)
    if ((code >> b) & 1U) r = std::max(r, rank_of(b) + 1);
  return r;
}

std::optional<std::uint32_t> HFUniverse::code_of(const HFSet& x) const {
  if (x.rank() >= rank_) return std::nullopt;
  return static_cast<std::uint32_t>(*x.code());
}

ModelFinite HFUniverse::model(bool labels) const {
  std::vector<std::string> names;
  if (labels)
    for (std::uint32_t c = 0; c < size_; ++c) names.push_back(set(c).to_string());
  ModelFinite m(size_, std::move(names));
  m.add_relation("E", 2);
  for (std::uint32_t x = 0; x < size_; ++x)
    for (std::uint32_t y = 0; y < 32; ++y)
      if (member(y, x)) m.add_tuple("E", {y, x});
  return m;
}

ModelFinite HFUniverse::arithmetic_model() const {
  ModelFinite m = model();
  m.add_relation("Add", 3);
  m.add_relation("Mul", 3);
  m.add_relation("Exp", 3);
  const std::uint32_t top = rank_ - 1;  // ordinals 0..rank-1 lie in V_rank
  std::vector<HFSet> ords;
  for (std::uint32_t k = 0; k <= top; ++k) ords.push_back(HFSet::ordinal(k));
  const auto code = [&](const HFSet& s) { return *code_of(s); };
  for (const auto& x : ords)
    for (const auto& y : ords) {
      const std::uint32_t cx = code(x), cy = code(y);
      if (auto z = ordinal_sum(x, y, top)) m.add_tuple("Add", {cx, cy, code(*z)});
      if (auto z = ordinal_product(x, y, top)) m.add_tuple("Mul", {cx, cy, code(*z)});
      if (auto z = ordinal_power(x, y, top)) m.add_tuple("Exp", {cx, cy, code(*z)});
    }
  return m;
}

HFUniverse hf_universe(std::uint32_t rank) { return HFUniverse(rank); }

std::optional<std::pair<HFSet, HFSet>> decode_pair(const HFSet& x) {
  std::optional<HFSet> first;
  for (const auto& m : x.members()) {
    if (m.empty()) return std::nullopt;
    if (m.size() == 1) {
      if (first) return std::nullopt;
      first = m.members()[0];
    }
  }
  if (!first) return std::nullopt;
  if (x.size() == 1) return std::pair{*first, *first};
  std::optional<HFSet> second;
  for (const auto& m : x.members())
    for (const auto& z : m.members()) {
      if (x.contains(HFSet::singleton(z))) continue;
      if (second && *second != z) return std::nullopt;
      second = z;
    }
  if (!second) return std::nullopt;
  return std::pair{*first, *second};
}

QuasiProjections quasiprojection_relations(const HFUniverse& u) {
  const std::uint64_t n = u.size();
  if (n * n > Relation::kMaxSize)
    throw CapacityError("quasiprojections need |V_r|^2 <= 2^24; V_" + std::to_string(u.rank()) + " is too large");
  QuasiProjections out{Relation(u.size()), Relation(u.size())};
  for (std::uint32_t c = 0; c < u.size(); ++c) {
    auto d = decode_pair(u.set(c));
    if (!d) continue;
    out.p0.insert(c, *u.code_of(d->first));
    out.p1.insert(c, *u.code_of(d->second));
  }
  return out;
}

Term pi_ra_term() {
  const Term p = Term::var(0), q = Term::var(1);
  const auto functional = [](const Term& r) { return Term::comp(Term::conv(r), r).implies(Term::ident()); };
  return functional(p) & functional(q) & Term::comp(Term::conv(p), q);
}

bool is_ordinal(const HFSet& x) {
  const auto& ms = x.members();
  for (const auto& m : ms)
    for (const auto& z : m.members())
      if (!x.contains(z)) return false;
  for (const auto& a : ms)
    for (const auto& b : ms) {
      if (a != b && !a.contains(b) && !b.contains(a)) return false;
      for (const auto& c : ms)
        if (a.contains(b) && b.contains(c) && !a.contains(c)) return false;
    }
  return true;
}

namespace {

bool zero_or_successor(const HFSet& x) {
  if (x.empty()) return true;
  for (const auto& m : x.members()) {
    std::vector<HFSet> next = m.members();
    next.push_back(m);
    if (HFSet::of(std::move(next)) == x) return true;
  }
  return false;
}

}  // namespace

bool is_finite_ordinal(const HFSet& x) {
  if (!is_ordinal(x) || !zero_or_successor(x)) return false;
  return std::all_of(x.members().begin(), x.members().end(), zero_or_successor);
}

std::optional<std::uint32_t> ordinal_value(const HFSet& x) {
  if (!is_ordinal(x)) return std::nullopt;
  return static_cast<std::uint32_t>(x.size());
}

bool bijection_exists(const HFSet& a, const HFSet& b) { return a.size() == b.size(); }

std::optional<HFSet> ordinal_sum(const HFSet& x, const HFSet& y, std::uint32_t max_value) {
  if (!is_ordinal(x) || !is_ordinal(y) || x.size() + y.size() > max_value) return std::nullopt;
  const HFSet left = HFSet::ordinal(0), right = HFSet::ordinal(1);
  std::vector<HFSet> tagged;
  for (const auto& a : x.members()) tagged.push_back(HFSet::kuratowski(left, a));
  for (const auto& b : y.members()) tagged.push_back(HFSet::kuratowski(right, b));
  return HFSet::ordinal(static_cast<std::uint32_t>(HFSet::of(std::move(tagged)).size()));
}

std::optional<HFSet> ordinal_product(const HFSet& x, const HFSet& y, std::uint32_t max_value) {
  if (!is_ordinal(x) || !is_ordinal(y) || std::uint64_t{x.size()} * y.size() > max_value) return std::nullopt;
  std::vector<HFSet> cells;
  for (const auto& a : x.members())
    for (const auto& b : y.members()) cells.push_back(HFSet::kuratowski(a, b));
  return HFSet::ordinal(static_cast<std::uint32_t>(HFSet::of(std::move(cells)).size()));
}

std::optional<HFSet> ordinal_power(const HFSet& x, const HFSet& y, std::uint32_t max_value) {
  if (!is_ordinal(x) || !is_ordinal(y)) return std::nullopt;
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < y.size(); ++k) {
    count *= x.size();
    if (count > max_value) return std::nullopt;
  }
  // Every map y -> x as its graph.
  const auto& dom = y.members();
  const auto& cod = x.members();
  std::vector<HFSet> maps;
  std::vector<std::size_t> choice(dom.size(), 0);
  if (!dom.empty() && cod.empty()) return HFSet::ordinal(0);
  while (true) {
    std::vector<HFSet> graph;
    for (std::size_t i = 0; i < dom.size(); ++i) graph.push_back(HFSet::kuratowski(dom[i], cod[choice[i]]));
    maps.push_back(HFSet::of(std::move(graph)));
    std::size_t i = 0;
    while (i < dom.size() && ++choice[i] == cod.size()) choice[i++] = 0;
    if (i == dom.size()) break;
  }
  return HFSet::ordinal(static_cast<std::uint32_t>(HFSet::of(std::move(maps)).size()));
}

}  // namespace cylalg
