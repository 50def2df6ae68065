#include "cylalg/relation.hpp"

#include "cylalg/error.hpp"

namespace cylalg {

namespace {
std::size_t checked_size(std::uint32_t base) {
  if (base < 1) throw DomainError("relation base must be at least 1");
  const std::uint64_t n = static_cast<std::uint64_t>(base) * base;
  if (n > Relation::kMaxSize)
    throw CapacityError("relation base " + std::to_string(base) + " exceeds 2^24 pairs");
  return static_cast<std::size_t>(n);
}
}  // namespace

Relation::Relation(std::uint32_t base) : base_(base), bits_(checked_size(base)) {}

Relation::Relation(std::uint32_t base, Bitset bits) : base_(base), bits_(std::move(bits)) {
  if (bits_.size() != checked_size(base)) throw MismatchError("relation bit length is not u^2");
}

Relation Relation::full(std::uint32_t base) {
  return Relation(base, Bitset::full(checked_size(base)));
}

Relation Relation::identity(std::uint32_t base) {
  Relation r(base);
  for (std::uint32_t a = 0; a < base; ++a) r.insert(a, a);
  return r;
}

Relation Relation::from_pairs(std::uint32_t base,
                              const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  Relation r(base);
  for (auto [a, b] : pairs) r.insert(a, b);
  return r;
}

void Relation::insert(std::uint32_t a, std::uint32_t b) {
  if (a >= base_ || b >= base_) throw DomainError("relation pair outside base");
  bits_.set(index(a, b));
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Relation::pairs() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  bits_.for_each_set([&](std::size_t i) {
    out.emplace_back(static_cast<std::uint32_t>(i % base_), static_cast<std::uint32_t>(i / base_));
  });
  return out;
}

void Relation::check_base(const Relation& o) const {
  if (base_ != o.base_)
    throw MismatchError("relations over different bases: " + std::to_string(base_) + " vs " +
                        std::to_string(o.base_));
}

Relation Relation::operator&(const Relation& o) const {
  check_base(o);
  return Relation(base_, bits_ & o.bits_);
}

Relation Relation::operator|(const Relation& o) const {
  check_base(o);
  return Relation(base_, bits_ | o.bits_);
}

Relation Relation::operator-(const Relation& o) const {
  check_base(o);
  return Relation(base_, bits_ - o.bits_);
}

Relation Relation::operator~() const { return Relation(base_, ~bits_); }

bool Relation::operator<=(const Relation& o) const {
  check_base(o);
  return bits_.is_subset_of(o.bits_);
}

Relation Relation::compose(const Relation& s) const {
  check_base(s);
  const std::uint32_t u = base_;
  // succ[b] = { c : (b,c) in s } as a bitset over c.
  std::vector<Bitset> succ(u, Bitset(u));
  s.bits_.for_each_set([&](std::size_t i) { succ[i % u].set(i / u); });
  Relation out(u);
  for (std::uint32_t a = 0; a < u; ++a) {
    Bitset row(u);
    for (std::uint32_t b = 0; b < u; ++b)
      if (contains(a, b)) row |= succ[b];
    row.for_each_set([&](std::size_t c) { out.bits_.set(out.index(a, static_cast<std::uint32_t>(c))); });
  }
  return out;
}

Relation Relation::converse() const {
  Relation out(base_);
  bits_.for_each_set([&](std::size_t i) {
    out.bits_.set(out.index(static_cast<std::uint32_t>(i / base_), static_cast<std::uint32_t>(i % base_)));
  });
  return out;
}

Relation Relation::implies(const Relation& s) const {
  check_base(s);
  return Relation(base_, ~bits_ | s.bits_);
}

std::string Relation::to_string() const { return "rel:" + std::to_string(base_) + " " + bits_.to_hex(); }

}  // namespace cylalg
