#include "cylalg/space.hpp"

#include <sstream>

#include "cylalg/error.hpp"

namespace cylalg {

TupleSpace::TupleSpace(std::uint32_t base, std::uint32_t dim) : base_(base), dim_(dim) {
  strides_.resize(dim);
  std::uint64_t s = 1;
  for (std::uint32_t i = 0; i < dim; ++i) {
    strides_[i] = s;
    s *= base;
  }
  size_ = s;
}

std::shared_ptr<const TupleSpace> TupleSpace::make(std::uint32_t base, std::uint32_t dimension) {
  if (base < 1) throw DomainError("tuple space base must be at least 1");
  if (dimension < 1) throw DomainError("tuple space dimension must be at least 1");
  std::uint64_t s = 1;
  for (std::uint32_t i = 0; i < dimension; ++i) {
    s *= base;
    if (s > kMaxSize)
      throw CapacityError("tuple space " + std::to_string(base) + "^" + std::to_string(dimension) +
                          " exceeds 2^24 tuples");
  }
  return std::shared_ptr<const TupleSpace>(new TupleSpace(base, dimension));
}

std::uint64_t TupleSpace::encode(std::span<const std::uint32_t> tuple) const {
  if (tuple.size() != dim_) throw DomainError("tuple length does not match dimension");
  std::uint64_t idx = 0;
  for (std::uint32_t i = 0; i < dim_; ++i) {
    if (tuple[i] >= base_) throw DomainError("tuple coordinate outside base");
    idx += tuple[i] * strides_[i];
  }
  return idx;
}

std::vector<std::uint32_t> TupleSpace::decode(std::uint64_t index) const {
  if (index >= size_) throw DomainError("tuple index out of range");
  std::vector<std::uint32_t> t(dim_);
  for (std::uint32_t i = 0; i < dim_; ++i) {
    t[i] = static_cast<std::uint32_t>(index % base_);
    index /= base_;
  }
  return t;
}

std::string TupleSpace::header() const {
  return "space:" + std::to_string(base_) + "," + std::to_string(dim_);
}

Element::Element(SpacePtr space, Bitset bits) : space_(std::move(space)), bits_(std::move(bits)) {
  if (!space_) throw DomainError("element without a space");
  if (bits_.size() != space_->size())
    throw MismatchError("element bit length " + std::to_string(bits_.size()) +
                        " does not match space size " + std::to_string(space_->size()));
}

Element Element::empty(SpacePtr space) {
  Bitset b(space->size());
  return Element(std::move(space), std::move(b));
}

Element Element::full(SpacePtr space) {
  Bitset b = Bitset::full(space->size());
  return Element(std::move(space), std::move(b));
}

void Element::check_space(const Element& o) const {
  if (!space_->same_as(*o.space_))
    throw MismatchError("operands live in different spaces: " + space_->header() + " vs " +
                        o.space_->header());
}

bool Element::contains(std::span<const std::uint32_t> tuple) const {
  return bits_.test(space_->encode(tuple));
}

Element Element::operator&(const Element& o) const {
  check_space(o);
  return Element(space_, bits_ & o.bits_);
}

Element Element::operator|(const Element& o) const {
  check_space(o);
  return Element(space_, bits_ | o.bits_);
}

Element Element::operator-(const Element& o) const {
  check_space(o);
  return Element(space_, bits_ - o.bits_);
}

Element Element::operator~() const { return Element(space_, ~bits_); }

bool Element::operator<=(const Element& o) const {
  check_space(o);
  return bits_.is_subset_of(o.bits_);
}

bool Element::operator==(const Element& o) const {
  return space_->same_as(*o.space_) && bits_ == o.bits_;
}

std::string Element::to_string() const { return space_->header() + " " + bits_.to_hex(); }

Element Element::parse(std::string_view text) {
  constexpr std::string_view prefix = "space:";
  if (text.substr(0, prefix.size()) != prefix) throw ParseError("expected 'space:' header", 0);
  const auto comma = text.find(',', prefix.size());
  const auto blank = text.find(' ', prefix.size());
  if (comma == std::string_view::npos || blank == std::string_view::npos || comma > blank)
    throw ParseError("malformed element header", prefix.size());
  std::uint32_t u = 0, n = 0;
  try {
    u = static_cast<std::uint32_t>(
        std::stoul(std::string(text.substr(prefix.size(), comma - prefix.size()))));
    n = static_cast<std::uint32_t>(std::stoul(std::string(text.substr(comma + 1, blank - comma - 1))));
  } catch (const std::logic_error&) {
    throw ParseError("malformed element header numbers", prefix.size());
  }
  auto space = TupleSpace::make(u, n);
  std::size_t p = blank;
  while (p < text.size() && text[p] == ' ') ++p;
  std::string_view hex = text.substr(p);
  while (!hex.empty() && (hex.back() == ' ' || hex.back() == '\n' || hex.back() == '\r'))
    hex.remove_suffix(1);
  try {
    return Element(space, Bitset::from_hex(hex, space->size()));
  } catch (const ParseError& e) {
    throw ParseError(std::string("element bits: ") + e.what(), p + e.position());
  }
}

namespace {
void check_coord(const TupleSpace& s, std::uint32_t i) {
  if (i >= s.dimension())
    throw DomainError("coordinate " + std::to_string(i) + " out of range for dimension " +
                      std::to_string(s.dimension()));
}
}  // namespace

Element cyl(std::uint32_t i, const Element& x) {
  const TupleSpace& sp = x.space();
  check_coord(sp, i);
  const std::uint64_t st = sp.stride(i);
  const std::uint32_t u = sp.base();
  Bitset out(sp.size());
  x.bits().for_each_set([&](std::size_t idx) {
    const std::uint64_t lo = idx - sp.coord(idx, i) * st;
    if (out.test(lo)) return;
    for (std::uint32_t t = 0; t < u; ++t) out.set(lo + t * st);
  });
  return Element(x.space_ptr(), std::move(out));
}

Element diag(const SpacePtr& space, std::uint32_t i, std::uint32_t j) {
  check_coord(*space, i);
  check_coord(*space, j);
  Bitset out(space->size());
  for (std::uint64_t idx = 0; idx < space->size(); ++idx)
    if (space->coord(idx, i) == space->coord(idx, j)) out.set(idx);
  return Element(space, std::move(out));
}

Element subst(std::uint32_t i, std::uint32_t j, const Element& x) {
  const TupleSpace& sp = x.space();
  check_coord(sp, i);
  check_coord(sp, j);
  if (i == j) throw DomainError("substitution s_{i,j} requires i != j");
  const std::uint64_t st = sp.stride(i);
  Bitset out(sp.size());
  for (std::uint64_t idx = 0; idx < sp.size(); ++idx) {
    const std::uint64_t ci = sp.coord(idx, i);
    const std::uint64_t cj = sp.coord(idx, j);
    const std::uint64_t moved = idx - ci * st + cj * st;
    if (x.bits().test(moved)) out.set(idx);
  }
  return Element(x.space_ptr(), std::move(out));
}

Element discriminator(const Element& x) {
  Element r = x;
  for (std::uint32_t i = 0; i < x.space().dimension(); ++i) r = cyl(i, r);
  return r;
}

}  // namespace cylalg
