#include "cylalg/bitset.hpp"

#include "cylalg/error.hpp"

namespace cylalg {

namespace {
constexpr std::size_t words_for(std::size_t nbits) { return (nbits + 63) / 64; }
}  // namespace

Bitset::Bitset(std::size_t nbits) : nbits_(nbits), words_(words_for(nbits), 0) {}

Bitset Bitset::full(std::size_t nbits) {
  Bitset b(nbits);
  for (auto& w : b.words_) w = ~std::uint64_t{0};
  b.trim();
  return b;
}

Bitset Bitset::single(std::size_t nbits, std::size_t bit) {
  Bitset b(nbits);
  b.set(bit);
  return b;
}

void Bitset::trim() noexcept {
  const std::size_t rem = nbits_ & 63;
  if (rem != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

void Bitset::check_same_size(const Bitset& o) const {
  if (nbits_ != o.nbits_)
    throw MismatchError("bitset length mismatch: " + std::to_string(nbits_) + " vs " +
                        std::to_string(o.nbits_));
}

std::size_t Bitset::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

bool Bitset::any() const noexcept {
  for (auto w : words_)
    if (w != 0) return true;
  return false;
}

bool Bitset::is_subset_of(const Bitset& other) const {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  return true;
}

bool Bitset::intersects(const Bitset& other) const {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & other.words_[i]) != 0) return true;
  return false;
}

std::size_t Bitset::find_first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[w]));
  return nbits_;
}

std::size_t Bitset::find_next(std::size_t i) const noexcept {
  ++i;
  if (i >= nbits_) return nbits_;
  std::size_t w = i >> 6;
  std::uint64_t word = words_[w] & (~std::uint64_t{0} << (i & 63));
  while (true) {
    if (word != 0) return w * 64 + static_cast<std::size_t>(__builtin_ctzll(word));
    if (++w == words_.size()) return nbits_;
    word = words_[w];
  }
}

std::size_t Bitset::find_last() const noexcept {
  for (std::size_t w = words_.size(); w-- > 0;)
    if (words_[w] != 0) return w * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(words_[w]));
  return nbits_;
}

std::vector<std::size_t> Bitset::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each_set([&](std::size_t i) { out.push_back(i); });
  return out;
}

Bitset& Bitset::operator&=(const Bitset& o) {
  check_same_size(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

Bitset& Bitset::operator|=(const Bitset& o) {
  check_same_size(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

Bitset& Bitset::operator^=(const Bitset& o) {
  check_same_size(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

Bitset& Bitset::operator-=(const Bitset& o) {
  check_same_size(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}

Bitset Bitset::operator~() const {
  Bitset r = *this;
  for (auto& w : r.words_) w = ~w;
  r.trim();
  return r;
}

std::strong_ordering operator<=>(const Bitset& a, const Bitset& b) {
  if (auto c = a.nbits_ <=> b.nbits_; c != 0) return c;
  for (std::size_t w = a.words_.size(); w-- > 0;)
    if (auto c = a.words_[w] <=> b.words_[w]; c != 0) return c;
  return std::strong_ordering::equal;
}

Bitset Bitset::concat(const Bitset& lo, const Bitset& hi) {
  Bitset r(lo.size() + hi.size());
  lo.for_each_set([&](std::size_t i) { r.set(i); });
  hi.for_each_set([&](std::size_t i) { r.set(lo.size() + i); });
  return r;
}

Bitset Bitset::slice(std::size_t offset, std::size_t len) const {
  if (offset + len > nbits_) throw DomainError("bitset slice out of range");
  Bitset r(len);
  for (std::size_t i = 0; i < len; ++i)
    if (test(offset + i)) r.set(i);
  return r;
}

std::string Bitset::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  const std::size_t ndig = (nbits_ + 3) / 4;
  std::string s(ndig, '0');
  for (std::size_t d = 0; d < ndig; ++d) {
    unsigned v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = d * 4 + b;
      if (i < nbits_ && test(i)) v |= 1U << b;
    }
    s[ndig - 1 - d] = digits[v];
  }
  return s;
}

Bitset Bitset::from_hex(std::string_view hex, std::size_t nbits) {
  const std::size_t ndig = (nbits + 3) / 4;
  if (hex.size() != ndig)
    throw ParseError("expected " + std::to_string(ndig) + " hex digits, got " +
                         std::to_string(hex.size()),
                     0);
  Bitset r(nbits);
  for (std::size_t k = 0; k < ndig; ++k) {
    const char c = hex[ndig - 1 - k];
    unsigned v;
    if (c >= '0' && c <= '9')
      v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      v = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F')
      v = static_cast<unsigned>(c - 'A' + 10);
    else
      throw ParseError(std::string("invalid hex digit '") + c + "'", ndig - 1 - k);
    for (std::size_t b = 0; b < 4; ++b) {
      if (!(v & (1U << b))) continue;
      const std::size_t i = k * 4 + b;
      if (i >= nbits) throw ParseError("hex value has bits beyond length", ndig - 1 - k);
      r.set(i);
    }
  }
  return r;
}

std::size_t Bitset::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ nbits_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace cylalg
