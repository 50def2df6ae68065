#include "cylalg/finite_algebra.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cylalg/error.hpp"

namespace cylalg {

namespace {

std::size_t table_rows(int arity, std::size_t atoms) {
  switch (arity) {
    case 0: return 1;
    case 1: return atoms;
    default: return atoms * atoms;
  }
}

bool fits_cap(std::size_t atoms, std::uint64_t cap) {
  if (cap == kNoCap) return true;
  if (atoms >= 64) return false;
  return (std::uint64_t{1} << atoms) <= cap;
}

std::string pow2_text(std::size_t k) {
  if (k < 64) return std::to_string(std::uint64_t{1} << k);
  return "2^" + std::to_string(k);
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(Signature sig, std::size_t atom_count, std::vector<OpTable> tables,
                             std::vector<Bitset> atom_reprs, SpacePtr space)
    : sig_(std::move(sig)),
      atoms_(atom_count),
      tables_(std::move(tables)),
      reprs_(std::move(atom_reprs)),
      space_(std::move(space)) {
  const auto& ops = sig_.operators();
  if (tables_.size() != ops.size())
    throw MismatchError("expected " + std::to_string(ops.size()) + " op tables for " + sig_.name());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const auto& t = tables_[k];
    if (!(t.op == ops[k])) throw MismatchError("op table " + t.op.name() + " out of order");
    if (t.values.size() != table_rows(ops[k].arity(), atoms_))
      throw MismatchError("op table " + t.op.name() + " has wrong row count");
    for (const auto& v : t.values)
      if (v.size() != atoms_) throw MismatchError("op table " + t.op.name() + " row has wrong width");
  }
  if (!reprs_.empty()) {
    if (reprs_.size() != atoms_) throw MismatchError("representation count differs from atom count");
    repr_size_ = reprs_[0].size();
    Bitset seen(repr_size_);
    for (std::size_t k = 0; k < atoms_; ++k) {
      const auto& r = reprs_[k];
      if (r.size() != repr_size_) throw MismatchError("representations differ in length");
      if (r.none()) throw DomainError("atom " + std::to_string(k) + " represented by the empty set");
      if (r.intersects(seen)) throw DomainError("atom representations overlap");
      if (k > 0 && !(reprs_[k - 1] < r)) throw DomainError("atom representations not ascending");
      seen |= r;
    }
  }
  if (space_ && !reprs_.empty() && space_->size() != repr_size_)
    throw MismatchError("representation length differs from space size");
}

std::optional<std::uint64_t> FiniteAlgebra::size() const noexcept {
  if (atoms_ >= 64) return std::nullopt;
  return std::uint64_t{1} << atoms_;
}

void FiniteAlgebra::check_element(const Bitset& x) const {
  if (x.size() != atoms_)
    throw MismatchError("element has " + std::to_string(x.size()) + " atom bits, algebra has " +
                        std::to_string(atoms_));
}

void FiniteAlgebra::check_enumerable() const {
  if (atoms_ > kMaxEnumerableAtoms)
    throw CapacityError("carrier of 2^" + std::to_string(atoms_) + " elements is too large to enumerate");
}

std::vector<Bitset> FiniteAlgebra::elements() const {
  std::vector<Bitset> out;
  for_each_element([&](const Bitset& x) { out.push_back(x); });
  return out;
}

const OpTable& FiniteAlgebra::table(const OpDescriptor& op) const {
  const auto k = sig_.index_of(op);
  if (!k) throw MismatchError("operator " + op.name() + " not in " + sig_.name());
  return tables_[*k];
}

Bitset FiniteAlgebra::apply(std::size_t op_index, std::span<const Bitset> args) const {
  const auto& t = tables_.at(op_index);
  const int arity = t.op.arity();
  if (args.size() != static_cast<std::size_t>(arity))
    throw DomainError("operator " + t.op.name() + " applied to wrong number of arguments");
  for (const auto& a : args) check_element(a);
  if (arity == 0) return t.values[0];
  Bitset out(atoms_);
  if (arity == 1) {
    args[0].for_each_set([&](std::size_t a) { out |= t.values[a]; });
  } else {
    args[0].for_each_set([&](std::size_t a) {
      args[1].for_each_set([&](std::size_t b) { out |= t.values[a * atoms_ + b]; });
    });
  }
  return out;
}

Bitset FiniteAlgebra::apply(const OpDescriptor& op, std::span<const Bitset> args) const {
  const auto k = sig_.index_of(op);
  if (!k) throw MismatchError("operator " + op.name() + " not in " + sig_.name());
  return apply(*k, args);
}

Bitset FiniteAlgebra::represent(const Bitset& x) const {
  check_element(x);
  if (reprs_.empty() && atoms_ > 0) throw DomainError("algebra has no atom representation");
  Bitset out(repr_size_);
  x.for_each_set([&](std::size_t a) { out |= reprs_[a]; });
  return out;
}

std::optional<Bitset> FiniteAlgebra::locate(const Bitset& repr) const {
  if (reprs_.empty() && atoms_ > 0) throw DomainError("algebra has no atom representation");
  if (repr.size() != repr_size_) throw MismatchError("representation length mismatch");
  Bitset mask(atoms_);
  Bitset covered(repr_size_);
  for (std::size_t k = 0; k < atoms_; ++k) {
    if (!repr.intersects(reprs_[k])) continue;
    if (!reprs_[k].is_subset_of(repr)) return std::nullopt;
    mask.set(k);
    covered |= reprs_[k];
  }
  if (!(covered == repr)) return std::nullopt;
  return mask;
}

Element FiniteAlgebra::concrete(const Bitset& x) const {
  if (!space_) throw DomainError("algebra is not represented in a tuple space");
  return Element(space_, represent(x));
}

Bitset FiniteAlgebra::from_concrete(const Element& e) const {
  if (!space_) throw DomainError("algebra is not represented in a tuple space");
  if (!e.space().same_as(*space_)) throw MismatchError("element from a different space");
  auto m = locate(e.bits());
  if (!m) throw DomainError("element " + e.to_string() + " is not in the algebra");
  return *m;
}

// ---------------------------------------------------------------------------

FiniteAlgebra generate_subalgebra(const Ambient& ambient, std::span<const Bitset> gens,
                                  std::uint64_t cap) {
  if (cap == 0) throw DomainError("cap must be at least 1");
  const Bitset unit = ambient.unit();
  const std::size_t nbits = unit.size();
  const auto& ops = ambient.signature().operators();

  std::vector<Bitset> blocks;
  if (unit.any()) blocks.push_back(unit);

  auto check_cap = [&] {
    if (!fits_cap(blocks.size(), cap))
      throw CapacityError("subalgebra exceeds cap " + std::to_string(cap) + " (reached " +
                          pow2_text(blocks.size()) + " elements)");
  };
  // Splits every block that `s` cuts; returns whether anything changed.
  auto refine = [&](const Bitset& s) {
    bool changed = false;
    const std::size_t n = blocks.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (!blocks[k].intersects(s) || blocks[k].is_subset_of(s)) continue;
      Bitset outside = blocks[k] - s;
      blocks[k] &= s;
      blocks.push_back(std::move(outside));
      changed = true;
    }
    if (changed) check_cap();
    return changed;
  };

  for (const auto& g : gens) {
    if (g.size() != nbits) throw MismatchError("generator length differs from ambient");
    if (!g.is_subset_of(unit)) throw DomainError("generator not below the ambient unit");
    refine(g);
  }
  for (const auto& op : ops)
    if (op.arity() == 0) refine(ambient.apply(op, {}));

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& op : ops) {
      if (op.arity() == 1) {
        for (std::size_t k = 0; k < blocks.size(); ++k) {
          const Bitset arg = blocks[k];
          changed |= refine(ambient.apply(op, std::span<const Bitset>(&arg, 1)));
        }
      } else if (op.arity() == 2) {
        for (std::size_t a = 0; a < blocks.size(); ++a)
          for (std::size_t b = 0; b < blocks.size(); ++b) {
            const Bitset args[2] = {blocks[a], blocks[b]};
            changed |= refine(ambient.apply(op, args));
          }
      }
    }
  }

  std::sort(blocks.begin(), blocks.end());
  const std::size_t atoms = blocks.size();
  std::vector<std::size_t> first(atoms);
  for (std::size_t k = 0; k < atoms; ++k) first[k] = blocks[k].find_first();
  auto to_mask = [&](const Bitset& v) {
    Bitset m(atoms);
    for (std::size_t k = 0; k < atoms; ++k)
      if (v.test(first[k])) m.set(k);
    return m;
  };

  std::vector<OpTable> tables;
  for (const auto& op : ops) {
    OpTable t{op, {}};
    if (op.arity() == 0) {
      t.values.push_back(to_mask(ambient.apply(op, {})));
    } else if (op.arity() == 1) {
      for (std::size_t a = 0; a < atoms; ++a)
        t.values.push_back(to_mask(ambient.apply(op, std::span<const Bitset>(&blocks[a], 1))));
    } else {
      for (std::size_t a = 0; a < atoms; ++a)
        for (std::size_t b = 0; b < atoms; ++b) {
          const Bitset args[2] = {blocks[a], blocks[b]};
          t.values.push_back(to_mask(ambient.apply(op, args)));
        }
    }
    tables.push_back(std::move(t));
  }

  SpacePtr space;
  if (const auto* set_alg = dynamic_cast<const SetAlgebra*>(&ambient)) space = set_alg->space();
  return FiniteAlgebra(ambient.signature(), atoms, std::move(tables), std::move(blocks), std::move(space));
}

FiniteAlgebra generate_subalgebra(const SetAlgebra& ambient, std::span<const Element> gens,
                                  std::uint64_t cap) {
  std::vector<Bitset> bits;
  for (const auto& g : gens) {
    if (!g.space().same_as(*ambient.space()))
      throw MismatchError("generator from space " + g.space().header() + ", ambient is " +
                          ambient.space()->header());
    bits.push_back(g.bits());
  }
  return generate_subalgebra(static_cast<const Ambient&>(ambient), bits, cap);
}

std::vector<Bitset> atoms(const FiniteAlgebra& a) {
  std::vector<Bitset> out;
  for (std::size_t k = 0; k < a.atom_count(); ++k) out.push_back(a.atom(k));
  return out;
}

Bitset atom_below(const FiniteAlgebra& a, const Bitset& x, const Bitset& b) {
  a.check_element(x);
  a.check_element(b);
  const Bitset m = x - b;
  if (m.none()) throw DomainError("a.(-b) = 0: no atom below it");
  return a.atom(m.find_first());
}

FiniteAlgebra relativize(const FiniteAlgebra& a, const Bitset& b) {
  a.check_element(b);
  const std::vector<std::size_t> keep = b.indices();
  const std::size_t n = keep.size();
  auto restrict = [&](const Bitset& v) {
    Bitset out(n);
    for (std::size_t k = 0; k < n; ++k)
      if (v.test(keep[k])) out.set(k);
    return out;
  };
  std::vector<OpTable> tables;
  const std::size_t na = a.atom_count();
  for (const auto& src : a.tables()) {
    OpTable t{src.op, {}};
    switch (src.op.arity()) {
      case 0: t.values.push_back(restrict(src.values[0])); break;
      case 1:
        for (auto k : keep) t.values.push_back(restrict(src.values[k]));
        break;
      default:
        for (auto i : keep)
          for (auto j : keep) t.values.push_back(restrict(src.values[i * na + j]));
    }
    tables.push_back(std::move(t));
  }
  std::vector<Bitset> reprs;
  if (!a.atom_representations().empty())
    for (auto k : keep) reprs.push_back(a.atom_representations()[k]);
  SpacePtr space = reprs.empty() ? nullptr : a.space();
  return FiniteAlgebra(a.signature(), n, std::move(tables), std::move(reprs), std::move(space));
}

Ideal principal_ideal(const FiniteAlgebra& a, const Bitset& b) {
  a.check_element(b);
  const Bitset one = a.one();
  Bitset cur = b;
  while (true) {
    Bitset next = cur;
    for (std::size_t k = 0; k < a.tables().size(); ++k) {
      const int arity = a.tables()[k].op.arity();
      if (arity == 1) {
        next |= a.apply(k, std::span<const Bitset>(&cur, 1));
      } else if (arity == 2) {
        const Bitset left[2] = {cur, one};
        const Bitset right[2] = {one, cur};
        next |= a.apply(k, left);
        next |= a.apply(k, right);
      }
    }
    if (next == cur) break;
    cur = std::move(next);
  }
  return Ideal{b, cur};
}

FiniteAlgebra product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (!(a.signature() == b.signature()))
    throw MismatchError("product of " + a.signature().name() + " and " + b.signature().name());
  const std::size_t na = a.atom_count();
  const std::size_t nb = b.atom_count();
  const std::size_t n = na + nb;
  const Bitset za(na), zb(nb);
  std::vector<OpTable> tables;
  for (std::size_t k = 0; k < a.tables().size(); ++k) {
    const auto& ta = a.tables()[k];
    const auto& tb = b.tables()[k];
    OpTable t{ta.op, {}};
    switch (ta.op.arity()) {
      case 0: t.values.push_back(Bitset::concat(ta.values[0], tb.values[0])); break;
      case 1:
        for (std::size_t i = 0; i < na; ++i) t.values.push_back(Bitset::concat(ta.values[i], zb));
        for (std::size_t i = 0; i < nb; ++i) t.values.push_back(Bitset::concat(za, tb.values[i]));
        break;
      default:
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            if (i < na && j < na)
              t.values.push_back(Bitset::concat(ta.values[i * na + j], zb));
            else if (i >= na && j >= na)
              t.values.push_back(Bitset::concat(za, tb.values[(i - na) * nb + (j - na)]));
            else
              t.values.push_back(Bitset(n));
          }
    }
    tables.push_back(std::move(t));
  }
  std::vector<Bitset> reprs;
  if ((na == 0 || !a.atom_representations().empty()) && (nb == 0 || !b.atom_representations().empty()) &&
      n > 0) {
    const Bitset ra(a.representation_size()), rb(b.representation_size());
    for (const auto& r : a.atom_representations()) reprs.push_back(Bitset::concat(r, rb));
    for (const auto& r : b.atom_representations()) reprs.push_back(Bitset::concat(ra, r));
  }
  return FiniteAlgebra(a.signature(), n, std::move(tables), std::move(reprs));
}

Bitset discriminator(const FiniteAlgebra& a, const Bitset& x) {
  a.check_element(x);
  const auto& sig = a.signature();
  switch (sig.kind()) {
    case SigKind::BA: return x;
    case SigKind::RA: {
      const Bitset one = a.one();
      const OpDescriptor comp{OpKind::Comp};
      const Bitset l[2] = {one, x};
      const Bitset left = a.apply(comp, l);
      const Bitset r[2] = {left, one};
      return a.apply(comp, r);
    }
    default: {
      Bitset cur = x;
      for (std::uint32_t i = 0; i < sig.dimension(); ++i) cur = a.apply(OpDescriptor{OpKind::Cyl, i}, cur);
      return cur;
    }
  }
}

// ---------------------------------------------------------------------------

void write_algebra(std::ostream& os, const FiniteAlgebra& a) {
  os << "cylalg-algebra 1\n";
  os << "signature " << a.signature().name() << "\n";
  os << "atoms " << a.atom_count() << "\n";
  if (a.atom_representations().empty()) {
    os << "representation none\n";
  } else {
    os << "representation " << a.representation_size();
    if (a.space()) os << " space " << a.space()->base() << "," << a.space()->dimension();
    os << "\n";
    for (const auto& r : a.atom_representations()) os << r.to_hex() << "\n";
  }
  for (const auto& t : a.tables()) {
    os << "op " << t.op.name() << " " << t.values.size() << "\n";
    for (const auto& v : t.values) os << (v.size() == 0 ? "-" : v.to_hex()) << "\n";
  }
  os << "end\n";
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  std::string next() {
    std::string line;
    while (std::getline(is_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line[0] != '#') return line;
    }
    throw ParseError("unexpected end of algebra file", line_no_);
  }

  // Reads "keyword rest" and returns rest.
  std::string expect(std::string_view keyword) {
    std::string line = next();
    if (line.rfind(std::string(keyword) + " ", 0) != 0) fail("expected '" + std::string(keyword) + "'");
    return line.substr(keyword.size() + 1);
  }

  std::size_t number(const std::string& text) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(text, &pos);
    } catch (const std::exception&) {
      fail("expected a number");
    }
    if (pos != text.size()) fail("trailing characters after number");
    return static_cast<std::size_t>(v);
  }

  Bitset bits(std::size_t nbits) {
    std::string line = next();
    if (nbits == 0) {
      if (line != "-") fail("expected '-' for an empty bitset");
      return Bitset(0);
    }
    try {
      return Bitset::from_hex(line, nbits);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_no_); }
  std::size_t line() const noexcept { return line_no_; }

 private:
  std::istream& is_;
  std::size_t line_no_ = 0;
};

}  // namespace

FiniteAlgebra read_algebra(std::istream& is) {
  LineReader in(is);
  if (in.next() != "cylalg-algebra 1") in.fail("unsupported algebra file header");
  Signature sig;
  try {
    sig = Signature::parse(in.expect("signature"));
  } catch (const DomainError& e) {
    in.fail(e.what());
  }
  const std::size_t atoms = in.number(in.expect("atoms"));
  const std::string rep = in.expect("representation");
  std::vector<Bitset> reprs;
  SpacePtr space;
  if (rep != "none") {
    std::istringstream rs(rep);
    std::string size_text, kw, sp;
    rs >> size_text >> kw >> sp;
    const std::size_t rsize = in.number(size_text);
    if (!kw.empty()) {
      const auto comma = sp.find(',');
      if (kw != "space" || comma == std::string::npos) in.fail("malformed representation line");
      try {
        space = TupleSpace::make(static_cast<std::uint32_t>(in.number(sp.substr(0, comma))),
                                 static_cast<std::uint32_t>(in.number(sp.substr(comma + 1))));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        in.fail(e.what());
      }
    }
    for (std::size_t k = 0; k < atoms; ++k) reprs.push_back(in.bits(rsize));
  }
  std::vector<OpTable> tables;
  for (const auto& op : sig.operators()) {
    std::istringstream hs(in.expect("op"));
    std::string name, rows_text;
    hs >> name >> rows_text;
    if (name != op.name()) in.fail("expected op table " + op.name());
    const std::size_t rows = in.number(rows_text);
    if (rows != table_rows(op.arity(), atoms)) in.fail("wrong row count for " + op.name());
    OpTable t{op, {}};
    for (std::size_t r = 0; r < rows; ++r) t.values.push_back(in.bits(atoms));
    tables.push_back(std::move(t));
  }
  if (in.next() != "end") in.fail("expected 'end'");
  try {
    return FiniteAlgebra(sig, atoms, std::move(tables), std::move(reprs), std::move(space));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    in.fail(e.what());
  }
}

}  // namespace cylalg
