#include "cylalg/morphism.hpp"

#include <algorithm>
#include <numeric>

#include "cylalg/error.hpp"

namespace cylalg {

Bitset Homomorphism::apply(const Bitset& x) const {
  if (x.size() != atom_images.size()) throw MismatchError("element not in the homomorphism's domain");
  Bitset out(target_atoms);
  x.for_each_set([&](std::size_t a) { out |= atom_images[a]; });
  return out;
}

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const Homomorphism& h) {
  if (!(a.signature() == b.signature())) return false;
  const std::size_t na = a.atom_count();
  const std::size_t nb = b.atom_count();
  if (h.atom_images.size() != na || h.target_atoms != nb) return false;
  Bitset seen(nb);
  for (const auto& img : h.atom_images) {
    if (img.size() != nb || img.intersects(seen)) return false;
    seen |= img;
  }
  if (!(seen == b.one())) return false;

  for (std::size_t k = 0; k < a.tables().size(); ++k) {
    const auto& ta = a.tables()[k];
    switch (ta.op.arity()) {
      case 0:
        if (!(h.apply(ta.values[0]) == b.apply(k, {}))) return false;
        break;
      case 1:
        for (std::size_t x = 0; x < na; ++x)
          if (!(h.apply(ta.values[x]) == b.apply(k, std::span<const Bitset>(&h.atom_images[x], 1))))
            return false;
        break;
      default:
        for (std::size_t x = 0; x < na; ++x)
          for (std::size_t y = 0; y < na; ++y) {
            const Bitset args[2] = {h.atom_images[x], h.atom_images[y]};
            if (!(h.apply(ta.values[x * na + y]) == b.apply(k, args))) return false;
          }
    }
  }
  return true;
}

Bitset Isomorphism::apply(const Bitset& x) const {
  if (x.size() != atom_map.size()) throw MismatchError("element not in the isomorphism's domain");
  Bitset out(atom_map.size());
  x.for_each_set([&](std::size_t a) { out.set(atom_map[a]); });
  return out;
}

Homomorphism Isomorphism::as_homomorphism() const {
  Homomorphism h;
  h.target_atoms = atom_map.size();
  for (auto t : atom_map) h.atom_images.push_back(Bitset::single(atom_map.size(), t));
  return h;
}

bool is_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const Isomorphism& iso) {
  if (a.atom_count() != b.atom_count() || iso.atom_map.size() != a.atom_count()) return false;
  std::vector<bool> hit(a.atom_count(), false);
  for (auto t : iso.atom_map) {
    if (t >= hit.size() || hit[t]) return false;
    hit[t] = true;
  }
  return is_homomorphism(a, b, iso.as_homomorphism());
}

namespace {

// Per-atom data that any isomorphism must preserve.
std::vector<std::vector<std::size_t>> atom_invariants(const FiniteAlgebra& alg) {
  const std::size_t n = alg.atom_count();
  std::vector<std::vector<std::size_t>> inv(n);
  for (const auto& t : alg.tables()) {
    switch (t.op.arity()) {
      case 0:
        for (std::size_t x = 0; x < n; ++x) inv[x].push_back(t.values[0].test(x));
        break;
      case 1: {
        std::vector<std::size_t> indeg(n, 0);
        for (std::size_t x = 0; x < n; ++x) t.values[x].for_each_set([&](std::size_t y) { ++indeg[y]; });
        for (std::size_t x = 0; x < n; ++x) {
          inv[x].push_back(t.values[x].count());
          inv[x].push_back(t.values[x].test(x));
          inv[x].push_back(indeg[x]);
        }
        break;
      }
      default:
        for (std::size_t x = 0; x < n; ++x) {
          inv[x].push_back(t.values[x * n + x].count());
          inv[x].push_back(t.values[x * n + x].test(x));
        }
    }
  }
  return inv;
}

class IsoSearch {
 public:
  IsoSearch(const FiniteAlgebra& a, const FiniteAlgebra& b) : a_(a), b_(b), n_(a.atom_count()) {}

  std::optional<Isomorphism> run() {
    const auto ia = atom_invariants(a_);
    const auto ib = atom_invariants(b_);
    cands_.assign(n_, {});
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        if (ia[x] == ib[y]) cands_[x].push_back(y);
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t l, std::size_t r) { return cands_[l].size() < cands_[r].size(); });
    map_.assign(n_, kUnset);
    used_.assign(n_, false);
    if (!extend(0)) return std::nullopt;
    return Isomorphism{map_};
  }

 private:
  static constexpr std::size_t kUnset = ~std::size_t{0};

  bool extend(std::size_t depth) {
    if (depth == n_) return true;
    const std::size_t x = order_[depth];
    for (std::size_t y : cands_[x]) {
      if (used_[y]) continue;
      map_[x] = y;
      used_[y] = true;
      if (consistent(x, depth) && extend(depth + 1)) return true;
      used_[y] = false;
      map_[x] = kUnset;
    }
    return false;
  }

  // Compares every table entry that mentions x and otherwise only atoms
  // assigned before it.
  bool consistent(std::size_t x, std::size_t depth) const {
    const std::span<const std::size_t> done(order_.data(), depth + 1);
    for (std::size_t k = 0; k < a_.tables().size(); ++k) {
      const auto& ta = a_.tables()[k];
      const auto& tb = b_.tables()[k];
      switch (ta.op.arity()) {
        case 0:
          if (ta.values[0].test(x) != tb.values[0].test(map_[x])) return false;
          break;
        case 1:
          for (std::size_t p : done) {
            if (ta.values[x].test(p) != tb.values[map_[x]].test(map_[p])) return false;
            if (ta.values[p].test(x) != tb.values[map_[p]].test(map_[x])) return false;
          }
          break;
        default:
          for (std::size_t p : done)
            for (std::size_t q : done) {
              if (p != x && q != x) {
                if (ta.values[p * n_ + q].test(x) != tb.values[map_[p] * n_ + map_[q]].test(map_[x]))
                  return false;
                continue;
              }
              for (std::size_t r : done)
                if (ta.values[p * n_ + q].test(r) != tb.values[map_[p] * n_ + map_[q]].test(map_[r]))
                  return false;
            }
      }
    }
    return true;
  }

  const FiniteAlgebra& a_;
  const FiniteAlgebra& b_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> cands_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> map_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<Isomorphism> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                            std::size_t max_atoms) {
  if (!(a.signature() == b.signature())) return std::nullopt;
  if (a.atom_count() != b.atom_count()) return std::nullopt;
  if (a.atom_count() > max_atoms)
    throw CapacityError("isomorphism search limited to 2^" + std::to_string(max_atoms) +
                        " elements, got 2^" + std::to_string(a.atom_count()));
  return IsoSearch(a, b).run();
}

std::variant<Homomorphism, HomWitness> extend_homomorphism(const FiniteAlgebra& a,
                                                           std::span<const Bitset> gens,
                                                           const FiniteAlgebra& b,
                                                           std::span<const Bitset> images) {
  if (gens.size() != images.size()) throw DomainError("generator and image lists differ in length");
  if (!(a.signature() == b.signature()))
    throw MismatchError("homomorphism between " + a.signature().name() + " and " + b.signature().name());
  for (const auto& g : gens) a.check_element(g);
  for (const auto& h : images) b.check_element(h);
  if (generate_subalgebra(a, gens).atom_count() != a.atom_count())
    throw DomainError("the given elements do not generate the domain algebra");

  const std::size_t na = a.atom_count();
  const std::size_t nb = b.atom_count();
  const FiniteAlgebra prod = product(a, b);
  std::vector<Bitset> pairs;
  for (std::size_t k = 0; k < gens.size(); ++k) pairs.push_back(Bitset::concat(gens[k], images[k]));
  const FiniteAlgebra graph = generate_subalgebra(prod, pairs);

  Homomorphism h;
  h.target_atoms = nb;
  h.atom_images.assign(na, Bitset(nb));
  for (const auto& block : graph.atom_representations()) {
    const Bitset left = block.slice(0, na);
    const Bitset right = block.slice(na, nb);
    if (left.none()) return HomWitness{a.zero(), b.zero(), right};
    // The projection onto A is a bijection here, so `left` is one atom.
    if (left.count() != 1) throw Error("graph projection is not atom-preserving");
    h.atom_images[left.find_first()] = right;
  }
  return h;
}

bool is_independent(const FiniteAlgebra& a, std::span<const Bitset> y,
                    std::span<const FiniteAlgebra> probes) {
  for (const auto& e : y) a.check_element(e);
  if (a.signature().kind() == SigKind::BA) {
    if (y.size() > 20) throw CapacityError("independence test limited to 20 elements");
    const std::uint64_t n = std::uint64_t{1} << y.size();
    for (std::uint64_t gamma = 0; gamma < n; ++gamma) {
      Bitset meet = a.one();
      for (std::size_t i = 0; i < y.size(); ++i) meet &= ((gamma >> i) & 1U) ? y[i] : ~y[i];
      if (meet.none()) return false;
    }
    return true;
  }
  if (probes.empty()) throw DomainError("independence outside BA needs a nonempty probe family");
  const FiniteAlgebra sub = generate_subalgebra(a, y);
  std::vector<Bitset> local;
  for (const auto& e : y) local.push_back(*sub.locate(e));
  for (const auto& b : probes) {
    const auto elems = b.elements();
    double total = 1;
    for (std::size_t i = 0; i < y.size(); ++i) total *= static_cast<double>(elems.size());
    if (total > double(1 << 20)) throw CapacityError("too many maps into a probe algebra");
    std::vector<std::size_t> choice(y.size(), 0);
    while (true) {
      std::vector<Bitset> images;
      for (auto c : choice) images.push_back(elems[c]);
      if (std::holds_alternative<HomWitness>(extend_homomorphism(sub, local, b, images))) return false;
      std::size_t i = 0;
      while (i < choice.size() && ++choice[i] == elems.size()) choice[i++] = 0;
      if (i == choice.size()) break;
    }
  }
  return true;
}

std::variant<Decomposition, DecompositionFailure> decompose_by_zero_dimensional(const FiniteAlgebra& a,
                                                                                const Bitset& b) {
  a.check_element(b);
  const Bitset j0 = principal_ideal(a, b).closure;
  const Bitset j1 = principal_ideal(a, ~b).closure;
  const Bitset meet = j0 & j1;
  if (meet.any()) return DecompositionFailure{a.atom(meet.find_first())};

  FiniteAlgebra left = relativize(a, b);
  FiniteAlgebra right = relativize(a, ~b);
  FiniteAlgebra prod = product(left, right);
  Isomorphism iso;
  std::size_t li = 0, ri = left.atom_count();
  for (std::size_t k = 0; k < a.atom_count(); ++k) iso.atom_map.push_back(b.test(k) ? li++ : ri++);
  return Decomposition{std::move(left), std::move(right), std::move(prod), std::move(iso)};
}

}  // namespace cylalg
