#include "cylalg/library.hpp"

#include "cylalg/error.hpp"

namespace cylalg {

namespace lib {

namespace {

Formula R(std::uint32_t a, std::uint32_t b) { return Formula::atom("R", {a, b}); }
Formula R3() { return Formula::atom("R", {0, 1, 2}); }
Formula E(std::uint32_t a, std::uint32_t b) { return Formula::atom("E", {a, b}); }

std::uint32_t third(std::uint32_t a, std::uint32_t b) {
  if (a > 2 || b > 2 || a == b) throw DomainError("suc needs two distinct variables among v0, v1, v2");
  return 3 - a - b;
}

}  // namespace

Formula suc(std::uint32_t a, std::uint32_t b) {
  const auto w = third(a, b);
  return Formula::forall(w, Formula::iff(R(w, b) & Formula::neq(w, b), R(w, a) | Formula::eq(w, a)));
}

Formula suc_literal(std::uint32_t a, std::uint32_t b) {
  const auto w = third(a, b);
  return Formula::forall(w, Formula::iff(R(w, b) & Formula::neq(w, b), R(a, w) | Formula::eq(w, a)));
}

Formula is_singleton(std::uint32_t x, std::uint32_t y, std::uint32_t fresh) {
  return E(y, x) & Formula::forall(fresh, E(fresh, x).implies(Formula::eq(fresh, y)));
}

Formula singleton_in(std::uint32_t x, std::uint32_t y, std::uint32_t fresh) {
  return Formula::exists(fresh, is_singleton(fresh, x, fresh + 1) & E(fresh, y));
}

Formula double_singleton(std::uint32_t x, std::uint32_t y, std::uint32_t fresh) {
  return Formula::exists(fresh, is_singleton(fresh, y, fresh + 1) & is_singleton(x, fresh, fresh + 1));
}

Formula in_union(std::uint32_t x, std::uint32_t y, std::uint32_t fresh) {
  return Formula::exists(fresh, E(x, fresh) & E(fresh, y));
}

Formula pair(std::uint32_t x, std::uint32_t fresh) {
  const auto u = fresh, v = fresh + 1, w = fresh + 2;
  const Formula unique_first =
      Formula::exists(u, singleton_in(u, x, v) & Formula::forall(v, singleton_in(v, x, w).implies(Formula::eq(v, u))));
  const Formula other_u = in_union(u, x, w) & !singleton_in(u, x, w);
  const Formula other_v = in_union(v, x, w) & !singleton_in(v, x, w);
  const Formula at_most_one_second = Formula::forall(u, Formula::forall(v, (other_u & other_v).implies(Formula::eq(u, v))));
  const Formula members_nonempty = Formula::forall(u, E(u, x).implies(Formula::exists(v, E(v, u))));
  return unique_first & at_most_one_second & members_nonempty;
}

Formula p0(std::uint32_t x, std::uint32_t y, std::uint32_t fresh) { return pair(x, fresh) & singleton_in(y, x, fresh); }

Formula p1(std::uint32_t x, std::uint32_t y, std::uint32_t fresh) {
  return pair(x, fresh) &
         (double_singleton(x, y, fresh) | ((!singleton_in(y, x, fresh)) & in_union(y, x, fresh)));
}

Formula zero(std::uint32_t x, std::uint32_t fresh) {
  return Formula::forall(fresh, E(fresh, x).implies(Formula::falsity()));
}

Formula succ(std::uint32_t x, std::uint32_t z, std::uint32_t fresh) {
  return E(x, z) & Formula::forall(fresh, E(fresh, x).implies(E(fresh, z))) &
         Formula::forall(fresh, E(fresh, z).implies(E(fresh, x) | Formula::eq(fresh, x)));
}

Formula le(std::uint32_t x, std::uint32_t y, std::uint32_t fresh) {
  return Formula::forall(fresh, E(fresh, x).implies(E(fresh, y)));
}

Formula lt(std::uint32_t x, std::uint32_t y, std::uint32_t fresh) { return le(x, y, fresh) & Formula::neq(x, y); }

Formula ord(std::uint32_t x, std::uint32_t fresh) {
  const auto u = fresh, v = fresh + 1, w = fresh + 2;
  const Formula transitive = Formula::forall(u, E(u, x).implies(Formula::forall(v, E(v, u).implies(E(v, x)))));
  const Formula linear = Formula::forall(
      u, E(u, x).implies(Formula::forall(v, E(v, x).implies(E(u, v) | Formula::eq(u, v) | E(v, u)))));
  const Formula order_transitive = Formula::forall(
      u, E(u, x).implies(Formula::forall(
             v, E(v, x).implies(Formula::forall(w, E(w, x).implies((E(u, v) & E(v, w)).implies(E(u, w))))))));
  return transitive & linear & order_transitive;
}

namespace {

Formula zero_or_successor(std::uint32_t x, std::uint32_t fresh) {
  return zero(x, fresh) | Formula::exists(fresh, E(fresh, x) & succ(fresh, x, fresh + 1));
}

}  // namespace

Formula ford(std::uint32_t x, std::uint32_t fresh) {
  return ord(x, fresh) & zero_or_successor(x, fresh) &
         Formula::forall(fresh, E(fresh, x).implies(zero_or_successor(fresh, fresh + 1)));
}

}  // namespace lib

namespace {

using namespace lib;

Formula order_axioms_body(bool literal_a3) {
  const Formula a1 = Formula::iff(R3(), Formula::exists(2, R3()));
  const Formula a2 = (R(0, 1) & R(1, 0)).implies(Formula::eq(0, 1));
  const Formula a3 = Formula::neq(0, 1).implies(literal_a3 ? (R(0, 1) | R(1, 2)) : (R(0, 1) | R(1, 0)));
  const Formula a4 = Formula::forall(0, Formula::exists(1, suc(0, 1)));
  const Formula a5 = Formula::exists(1, R(1, 1) & Formula::forall(0, R(0, 0).implies(R(0, 1))));
  return a1 & a2 & a3 & a4 & a5;
}

Formula close3(const Formula& f) { return Formula::forall(0, Formula::forall(1, Formula::forall(2, f))); }

Formula arithmetic(const std::string& op, std::uint32_t x, std::uint32_t y, std::uint32_t z) {
  return Formula::atom(op, {x, y, z});
}

Formula lambda_axioms() {
  const std::uint32_t x = 0, y = 1, u = 2, v = 3, w = 4, f = 5;
  const Formula body =
      Formula::forall(u, succ(x, u, f).implies(!zero(u, f))) &
      Formula::forall(u, (succ(x, u, f) & succ(y, u, f)).implies(Formula::eq(x, y))) &
      Formula::forall(u, succ(y, u, f).implies(Formula::iff(lt(x, u, f), le(x, y, f)))) &
      Formula::forall(u, zero(u, f).implies(!lt(x, u, f))) &
      (lt(x, y, f) | Formula::eq(x, y) | lt(y, x, f)) &
      Formula::forall(u, zero(u, f).implies(arithmetic("Add", x, u, x))) &
      Formula::forall(u, succ(y, u, f).implies(Formula::forall(
                             v, arithmetic("Add", x, y, v).implies(
                                    Formula::forall(w, succ(v, w, f).implies(arithmetic("Add", x, u, w))))))) &
      Formula::forall(u, zero(u, f).implies(arithmetic("Mul", x, u, u))) &
      Formula::forall(u, succ(y, u, f).implies(Formula::forall(
                             v, arithmetic("Mul", x, y, v).implies(
                                    Formula::forall(w, arithmetic("Add", v, x, w).implies(arithmetic("Mul", x, u, w))))))) &
      Formula::forall(u, zero(u, f).implies(Formula::forall(v, succ(u, v, f).implies(arithmetic("Exp", x, u, v))))) &
      Formula::forall(u, succ(y, u, f).implies(Formula::forall(
                             v, arithmetic("Exp", x, y, v).implies(
                                    Formula::forall(w, arithmetic("Mul", v, x, w).implies(arithmetic("Exp", x, u, w)))))));
  return Formula::forall(x, ford(x, f).implies(Formula::forall(y, ford(y, f).implies(body))));
}

Formula lambda_total() {
  const std::uint32_t x = 0, y = 1, u = 2, f = 5;
  Formula out = Formula::exists(u, ford(u, f) & zero(u, f)) &
                Formula::forall(x, ford(x, f).implies(Formula::exists(u, ford(u, f) & succ(x, u, f))));
  for (const char* op : {"Add", "Mul", "Exp"})
    out = out & Formula::forall(x, ford(x, f).implies(Formula::forall(
                                       y, ford(y, f).implies(Formula::exists(u, ford(u, f) & arithmetic(op, x, y, u))))));
  return out;
}

}  // namespace

FormulaLibrary::FormulaLibrary() {
  const Formula a = order_axioms_body(false);
  const Formula ax = close3(a);

  add("suc", suc(0, 1), "v1 is the immediate R-successor of v0");
  add("suc_literal", suc_literal(0, 1), "successor clause with R(v0,w) in the right-hand disjunct");
  add("A1", Formula::iff(R3(), Formula::exists(2, R3())), "R does not depend on its third place");
  add("A2", (R(0, 1) & R(1, 0)).implies(Formula::eq(0, 1)), "R is antisymmetric");
  add("A3", Formula::neq(0, 1).implies(R(0, 1) | R(1, 0)), "distinct elements are R-comparable");
  add("A3_literal", Formula::neq(0, 1).implies(R(0, 1) | R(1, 2)), "comparability clause with R(v1,v2)");
  add("A4", Formula::forall(0, Formula::exists(1, suc(0, 1))), "every element has an immediate successor");
  add("A5", Formula::exists(1, R(1, 1) & Formula::forall(0, R(0, 0).implies(R(0, 1)))),
      "there is a greatest reflexive point");
  add("A", a, "conjunction of A1 to A5");
  add("Ax", ax, "universal closure of A");
  add("Ax_literal", close3(order_axioms_body(true)), "universal closure of A with A3_literal");

  const auto gfp_next = [](const Formula& step) {
    return Formula::exists(2, step & R(2, 2) & Formula::forall(0, R(0, 0).implies(R(0, 2))));
  };
  const Formula gfp_above = gfp_next(suc(2, 0));
  const Formula gfp_above_printed = gfp_next(suc(0, 2));
  add("phi", R3() | (ax & Formula::eq(0, 1) & gfp_above),
      "under Ax, adds the point right after the greatest reflexive point as a new reflexive point");
  add("phi_as_printed", R3() | (ax & Formula::eq(0, 1) & gfp_above_printed),
      "variant of phi with the successor clause in the other direction");
  add("psi",
      ((!ax) & R3()) |
          (ax & R3() & Formula::eq(0, 1).implies(Formula::exists(1, Formula::neq(0, 1) & R(0, 1) & R(1, 1)))),
      "under Ax, removes the greatest reflexive point");
  add("eta", ax.implies(Formula::exists(0, Formula::exists(1, Formula::neq(0, 1) & R(0, 0) & R(1, 1)))),
      "under Ax there are at least two reflexive points");

  const Formula same_members = Formula::forall(2, Formula::iff(E(2, 0), E(2, 1)));
  add("Ax_eq", Formula::forall(0, Formula::forall(1, Formula::iff(Formula::eq(0, 1), same_members))),
      "equality is extensional equality");
  add("Ax_cong",
      Formula::forall(0, Formula::forall(1, same_members.implies(Formula::forall(2, Formula::iff(E(0, 2), E(1, 2)))))),
      "extensional equality preserves membership on the left");

  add("singleton", is_singleton(0, 1, 2), "v0 = {v1}");
  add("singleton_in", singleton_in(0, 1, 2), "{v0} is a member of v1");
  add("double_singleton", double_singleton(0, 1, 2), "v0 = {{v1}}");
  add("in_union", in_union(0, 1, 2), "v0 is a member of the union of v1");
  add("pair", pair(0, 1), "v0 codes an ordered pair");
  add("p0", p0(0, 1, 2), "v1 is the first coordinate of v0");
  add("p1", p1(0, 1, 2), "v1 is the second coordinate of v0");
  add("pi",
      Formula::forall(0, Formula::forall(1, Formula::forall(2, (p0(0, 1, 3) & p0(0, 2, 3)).implies(Formula::eq(1, 2))))) &
          Formula::forall(0, Formula::forall(1, Formula::forall(2, (p1(0, 1, 3) & p1(0, 2, 3)).implies(Formula::eq(1, 2))))) &
          Formula::forall(0, Formula::forall(1, Formula::exists(2, p0(2, 0, 3) & p1(2, 1, 3)))),
      "p0 and p1 are functional and every two elements are coordinates of some pair");

  add("zero", zero(0, 1), "v0 is empty");
  add("succ", succ(0, 1, 2), "v1 = v0 u {v0}");
  add("le", le(0, 1, 2), "v0 is a subset of v1");
  add("lt", lt(0, 1, 2), "v0 is a proper subset of v1");
  add("Ord", ord(0, 1), "v0 is a transitive set linearly and transitively ordered by membership");
  add("Ford", ford(0, 1), "v0 is an ordinal whose members and itself are each zero or a successor");
  add("lambda", lambda_axioms(), "successor, order and recursion equations for +, . and exp on Ford");
  add("lambda_total", lambda_total(), "zero, successor, +, . and exp are total on Ford");
}

void FormulaLibrary::add(std::string name, Formula f, std::string description) {
  auto key = name;
  entries_.emplace(std::move(key), LibraryEntry{std::move(name), std::move(f), std::move(description)});
}

const LibraryEntry& FormulaLibrary::entry(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw DomainError("unknown library formula '" + name + "'");
  return it->second;
}

std::vector<std::string> FormulaLibrary::names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : entries_) out.push_back(k);
  return out;
}

const FormulaLibrary& formula_library() {
  static const FormulaLibrary lib;
  return lib;
}

}  // namespace cylalg
