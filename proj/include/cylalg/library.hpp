#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cylalg/formula.hpp"

namespace cylalg {

struct LibraryEntry {
  std::string name;
  Formula formula;
  std::string description;
};

/// Named formulas. Order-theoretic entries use a ternary R (x, y, z are
/// v0, v1, v2; R(a,b) abbreviates a binary use of R). Set-theoretic entries
/// use E(a,b) for a in b; the arithmetic atoms Add, Mul and Exp are ternary
/// relations x + y = z, x . y = z, x^y = z supplied by the model.
class FormulaLibrary {
 public:
  FormulaLibrary();

  const LibraryEntry& entry(const std::string& name) const;
  const Formula& operator[](const std::string& name) const { return entry(name).formula; }
  bool contains(const std::string& name) const { return entries_.count(name) != 0; }
  std::vector<std::string> names() const;

 private:
  void add(std::string name, Formula f, std::string description);

  std::map<std::string, LibraryEntry> entries_;
};

const FormulaLibrary& formula_library();

namespace lib {

/// b is the element right after a: the strict predecessors of b are exactly
/// a and the predecessors of a. The quantified variable is the index in
/// {0,1,2} other than a and b.
Formula suc(std::uint32_t a, std::uint32_t b);
/// Same with R(a,w) in place of R(w,a).
Formula suc_literal(std::uint32_t a, std::uint32_t b);

// Set-theoretic building blocks. `fresh` is the first variable index the
// formula may bind; it must exceed every free variable.
Formula is_singleton(std::uint32_t x, std::uint32_t y, std::uint32_t fresh);  // x = {y}
Formula singleton_in(std::uint32_t x, std::uint32_t y, std::uint32_t fresh);  // {x} in y
Formula double_singleton(std::uint32_t x, std::uint32_t y, std::uint32_t fresh);  // x = {{y}}
Formula in_union(std::uint32_t x, std::uint32_t y, std::uint32_t fresh);  // x in U y
Formula pair(std::uint32_t x, std::uint32_t fresh);
Formula p0(std::uint32_t x, std::uint32_t y, std::uint32_t fresh);
Formula p1(std::uint32_t x, std::uint32_t y, std::uint32_t fresh);
Formula zero(std::uint32_t x, std::uint32_t fresh);
Formula succ(std::uint32_t x, std::uint32_t z, std::uint32_t fresh);  // z = x u {x}
Formula le(std::uint32_t x, std::uint32_t y, std::uint32_t fresh);
Formula lt(std::uint32_t x, std::uint32_t y, std::uint32_t fresh);
Formula ord(std::uint32_t x, std::uint32_t fresh);
Formula ford(std::uint32_t x, std::uint32_t fresh);

}  // namespace lib

}  // namespace cylalg
