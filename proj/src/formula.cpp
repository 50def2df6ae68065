#include "cylalg/formula.hpp"

#include <algorithm>
#include <cctype>

#include "cylalg/error.hpp"

namespace cylalg {

namespace {

void check_var(std::uint32_t v) {
  if (v >= kMaxVariables) throw DomainError("variable v" + std::to_string(v) + " out of range");
}

std::uint64_t bit(std::uint32_t v) { return std::uint64_t{1} << v; }

}  // namespace

Formula Formula::make(FormulaKind k, std::shared_ptr<const Node> a, std::shared_ptr<const Node> b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->free_mask = (a ? a->free_mask : 0) | (b ? b->free_mask : 0);
  n->var_bound = std::max(a ? a->var_bound : 0U, b ? b->var_bound : 0U);
  n->depth = std::max(a ? a->depth : 0U, b ? b->depth : 0U);
  n->a = std::move(a);
  n->b = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::truth() { return make(FormulaKind::True, nullptr, nullptr); }
Formula Formula::falsity() { return make(FormulaKind::False, nullptr, nullptr); }

Formula Formula::atom(std::string symbol, std::vector<std::uint32_t> args) {
  if (symbol.empty()) throw DomainError("empty relation symbol");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->symbol = std::move(symbol);
  for (auto v : args) {
    check_var(v);
    n->free_mask |= bit(v);
    n->var_bound = std::max(n->var_bound, v + 1);
  }
  n->vars = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::eq(std::uint32_t i, std::uint32_t j) {
  check_var(i);
  check_var(j);
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Eq;
  n->vars = {i, j};
  n->free_mask = bit(i) | bit(j);
  n->var_bound = std::max(i, j) + 1;
  return Formula(std::move(n));
}

namespace {

Formula quantify(FormulaKind k, std::uint32_t v, const Formula& body) {
  check_var(v);
  auto n = std::make_shared<Formula::Node>();
  n->kind = k;
  n->vars = {v};
  n->a = body.shared_node();
  n->free_mask = body.free_mask() & ~bit(v);
  n->var_bound = std::max(body.var_bound(), v + 1);
  n->depth = body.quantifier_depth() + 1;
  return Formula(std::move(n));
}

}  // namespace

Formula Formula::exists(std::uint32_t v, const Formula& body) { return quantify(FormulaKind::Exists, v, body); }
Formula Formula::forall(std::uint32_t v, const Formula& body) { return quantify(FormulaKind::Forall, v, body); }
Formula Formula::iff(const Formula& l, const Formula& r) { return make(FormulaKind::Iff, l.node_, r.node_); }
Formula Formula::operator!() const { return make(FormulaKind::Not, node_, nullptr); }
Formula Formula::operator&(const Formula& o) const { return make(FormulaKind::And, node_, o.node_); }
Formula Formula::operator|(const Formula& o) const { return make(FormulaKind::Or, node_, o.node_); }
Formula Formula::implies(const Formula& o) const { return make(FormulaKind::Implies, node_, o.node_); }

std::vector<std::uint32_t> Formula::free_vars() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < kMaxVariables; ++v)
    if (node_->free_mask & bit(v)) out.push_back(v);
  return out;
}

namespace {

bool same(const Formula::Node* x, const Formula::Node* y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind || x->symbol != y->symbol || x->vars != y->vars) return false;
  return same(x->a.get(), y->a.get()) && same(x->b.get(), y->b.get());
}

}  // namespace

bool Formula::operator==(const Formula& o) const { return same(node_.get(), o.node_.get()); }

std::size_t tree_size(const Formula& f) {
  std::size_t n = 1;
  if (f.node()->a) n += tree_size(Formula(f.node()->a));
  if (f.node()->b) n += tree_size(Formula(f.node()->b));
  return n;
}

// ---------------------------------------------------------------------------

Vocabulary::Vocabulary(std::initializer_list<std::pair<const std::string, std::uint32_t>> init) {
  for (const auto& [name, ar] : init) add(name, ar);
}

void Vocabulary::add(const std::string& name, std::uint32_t arity) {
  auto [it, inserted] = arity_.emplace(name, arity);
  if (!inserted && it->second != arity)
    throw DomainError("symbol " + name + " declared with arities " + std::to_string(it->second) + " and " +
                      std::to_string(arity));
}

std::uint32_t Vocabulary::arity(const std::string& name) const {
  auto it = arity_.find(name);
  if (it == arity_.end()) throw DomainError("unknown relation symbol " + name);
  return it->second;
}

std::vector<std::string> Vocabulary::symbols() const {
  std::vector<std::string> out;
  for (const auto& [name, ar] : arity_) out.push_back(name);
  return out;
}

std::size_t Vocabulary::index_of(const std::string& name) const {
  auto it = arity_.find(name);
  if (it == arity_.end()) throw DomainError("unknown relation symbol " + name);
  return static_cast<std::size_t>(std::distance(arity_.begin(), it));
}

namespace {

void collect(const Formula::Node* n, std::map<std::string, std::uint32_t>& out) {
  if (!n) return;
  if (n->kind == FormulaKind::Atom) {
    auto& ar = out[n->symbol];
    ar = std::max<std::uint32_t>(ar, static_cast<std::uint32_t>(n->vars.size()));
  }
  collect(n->a.get(), out);
  collect(n->b.get(), out);
}

}  // namespace

Vocabulary vocabulary_of(const Formula& f) {
  std::map<std::string, std::uint32_t> m;
  collect(f.node(), m);
  Vocabulary v;
  for (const auto& [name, ar] : m) v.add(name, ar);
  return v;
}

// ---------------------------------------------------------------------------

namespace {

std::string var_name(std::uint32_t v) { return "v" + std::to_string(v); }

void print(const Formula& f, std::string& out);

void print_chain(const Formula& f, FormulaKind k, std::string& out) {
  if (f.kind() == k) {
    print_chain(f.lhs(), k, out);
    out += k == FormulaKind::And ? " & " : " | ";
    print(f.rhs(), out);
  } else {
    print(f, out);
  }
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::True: out += "true"; return;
    case FormulaKind::False: out += "false"; return;
    case FormulaKind::Atom: {
      out += f.symbol();
      out += '(';
      for (std::size_t k = 0; k < f.vars().size(); ++k) {
        if (k) out += ',';
        out += var_name(f.vars()[k]);
      }
      out += ')';
      return;
    }
    case FormulaKind::Eq: out += var_name(f.vars()[0]) + " = " + var_name(f.vars()[1]); return;
    case FormulaKind::Not:
      if (f.body().kind() == FormulaKind::Eq) {
        out += var_name(f.body().vars()[0]) + " != " + var_name(f.body().vars()[1]);
        return;
      }
      out += '!';
      print(f.body(), out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      out += '(';
      print_chain(f, f.kind(), out);
      out += ')';
      return;
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      out += '(';
      print(f.lhs(), out);
      out += f.kind() == FormulaKind::Implies ? " -> " : " <-> ";
      print(f.rhs(), out);
      out += ')';
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out += f.kind() == FormulaKind::Exists ? "ex " : "all ";
      out += var_name(f.bound());
      out += ' ';
      print(f.body(), out);
      return;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Formula parse() {
    Formula f = parse_iff();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string_view peek_ident() {
    skip();
    std::size_t e = pos_;
    if (e < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[e])) || s_[e] == '_'))
      while (e < s_.size() && ident_char(s_[e])) ++e;
    return s_.substr(pos_, e - pos_);
  }

  static bool is_var(std::string_view id) {
    return id.size() >= 2 && id[0] == 'v' &&
           std::all_of(id.begin() + 1, id.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  }

  std::uint32_t parse_var() {
    const auto id = peek_ident();
    if (!is_var(id)) fail("expected a variable");
    if (id.size() > 3) fail("variable index out of range");
    const std::uint32_t v = static_cast<std::uint32_t>(std::stoul(std::string(id.substr(1))));
    if (v >= kMaxVariables) fail("variable index out of range");
    pos_ += id.size();
    return v;
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (accept("<->")) f = Formula::iff(f, parse_imp());
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (accept("->")) return f.implies(parse_imp());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|")) f = f | parse_and();
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("&")) f = f & parse_unary();
    return f;
  }

  Formula parse_unary() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '!' && s_.substr(pos_, 2) != "!=") {
      ++pos_;
      return !parse_unary();
    }
    const auto id = peek_ident();
    if (id == "ex" || id == "all") {
      pos_ += id.size();
      const std::uint32_t v = parse_var();
      Formula body = parse_unary();
      return id == "ex" ? Formula::exists(v, body) : Formula::forall(v, body);
    }
    return parse_primary();
  }

  Formula parse_primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept("(")) {
      Formula f = parse_iff();
      expect(")");
      return f;
    }
    const auto id = peek_ident();
    if (id.empty()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    if (id == "true" || id == "false") {
      pos_ += id.size();
      return id == "true" ? Formula::truth() : Formula::falsity();
    }
    if (id == "ex" || id == "all") fail("quantifier not allowed here");
    if (is_var(id)) {
      const std::uint32_t i = parse_var();
      if (accept("!=")) return Formula::neq(i, parse_var());
      expect("=");
      return Formula::eq(i, parse_var());
    }
    std::string name(id);
    pos_ += id.size();
    expect("(");
    std::vector<std::uint32_t> args;
    if (!accept(")")) {
      do args.push_back(parse_var());
      while (accept(","));
      expect(")");
    }
    return Formula::atom(std::move(name), std::move(args));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace cylalg
