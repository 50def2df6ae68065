#include "cylalg/term.hpp"

#include <cctype>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "cylalg/error.hpp"

namespace cylalg {

Term Term::make(TermOp op, std::uint32_t i, std::uint32_t j, std::shared_ptr<const Node> a,
                std::shared_ptr<const Node> b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->i = i;
  n->j = j;
  n->args = {std::move(a), std::move(b)};
  return Term(std::move(n));
}

Term Term::var(std::uint32_t index) { return make(TermOp::Var, index, 0); }
Term Term::zero() { return make(TermOp::Zero, 0, 0); }
Term Term::one() { return make(TermOp::One, 0, 0); }
Term Term::ident() { return make(TermOp::Ident, 0, 0); }
Term Term::diag(std::uint32_t i, std::uint32_t j) { return make(TermOp::Diag, i, j); }
Term Term::cyl(std::uint32_t i, Term x) { return make(TermOp::Cyl, i, 0, std::move(x.node_)); }
Term Term::subst(std::uint32_t i, std::uint32_t j, Term x) {
  if (i == j) throw DomainError("substitution s_{i,j} requires i != j");
  return make(TermOp::Subst, i, j, std::move(x.node_));
}
Term Term::conv(Term x) { return make(TermOp::Conv, 0, 0, std::move(x.node_)); }
Term Term::comp(Term x, Term y) { return make(TermOp::Comp, 0, 0, std::move(x.node_), std::move(y.node_)); }
Term Term::operator!() const { return make(TermOp::Not, 0, 0, node_); }
Term Term::operator&(const Term& o) const { return make(TermOp::And, 0, 0, node_, o.node_); }
Term Term::operator|(const Term& o) const { return make(TermOp::Or, 0, 0, node_, o.node_); }
Term Term::implies(const Term& o) const { return make(TermOp::Impl, 0, 0, node_, o.node_); }

namespace {

std::size_t arity_of(TermOp op) {
  switch (op) {
    case TermOp::Var:
    case TermOp::Zero:
    case TermOp::One:
    case TermOp::Ident:
    case TermOp::Diag: return 0;
    case TermOp::Not:
    case TermOp::Cyl:
    case TermOp::Subst:
    case TermOp::Conv: return 1;
    case TermOp::And:
    case TermOp::Or:
    case TermOp::Impl:
    case TermOp::Comp: return 2;
  }
  return 0;
}

template <class F>
void visit_dag(const Term::Node* root, F&& f) {
  std::unordered_set<const Term::Node*> seen;
  std::vector<const Term::Node*> stack{root};
  while (!stack.empty()) {
    const Term::Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    f(*n);
    for (std::size_t k = 0; k < arity_of(n->op); ++k) stack.push_back(n->args[k].get());
  }
}

}  // namespace

std::size_t Term::arity() const noexcept { return arity_of(node_->op); }

std::size_t Term::dag_size() const {
  std::size_t c = 0;
  visit_dag(node_.get(), [&](const Node&) { ++c; });
  return c;
}

std::uint32_t Term::variable_count() const {
  std::uint32_t c = 0;
  visit_dag(node_.get(), [&](const Node& n) {
    if (n.op == TermOp::Var) c = std::max(c, n.i + 1);
  });
  return c;
}

bool Term::operator==(const Term& o) const {
  std::function<bool(const Node*, const Node*)> eq = [&](const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->op != b->op || a->i != b->i || a->j != b->j) return false;
    for (std::size_t k = 0; k < arity_of(a->op); ++k)
      if (!eq(a->args[k].get(), b->args[k].get())) return false;
    return true;
  };
  return eq(node_.get(), o.node_.get());
}

// ---------------------------------------------------------------------------
// Text form

namespace {

void print(const Term::Node& n, std::string& out) {
  switch (n.op) {
    case TermOp::Var: out += "(var " + std::to_string(n.i) + ")"; return;
    case TermOp::Zero: out += "zero"; return;
    case TermOp::One: out += "one"; return;
    case TermOp::Ident: out += "id"; return;
    case TermOp::Diag: out += "(diag " + std::to_string(n.i) + " " + std::to_string(n.j) + ")"; return;
    case TermOp::Cyl: out += "(cyl " + std::to_string(n.i) + " "; break;
    case TermOp::Subst: out += "(sub " + std::to_string(n.i) + " " + std::to_string(n.j) + " "; break;
    case TermOp::Not: out += "(not "; break;
    case TermOp::Conv: out += "(conv "; break;
    case TermOp::And: out += "(and "; break;
    case TermOp::Or: out += "(or "; break;
    case TermOp::Impl: out += "(impl "; break;
    case TermOp::Comp: out += "(comp "; break;
  }
  print(*n.args[0], out);
  if (arity_of(n.op) == 2) {
    out += ' ';
    print(*n.args[1], out);
  }
  out += ')';
}

class TermParser {
 public:
  explicit TermParser(std::string_view s) : s_(s) {}

  Term parse_all() {
    Term t = parse();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("trailing input after term", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) throw ParseError("expected a word", start);
    return std::string(s_.substr(start, pos_ - start));
  }

  std::uint32_t number() {
    skip_ws();
    const std::size_t start = pos_;
    std::string w = word();
    for (char c : w)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("expected a number", start);
    if (w.size() > 9) throw ParseError("number too large", start);
    return static_cast<std::uint32_t>(std::stoul(w));
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  Term parse() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of term", pos_);
    if (s_[pos_] != '(') {
      const std::size_t at = pos_;
      const std::string w = word();
      if (w == "zero") return Term::zero();
      if (w == "one") return Term::one();
      if (w == "id") return Term::ident();
      throw ParseError("unknown constant '" + w + "'", at);
    }
    ++pos_;
    const std::size_t at = pos_;
    const std::string head = word();
    Term result = Term::zero();
    if (head == "var") {
      result = Term::var(number());
    } else if (head == "diag") {
      const auto i = number();
      result = Term::diag(i, number());
    } else if (head == "cyl") {
      const auto i = number();
      result = Term::cyl(i, parse());
    } else if (head == "sub") {
      const auto i = number();
      const auto j = number();
      if (i == j) throw ParseError("substitution indices must differ", at);
      result = Term::subst(i, j, parse());
    } else if (head == "not") {
      result = !parse();
    } else if (head == "conv") {
      result = Term::conv(parse());
    } else if (head == "and" || head == "or" || head == "impl" || head == "comp") {
      Term a = parse();
      Term b = parse();
      if (head == "and") result = a & b;
      else if (head == "or") result = a | b;
      else if (head == "impl") result = a.implies(b);
      else result = Term::comp(a, b);
    } else {
      throw ParseError("unknown operator '" + head + "'", at);
    }
    expect(')');
    return result;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(*t.node(), out);
  return out;
}

Term parse_term(std::string_view text) { return TermParser(text).parse_all(); }

// ---------------------------------------------------------------------------

namespace {

// Rebuilds a term bottom-up; `leaf` maps variable nodes.
class Rebuilder {
 public:
  explicit Rebuilder(std::span<const Term> repl) : repl_(repl) {}

  Term run(const Term& t) {
    const Term::Node* n = t.node();
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    Term r = t;
    switch (t.op()) {
      case TermOp::Var:
        if (t.i() < repl_.size()) r = repl_[t.i()];
        break;
      case TermOp::Zero:
      case TermOp::One:
      case TermOp::Ident:
      case TermOp::Diag: break;
      case TermOp::Not: r = !run(t.arg(0)); break;
      case TermOp::Cyl: r = Term::cyl(t.i(), run(t.arg(0))); break;
      case TermOp::Subst: r = Term::subst(t.i(), t.j(), run(t.arg(0))); break;
      case TermOp::Conv: r = Term::conv(run(t.arg(0))); break;
      case TermOp::And: r = run(t.arg(0)) & run(t.arg(1)); break;
      case TermOp::Or: r = run(t.arg(0)) | run(t.arg(1)); break;
      case TermOp::Impl: r = run(t.arg(0)).implies(run(t.arg(1))); break;
      case TermOp::Comp: r = Term::comp(run(t.arg(0)), run(t.arg(1))); break;
    }
    memo_.emplace(n, r);
    return r;
  }

 private:
  std::span<const Term> repl_;
  std::unordered_map<const Term::Node*, Term> memo_;
};

OpDescriptor descriptor_of(const Term::Node& n) {
  switch (n.op) {
    case TermOp::Cyl: return {OpKind::Cyl, n.i, 0};
    case TermOp::Subst: return {OpKind::Subst, n.i, n.j};
    case TermOp::Diag: return {OpKind::Diag, n.i, n.j};
    case TermOp::Ident: return {OpKind::Ident};
    case TermOp::Conv: return {OpKind::Conv};
    case TermOp::Comp: return {OpKind::Comp};
    default: return {OpKind::Ident};
  }
}

bool is_boolean(TermOp op) {
  return op == TermOp::Var || op == TermOp::Zero || op == TermOp::One || op == TermOp::Not ||
         op == TermOp::And || op == TermOp::Or || op == TermOp::Impl;
}

}  // namespace

Term substitute(const Term& t, std::span<const Term> replacements) {
  return Rebuilder(replacements).run(t);
}

void check_term(const Term& t, const Signature& sig, std::size_t nvars) {
  visit_dag(t.node(), [&](const Term::Node& n) {
    if (n.op == TermOp::Var) {
      if (n.i >= nvars)
        throw DomainError("unbound term variable " + std::to_string(n.i) + " (have " +
                          std::to_string(nvars) + ")");
      return;
    }
    if (is_boolean(n.op)) return;
    if (n.op == TermOp::Diag && n.i == n.j) {
      if (sig.kind() != SigKind::CA) throw MismatchError("diagonal constant not in " + sig.name());
      if (n.i >= sig.dimension()) throw MismatchError("diagonal index out of range for " + sig.name());
      return;
    }
    const OpDescriptor d = descriptor_of(n);
    if (!sig.admits(d)) throw MismatchError("operator " + d.name() + " not in signature " + sig.name());
  });
}

namespace {

template <class Value, class Ops>
class Evaluator {
 public:
  Evaluator(std::span<const Value> asg, const Ops& ops) : asg_(asg), ops_(ops) {}

  const Value& eval(const Term::Node* n) {
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    Value v = compute(*n);
    return memo_.emplace(n, std::move(v)).first->second;
  }

 private:
  Value compute(const Term::Node& n) {
    switch (n.op) {
      case TermOp::Var: return asg_[n.i];
      case TermOp::Zero: return ops_.zero();
      case TermOp::One: return ops_.one();
      case TermOp::Not: return ~eval(n.args[0].get());
      case TermOp::And: {
        Value a = eval(n.args[0].get());
        return a & eval(n.args[1].get());
      }
      case TermOp::Or: {
        Value a = eval(n.args[0].get());
        return a | eval(n.args[1].get());
      }
      case TermOp::Impl: {
        Value a = ~eval(n.args[0].get());
        return a | eval(n.args[1].get());
      }
      default: return ops_.special(n, *this);
    }
  }

  std::span<const Value> asg_;
  const Ops& ops_;
  std::unordered_map<const Term::Node*, Value> memo_;
};

struct SetOps {
  const SetAlgebra& alg;

  Element zero() const { return Element::empty(alg.space()); }
  Element one() const { return Element::full(alg.space()); }

  template <class Ev>
  Element special(const Term::Node& n, Ev& ev) const {
    switch (n.op) {
      case TermOp::Cyl: return cylalg::cyl(n.i, ev.eval(n.args[0].get()));
      case TermOp::Subst: return cylalg::subst(n.i, n.j, ev.eval(n.args[0].get()));
      case TermOp::Diag: return cylalg::diag(alg.space(), n.i, n.j);
      default: throw MismatchError("relation-algebra operator in a set-algebra term");
    }
  }
};

struct RelOps {
  std::uint32_t base;

  Relation zero() const { return Relation::empty(base); }
  Relation one() const { return Relation::full(base); }

  template <class Ev>
  Relation special(const Term::Node& n, Ev& ev) const {
    switch (n.op) {
      case TermOp::Ident: return Relation::identity(base);
      case TermOp::Conv: return ev.eval(n.args[0].get()).converse();
      case TermOp::Comp: {
        Relation a = ev.eval(n.args[0].get());
        return a.compose(ev.eval(n.args[1].get()));
      }
      default: throw MismatchError("set-algebra operator in a relation-algebra term");
    }
  }
};

}  // namespace

Element evaluate(const Term& t, std::span<const Element> assignment, const SetAlgebra& ambient) {
  if (ambient.signature().kind() == SigKind::RA)
    throw MismatchError("use the Relation overload for relation-algebra terms");
  check_term(t, ambient.signature(), assignment.size());
  for (const auto& e : assignment)
    if (!e.space().same_as(*ambient.space()))
      throw MismatchError("assignment element from " + e.space().header() + " in ambient " +
                          ambient.space()->header());
  SetOps ops{ambient};
  Evaluator<Element, SetOps> ev(assignment, ops);
  return ev.eval(t.node());
}

Relation evaluate(const Term& t, std::span<const Relation> assignment, std::uint32_t base) {
  check_term(t, Signature::make(SigKind::RA), assignment.size());
  for (const auto& r : assignment)
    if (r.base() != base) throw MismatchError("assignment relation over a different base");
  RelOps ops{base};
  Evaluator<Relation, RelOps> ev(assignment, ops);
  return ev.eval(t.node());
}

}  // namespace cylalg
