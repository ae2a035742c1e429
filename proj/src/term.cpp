#include "mcn/term.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mcn/error.hpp"

namespace mcn {

struct Term::Node {
  TermKind kind = TermKind::Zero;
  std::size_t var = 0;
  Term a;  // Neg child, Oplus left
  Term b;  // Oplus right
  std::size_t hash = 0;
  std::uint64_t size = 1;
  std::uint64_t odepth = 0;
  std::size_t max_var = 0;

  // Leaf nodes hold empty children; they are never read.
  explicit Node(TermKind k) : kind(k), a(std::shared_ptr<const Node>()), b(std::shared_ptr<const Node>()) {}
  Node(TermKind k, Term x, Term y) : kind(k), a(std::move(x)), b(std::move(y)) {}
};

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t x, std::uint64_t y) {
  return x > kSat - y ? kSat : x + y;
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const std::shared_ptr<const Term::Node>& zero_node() {
  static const auto n = [] {
    auto p = std::make_shared<Term::Node>(TermKind::Zero);
    p->hash = mix(0, 1);
    return std::shared_ptr<const Term::Node>(std::move(p));
  }();
  return n;
}

const std::shared_ptr<const Term::Node>& one_node() {
  static const auto n = [] {
    auto p = std::make_shared<Term::Node>(TermKind::One);
    p->hash = mix(0, 2);
    return std::shared_ptr<const Term::Node>(std::move(p));
  }();
  return n;
}

}  // namespace

Term::Term() : node_(zero_node()) {}

Term Term::zero() { return Term(zero_node()); }
Term Term::one() { return Term(one_node()); }

Term Term::var(std::size_t index) {
  if (index == 0) throw InputError("variable indices are 1-based");
  auto p = std::make_shared<Node>(TermKind::Var);
  p->var = index;
  p->max_var = index;
  p->hash = mix(mix(0, 3), index);
  return Term(std::move(p));
}

Term Term::neg(Term child) {
  auto p = std::make_shared<Node>(TermKind::Neg, std::move(child), Term());
  const Node& c = *p->a.node_;
  p->size = sat_add(c.size, 1);
  p->odepth = c.odepth;
  p->max_var = c.max_var;
  p->hash = mix(mix(0, 4), c.hash);
  return Term(std::move(p));
}

Term Term::oplus(Term left, Term right) {
  auto p = std::make_shared<Node>(TermKind::Oplus, std::move(left), std::move(right));
  const Node& l = *p->a.node_;
  const Node& r = *p->b.node_;
  p->size = sat_add(sat_add(l.size, r.size), 1);
  p->odepth = std::max(l.odepth, r.odepth) + 1;
  p->max_var = std::max(l.max_var, r.max_var);
  p->hash = mix(mix(mix(0, 5), l.hash), r.hash);
  return Term(std::move(p));
}

TermKind Term::kind() const noexcept { return node_->kind; }
std::size_t Term::var_index() const noexcept { return node_->var; }
const Term& Term::child() const noexcept { return node_->a; }
const Term& Term::left() const noexcept { return node_->a; }
const Term& Term::right() const noexcept { return node_->b; }
std::size_t Term::hash() const noexcept { return node_->hash; }
std::uint64_t Term::tree_size() const noexcept { return node_->size; }
std::uint64_t Term::oplus_depth() const noexcept { return node_->odepth; }
std::size_t Term::max_var() const noexcept { return node_->max_var; }

bool operator==(const Term& x, const Term& y) {
  struct PairHash {
    std::size_t operator()(const std::pair<const Term::Node*, const Term::Node*>& p) const noexcept {
      return std::hash<const void*>{}(p.first) * 31 + std::hash<const void*>{}(p.second);
    }
  };
  std::unordered_set<std::pair<const Term::Node*, const Term::Node*>, PairHash> seen;
  std::vector<std::pair<const Term::Node*, const Term::Node*>> todo{{x.id(), y.id()}};
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    if (a == b) continue;
    if (a->hash != b->hash || a->kind != b->kind || a->size != b->size || a->var != b->var) return false;
    if (!seen.insert({a, b}).second) continue;
    if (a->kind == TermKind::Neg) {
      todo.emplace_back(a->a.id(), b->a.id());
    } else if (a->kind == TermKind::Oplus) {
      todo.emplace_back(a->a.id(), b->a.id());
      todo.emplace_back(a->b.id(), b->b.id());
    }
  }
  return true;
}

std::size_t dag_size(const Term& t) {
  std::unordered_set<const Term::Node*> seen;
  std::vector<const Term*> todo{&t};
  while (!todo.empty()) {
    const Term* u = todo.back();
    todo.pop_back();
    if (!seen.insert(u->id()).second) continue;
    if (u->kind() == TermKind::Neg) todo.push_back(&u->child());
    if (u->kind() == TermKind::Oplus) {
      todo.push_back(&u->left());
      todo.push_back(&u->right());
    }
  }
  return seen.size();
}

Rational eval_term(const Term& t, const Point& p) {
  if (t.max_var() > p.size())
    throw DomainError("term uses x" + std::to_string(t.max_var()) + " but the point has " +
                     std::to_string(p.size()) + " coordinates");
  if (!in_unit_cube(p)) throw DomainError("point " + to_string(p) + " lies outside the unit cube");

  std::unordered_map<const Term::Node*, Rational> value;
  std::vector<std::pair<const Term*, bool>> stack{{&t, false}};
  while (!stack.empty()) {
    auto [u, expanded] = stack.back();
    stack.pop_back();
    if (value.count(u->id())) continue;
    switch (u->kind()) {
      case TermKind::Zero: value.emplace(u->id(), 0); break;
      case TermKind::One: value.emplace(u->id(), 1); break;
      case TermKind::Var: value.emplace(u->id(), p[u->var_index() - 1]); break;
      case TermKind::Neg:
        if (expanded) {
          value.emplace(u->id(), Rational(1) - value.at(u->child().id()));
        } else {
          stack.emplace_back(u, true);
          stack.emplace_back(&u->child(), false);
        }
        break;
      case TermKind::Oplus:
        if (expanded) {
          Rational s = value.at(u->left().id()) + value.at(u->right().id());
          value.emplace(u->id(), s > 1 ? Rational(1) : s);
        } else {
          stack.emplace_back(u, true);
          stack.emplace_back(&u->left(), false);
          stack.emplace_back(&u->right(), false);
        }
        break;
    }
  }
  return value.at(t.id());
}

Term complement(const Term& t) {
  if (t.kind() == TermKind::Neg) return t.child();
  return Term::neg(t);
}

Term otimes(const Term& a, const Term& b) {
  return Term::neg(Term::oplus(complement(a), complement(b)));
}

Term ominus(const Term& a, const Term& b) {
  return Term::neg(Term::oplus(complement(a), b));
}

Term vee(const Term& a, const Term& b) { return Term::oplus(ominus(a, b), b); }

Term wedge(const Term& a, const Term& b) {
  return complement(vee(complement(a), complement(b)));
}

Term dist(const Term& a, const Term& b) { return Term::oplus(ominus(a, b), ominus(b, a)); }

Term expand_derived(Connective c, std::span<const Term> args) {
  if (args.size() != 2) throw InputError("derived connectives are binary");
  const Term& a = args[0];
  const Term& b = args[1];
  switch (c) {
    case Connective::Otimes: return otimes(a, b);
    case Connective::Ominus: return ominus(a, b);
    case Connective::Wedge: return wedge(a, b);
    case Connective::Vee: return vee(a, b);
    case Connective::Dist: return dist(a, b);
  }
  throw InputError("unknown connective");
}

Term iterate_oplus(std::uint64_t m, const Term& t) {
  if (m == 0) throw InputError("iterate_oplus needs m >= 1");
  Term acc = t;
  for (std::uint64_t i = 1; i < m; ++i) acc = Term::oplus(acc, t);
  return acc;
}

// ---------------------------------------------------------------------------
// Text form

std::string print_term(const Term& t) {
  std::string out;
  // Items are either a pending term or a literal to emit.
  struct Item {
    const Term* term;
    const char* text;
  };
  std::vector<Item> stack{{&t, nullptr}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.text) {
      out += it.text;
      continue;
    }
    const Term& u = *it.term;
    switch (u.kind()) {
      case TermKind::Zero: out += '0'; break;
      case TermKind::One: out += '1'; break;
      case TermKind::Var:
        out += "(var ";
        out += std::to_string(u.var_index());
        out += ')';
        break;
      case TermKind::Neg:
        out += "(neg ";
        stack.push_back({nullptr, ")"});
        stack.push_back({&u.child(), nullptr});
        break;
      case TermKind::Oplus:
        out += "(oplus ";
        stack.push_back({nullptr, ")"});
        stack.push_back({&u.right(), nullptr});
        stack.push_back({nullptr, " "});
        stack.push_back({&u.left(), nullptr});
        break;
    }
  }
  return out;
}

namespace {

enum class Op { Var, Neg, Oplus, Otimes, Ominus, Wedge, Vee, Dist };

struct Frame {
  Op op;
  std::size_t open;  // offset of '('
  std::vector<Term> args;
};

std::size_t arity(Op op) { return op == Op::Neg ? 1 : 2; }

}  // namespace

Term parse_term(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto word = [&] {
    std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    return text.substr(start, pos - start);
  };

  std::vector<Frame> stack;
  std::optional<Term> done;

  auto deliver = [&](Term t) {
    if (stack.empty()) {
      done = std::move(t);
    } else {
      Frame& f = stack.back();
      if (f.op == Op::Var || f.args.size() == arity(f.op))
        throw ParseError("unexpected argument", pos);
      f.args.push_back(std::move(t));
    }
  };

  while (true) {
    skip_ws();
    if (done) {
      if (pos != text.size()) throw ParseError("trailing input", pos);
      return *done;
    }
    if (pos == text.size()) throw ParseError("unexpected end of input", pos);
    char c = text[pos];
    if (c == '0' || c == '1') {
      std::size_t at = pos++;
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        throw ParseError("constants are 0 or 1", at);
      deliver(c == '0' ? Term::zero() : Term::one());
    } else if (c == '(') {
      std::size_t open = pos++;
      skip_ws();
      std::size_t at = pos;
      std::string_view w = word();
      Op op;
      if (w == "var") op = Op::Var;
      else if (w == "neg") op = Op::Neg;
      else if (w == "oplus") op = Op::Oplus;
      else if (w == "otimes") op = Op::Otimes;
      else if (w == "ominus") op = Op::Ominus;
      else if (w == "wedge") op = Op::Wedge;
      else if (w == "vee") op = Op::Vee;
      else if (w == "dist") op = Op::Dist;
      else throw ParseError("unknown connective '" + std::string(w) + "'", at);
      if (op == Op::Var) {
        skip_ws();
        std::size_t istart = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (istart == pos) throw ParseError("expected variable index", istart);
        std::string_view digits = text.substr(istart, pos - istart);
        if (digits.size() > 18) throw ParseError("variable index too large", istart);
        std::size_t idx = std::stoull(std::string(digits));
        if (idx == 0) throw ParseError("variable index must be >= 1", istart);
        skip_ws();
        if (pos >= text.size() || text[pos] != ')') throw ParseError("expected ')'", pos);
        ++pos;
        deliver(Term::var(idx));
      } else {
        stack.push_back(Frame{op, open, {}});
      }
    } else if (c == ')') {
      if (stack.empty()) throw ParseError("unbalanced ')'", pos);
      Frame f = std::move(stack.back());
      if (f.args.size() != arity(f.op)) throw ParseError("wrong number of arguments", pos);
      stack.pop_back();
      ++pos;
      Term t;
      switch (f.op) {
        case Op::Neg: t = Term::neg(f.args[0]); break;
        case Op::Oplus: t = Term::oplus(f.args[0], f.args[1]); break;
        case Op::Otimes: t = expand_derived(Connective::Otimes, f.args); break;
        case Op::Ominus: t = expand_derived(Connective::Ominus, f.args); break;
        case Op::Wedge: t = expand_derived(Connective::Wedge, f.args); break;
        case Op::Vee: t = expand_derived(Connective::Vee, f.args); break;
        case Op::Dist: t = expand_derived(Connective::Dist, f.args); break;
        case Op::Var: break;
      }
      deliver(std::move(t));
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
  }
}

}  // namespace mcn
