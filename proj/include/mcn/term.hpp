#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "mcn/rational.hpp"

namespace mcn {

enum class TermKind : std::uint8_t { Zero, One, Var, Neg, Oplus };

// An MV-term over the core connectives {0, 1, x_i, ¬, ⊕}. Terms are immutable
// values with shared subtrees; copying is cheap.
class Term {
public:
  struct Node;

  // Default-constructed term is Zero.
  Term();

  static Term zero();
  static Term one();
  // 1-based variable index; index 0 throws InputError.
  static Term var(std::size_t index);
  static Term neg(Term child);
  static Term oplus(Term left, Term right);

  TermKind kind() const noexcept;
  std::size_t var_index() const noexcept;
  // Valid for Neg.
  const Term& child() const noexcept;
  // Valid for Oplus.
  const Term& left() const noexcept;
  const Term& right() const noexcept;

  std::size_t hash() const noexcept;
  // Size of the term as a tree (saturates at UINT64_MAX).
  std::uint64_t tree_size() const noexcept;
  // Deepest nesting of ⊕ along any root-to-leaf path.
  std::uint64_t oplus_depth() const noexcept;
  // Largest variable index occurring, 0 for closed terms.
  std::size_t max_var() const noexcept;

  // Node identity, usable as a memoization key while the term is alive.
  const Node* id() const noexcept { return node_.get(); }

  bool is_zero() const noexcept { return kind() == TermKind::Zero; }
  bool is_one() const noexcept { return kind() == TermKind::One; }

  friend bool operator==(const Term& a, const Term& b);

private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Number of distinct nodes in the term DAG.
std::size_t dag_size(const Term& t);

// Standard semantics on [0,1]: ¬a = 1 − a, a ⊕ b = min(1, a + b).
// The point's length is the arity; throws InputError when a variable index
// exceeds it or a coordinate lies outside [0,1].
Rational eval_term(const Term& t, const Point& p);

enum class Connective { Otimes, Ominus, Wedge, Vee, Dist };

// Expands a derived connective into core connectives:
//   a ⊙ b = ¬(¬a ⊕ ¬b)     a ⊖ b = a ⊙ ¬b
//   a ∨ b = (a ⊖ b) ⊕ b    a ∧ b = ¬(¬a ∨ ¬b)
//   d(a, b) = (a ⊖ b) ⊕ (b ⊖ a)
// Double negations introduced by the rules are cancelled while building.
// Every connective is binary; other argument counts throw InputError.
Term expand_derived(Connective c, std::span<const Term> args);

Term otimes(const Term& a, const Term& b);
Term ominus(const Term& a, const Term& b);
Term wedge(const Term& a, const Term& b);
Term vee(const Term& a, const Term& b);
Term dist(const Term& a, const Term& b);

// ¬t, cancelling an outer negation of t instead of stacking a second one.
Term complement(const Term& t);

// Left-associated ⊕ of m copies of t; m = 0 throws InputError.
Term iterate_oplus(std::uint64_t m, const Term& t);

// Text form, see README for the grammar. Sugar connectives are expanded.
Term parse_term(std::string_view text);
// Core grammar only, single spaces, no trailing newline.
std::string print_term(const Term& t);

}  // namespace mcn

template <>
struct std::hash<mcn::Term> {
  std::size_t operator()(const mcn::Term& t) const noexcept { return t.hash(); }
};
