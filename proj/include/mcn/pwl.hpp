#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "mcn/affine.hpp"
#include "mcn/geometry.hpp"
#include "mcn/rational.hpp"
#include "mcn/term.hpp"

namespace mcn {

enum class PwlKind : std::uint8_t { Leaf, Min, Max };

// Min/max lattice expression over affine leaves. Immutable, shared subtrees.
class PwlExpr {
public:
  struct Node;

  static PwlExpr leaf(AffineForm g);
  static PwlExpr constant(std::size_t arity, Integer c);
  // Builds the node exactly as given. Children must be nonempty and share
  // one arity; InputError otherwise.
  static PwlExpr min(std::vector<PwlExpr> children);
  static PwlExpr max(std::vector<PwlExpr> children);

  PwlKind kind() const noexcept;
  const AffineForm& form() const noexcept;  // Leaf only
  const std::vector<PwlExpr>& children() const noexcept;
  std::size_t arity() const noexcept;
  std::size_t hash() const noexcept;
  // Leaves of the expanded tree, saturating.
  std::uint64_t leaf_count() const noexcept;
  // Integer bounds of the value over the cube (not necessarily tight).
  Integer lower_bound() const noexcept;
  Integer upper_bound() const noexcept;

  const Node* id() const noexcept { return node_.get(); }

  friend bool operator==(const PwlExpr& a, const PwlExpr& b);

private:
  explicit PwlExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static PwlExpr lattice(PwlKind kind, std::vector<PwlExpr> children);
  std::shared_ptr<const Node> node_;
};

// Exact value; InputError on arity mismatch.
Rational eval_pwl(const PwlExpr& F, const Point& p);

// Distinct leaf forms in first-occurrence order.
std::vector<AffineForm> leaf_forms(const PwlExpr& F);

// (g ∨ 0) ∧ 1, i.e. Min(Max(g, 0), 1): the clamp of g to [0,1].
PwlExpr truncate_affine(const AffineForm& g);

// Simplifying lattice builders: flatten nested nodes of the same kind, drop
// duplicate children and children dominated by integer bounds.
PwlExpr make_min(std::vector<PwlExpr> children);
PwlExpr make_max(std::vector<PwlExpr> children);

// Pointwise 1 − F, pushed through to the leaves.
PwlExpr pwl_negate(const PwlExpr& F);
// min(1, F + G) for F, G with values in [0,1].
PwlExpr pwl_oplus(const PwlExpr& F, const PwlExpr& G);
// min(1, m·F) for F with values in [0,1], m >= 1.
PwlExpr pwl_scale_clamped(const PwlExpr& F, Integer m);

// Rewrites F as a max of mins over its own linear pieces when that is
// smaller; the function is unchanged.
PwlExpr compact(const PwlExpr& F);

// Memo for term_to_pwl, keyed by term node. Holds the terms alive.
class PwlCache {
public:
  explicit PwlCache(std::size_t arity) : arity_(arity) {}
  std::size_t arity() const noexcept { return arity_; }

  const PwlExpr* find(const Term& t) const;
  const PwlExpr& insert(const Term& t, PwlExpr value);

private:
  std::size_t arity_;
  std::unordered_map<const Term::Node*, std::pair<Term, PwlExpr>> entries_;
};

// A lattice expression with the same function as t on [0,1]^arity.
// InputError when t uses a variable beyond arity.
PwlExpr term_to_pwl(const Term& t, std::size_t arity);
PwlExpr term_to_pwl(const Term& t, PwlCache& cache);

struct Decision {
  bool holds = true;
  std::optional<Point> witness;  // set when !holds

  explicit operator bool() const noexcept { return holds; }
};

// Is F <= G everywhere on P? On failure the witness satisfies
// F(witness) > G(witness) exactly.
Decision decide_leq(const PwlExpr& F, const PwlExpr& G, const Polytope& P);
Decision decide_eq(const PwlExpr& F, const PwlExpr& G, const Polytope& P);

// Same question answered on the full arrangement of all leaves and pairwise
// leaf differences (intersected with P, assumed full-dimensional). Slower;
// kept as an independent route for cross-checking decide_leq.
Decision decide_leq_by_arrangement(const PwlExpr& F, const PwlExpr& G, const Polytope& P);

// Splits P into closed cells on which every expression is affine and calls
// visit(cell, forms) with one form per expression, depth-first in a
// deterministic order. Stops early when visit returns false. Lower-dimensional
// P is allowed.
using PieceVisitor = std::function<bool(const Polytope& cell, std::span<const AffineForm> forms)>;
void for_each_piece(std::span<const PwlExpr> exprs, const Polytope& P, const PieceVisitor& visit);

}  // namespace mcn
