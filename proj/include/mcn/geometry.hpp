#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mcn/affine.hpp"
#include "mcn/rational.hpp"

namespace mcn {

// {x in [0,1]^n : g(x) <= 0 for every listed g}. The cube bounds are always
// implied and never listed.
class Polytope {
public:
  explicit Polytope(std::size_t arity) : arity_(arity) {}

  static Polytope cube(std::size_t arity) { return Polytope(arity); }

  std::size_t arity() const noexcept { return arity_; }
  const std::vector<AffineForm>& constraints() const noexcept { return constraints_; }

  // Adds g <= 0. Throws InputError on arity mismatch.
  void add(AffineForm g);
  Polytope with(AffineForm g) const;

  bool contains(const Point& p) const;

private:
  std::size_t arity_;
  std::vector<AffineForm> constraints_;
};

enum class Sense { Maximize, Minimize };

struct LpOptimum {
  Rational value;
  Point witness;
};

// Exact optimum of an affine objective over P. Empty optional when P is
// empty. Two-phase dictionary simplex over rationals with Bland's rule, so the
// witness is deterministic.
std::optional<LpOptimum> lp_optimize(const AffineForm& objective, const Polytope& P, Sense sense);

// A point satisfying every non-constant constraint of P and every cube bound
// strictly, found by maximizing a uniform slack. Empty when P has no interior.
std::optional<Point> interior_point(const Polytope& P);

enum class Side { Leq, Geq };

struct Cell {
  std::vector<Side> signs;  // one per input form
  Polytope polytope;
  Point interior;  // strictly inside, strictly on the listed side of every form
};

struct CellDecomposition {
  std::size_t arity = 0;
  std::vector<AffineForm> forms;
  std::vector<Cell> cells;  // lexicographic in signs, Leq before Geq
};

// Full-dimensional cells of the arrangement of `forms` inside `region`
// (the cube by default). Forms must be non-constant and pairwise distinct;
// InputError otherwise.
CellDecomposition enumerate_cells(std::span<const AffineForm> forms, std::size_t arity);
CellDecomposition enumerate_cells(std::span<const AffineForm> forms, const Polytope& region);

}  // namespace mcn
