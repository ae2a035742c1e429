#pragma once

#include "mcn/affine.hpp"
#include "mcn/term.hpp"

namespace mcn {

struct LinearTermOptions {
  // Check decide_eq(term_to_pwl(result), truncate_affine(g)) before
  // returning. On by default.
  bool certify = true;
};

// A term whose function is the clamp of g to [0,1] on the cube.
//
// Built by recursion on the sum of absolute coefficients:
//   t(g + x_i) = t(g) ⊕ (x_i ⊙ t(g + 1))
//   t(g - x_i) = t(g - 1) ⊕ (¬x_i ⊙ t(g))
// with t(g) = 0 when g <= 0 on the cube and t(g) = 1 when g >= 1 on the cube.
// Constants 0 and 1 are absorbed while building (0 ⊕ a = a, a ⊙ 1 = a).
// Certification failure throws InternalError.
Term linear_term(const AffineForm& g, const LinearTermOptions& options = {});

}  // namespace mcn
