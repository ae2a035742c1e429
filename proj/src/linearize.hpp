#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mcn/affine.hpp"
#include "mcn/geometry.hpp"
#include "mcn/pwl.hpp"

namespace mcn::detail {

enum class Order { Leq, Geq, Mixed };

// Points known to lie in a polytope, used to settle comparisons without an
// LP. LP witnesses found along the way are appended.
using Samples = std::vector<Point>;

// Leq when a <= b on all of P, Geq when a >= b, Mixed when a - b changes
// sign on P. Leq wins when a = b on P (and when P is empty).
Order compare_on(const AffineForm& a, const AffineForm& b, const Polytope& P);
Order compare_on(const AffineForm& a, const AffineForm& b, const Polytope& P, Samples& samples);

// min of d over P is >= 0.
bool nonnegative_on(const AffineForm& d, const Polytope& P, Samples& samples);

// Some point of P where d > 0, if any.
std::optional<Point> positive_point(const AffineForm& d, const Polytope& P, Samples& samples);

using SampledVisitor =
    std::function<bool(const Polytope& cell, std::span<const AffineForm> forms, Samples& samples)>;
void for_each_piece_sampled(std::span<const PwlExpr> exprs, const Polytope& P, const SampledVisitor& visit);

}  // namespace mcn::detail
