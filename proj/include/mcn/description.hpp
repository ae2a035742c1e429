#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "mcn/pwl.hpp"

namespace mcn {

// A function description file:
//   {"vars": n, "expr": NODE}
//   NODE := {"affine": {"constant": INT, "coeffs": [INT x n]}}
//         | {"min": [NODE, ...]} | {"max": [NODE, ...]}
// Unknown keys, empty arrays, non-integer numbers and coefficient lists of
// the wrong length are rejected with InputError (ParseError for bad JSON).
struct Description {
  std::size_t vars = 0;
  PwlExpr expr = PwlExpr::constant(0, 0);
};

Description parse_description(std::string_view json_text);
std::string write_description(const PwlExpr& expr);

}  // namespace mcn
