#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "mcn/rational.hpp"

namespace mcn {

// g(x) = c0 + c1 x1 + ... + cn xn with integer coefficients.
class AffineForm {
public:
  AffineForm() = default;
  AffineForm(Integer constant, std::vector<Integer> coeffs)
      : constant_(constant), coeffs_(std::move(coeffs)) {}

  static AffineForm of_constant(std::size_t arity, Integer c);
  // x_index, 1-based.
  static AffineForm of_variable(std::size_t arity, std::size_t index);

  std::size_t arity() const noexcept { return coeffs_.size(); }
  Integer constant() const noexcept { return constant_; }
  const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }
  // 0-based position.
  Integer coeff(std::size_t i) const { return coeffs_.at(i); }

  bool is_constant() const noexcept;

  // Throws InputError on arity mismatch.
  Rational eval(const Point& p) const;

  // Extremes over the cube [0,1]^n.
  Integer cube_min() const;
  Integer cube_max() const;

  AffineForm operator-() const;
  AffineForm scaled(Integer k) const;
  AffineForm plus_constant(Integer k) const;

  // Divides by the gcd of all coefficients and makes the first nonzero
  // variable coefficient positive, so parallel copies of one hyperplane
  // compare equal. Constant forms are returned unchanged.
  AffineForm hyperplane_key() const;

  // e.g. "2*x1 - x2 + 1".
  std::string to_string() const;

  friend AffineForm operator+(const AffineForm& a, const AffineForm& b);
  friend AffineForm operator-(const AffineForm& a, const AffineForm& b);
  friend bool operator==(const AffineForm&, const AffineForm&) = default;
  friend auto operator<=>(const AffineForm&, const AffineForm&) = default;

private:
  Integer constant_ = 0;
  std::vector<Integer> coeffs_;
};

std::size_t hash_value(const AffineForm& g) noexcept;

}  // namespace mcn

template <>
struct std::hash<mcn::AffineForm> {
  std::size_t operator()(const mcn::AffineForm& g) const noexcept { return mcn::hash_value(g); }
};
