#include "mcn/affine.hpp"

#include <numeric>

#include "mcn/error.hpp"

namespace mcn {

AffineForm AffineForm::of_constant(std::size_t arity, Integer c) {
  return AffineForm(c, std::vector<Integer>(arity, 0));
}

AffineForm AffineForm::of_variable(std::size_t arity, std::size_t index) {
  if (index == 0 || index > arity) throw InputError("variable index out of range");
  std::vector<Integer> coeffs(arity, 0);
  coeffs[index - 1] = 1;
  return AffineForm(0, std::move(coeffs));
}

bool AffineForm::is_constant() const noexcept {
  for (Integer c : coeffs_)
    if (c != 0) return false;
  return true;
}

Rational AffineForm::eval(const Point& p) const {
  if (p.size() != coeffs_.size())
    throw InputError("point has " + std::to_string(p.size()) + " coordinates, form has arity " +
                     std::to_string(coeffs_.size()));
  Rational v = constant_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) v += Rational(static_cast<long>(coeffs_[i])) * p[i];
  return v;
}

Integer AffineForm::cube_min() const {
  Integer v = constant_;
  for (Integer c : coeffs_)
    if (c < 0) v = checked_add(v, c);
  return v;
}

Integer AffineForm::cube_max() const {
  Integer v = constant_;
  for (Integer c : coeffs_)
    if (c > 0) v = checked_add(v, c);
  return v;
}

AffineForm AffineForm::operator-() const { return scaled(-1); }

AffineForm AffineForm::scaled(Integer k) const {
  std::vector<Integer> cs(coeffs_.size());
  for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = checked_mul(coeffs_[i], k);
  return AffineForm(checked_mul(constant_, k), std::move(cs));
}

AffineForm AffineForm::plus_constant(Integer k) const {
  return AffineForm(checked_add(constant_, k), coeffs_);
}

AffineForm AffineForm::hyperplane_key() const {
  if (is_constant()) return *this;
  Integer g = constant_ < 0 ? -constant_ : constant_;
  for (Integer c : coeffs_) g = std::gcd(g, c < 0 ? -c : c);
  Integer sign = 1;
  for (Integer c : coeffs_) {
    if (c != 0) {
      sign = c < 0 ? -1 : 1;
      break;
    }
  }
  std::vector<Integer> cs(coeffs_.size());
  for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = coeffs_[i] / g * sign;
  return AffineForm(constant_ / g * sign, std::move(cs));
}

std::string AffineForm::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    Integer c = coeffs_[i];
    if (c == 0) continue;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    Integer a = c < 0 ? -c : c;
    if (a != 1) out += std::to_string(a) + "*";
    out += "x" + std::to_string(i + 1);
  }
  if (out.empty()) return std::to_string(constant_);
  if (constant_ > 0) out += " + " + std::to_string(constant_);
  if (constant_ < 0) out += " - " + std::to_string(-constant_);
  return out;
}

namespace {

AffineForm combine(const AffineForm& a, const AffineForm& b, Integer sign) {
  if (a.arity() != b.arity()) throw InputError("affine forms of different arity");
  std::vector<Integer> cs(a.arity());
  for (std::size_t i = 0; i < cs.size(); ++i)
    cs[i] = checked_add(a.coeffs()[i], checked_mul(sign, b.coeffs()[i]));
  return AffineForm(checked_add(a.constant(), checked_mul(sign, b.constant())), std::move(cs));
}

}  // namespace

AffineForm operator+(const AffineForm& a, const AffineForm& b) { return combine(a, b, 1); }
AffineForm operator-(const AffineForm& a, const AffineForm& b) { return combine(a, b, -1); }

std::size_t hash_value(const AffineForm& g) noexcept {
  std::size_t h = std::hash<Integer>{}(g.constant());
  for (Integer c : g.coeffs()) h ^= std::hash<Integer>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace mcn
