#include "mcn/rational.hpp"

#include <cctype>
#include <limits>

#include "mcn/error.hpp"

namespace mcn {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

std::string to_string(const Point& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += to_string(p[i]);
  }
  return out;
}

namespace {

bool is_integer_text(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-' || den.front() == '+')
    throw InputError("malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class p(n, 10), q(std::string(den), 10);
  if (q == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Point parse_point(std::string_view text) {
  Point p;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    p.push_back(parse_rational(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return p;
}

bool in_unit_cube(const Point& p) {
  for (const auto& x : p)
    if (x < 0 || x > 1) return false;
  return true;
}

Integer checked_add(Integer a, Integer b) {
  Integer r;
  if (__builtin_add_overflow(a, b, &r)) throw InputError("integer overflow in affine coefficient");
  return r;
}

Integer checked_mul(Integer a, Integer b) {
  Integer r;
  if (__builtin_mul_overflow(a, b, &r)) throw InputError("integer overflow in affine coefficient");
  return r;
}

}  // namespace mcn
